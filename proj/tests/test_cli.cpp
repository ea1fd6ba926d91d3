#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qexp/exact.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QEXP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

using Json = nlohmann::json;

}  // namespace

TEST_CASE("eval prints exact exponents", "[cli]") {
    RunResult r = run_cli("eval --k 1 --m 4 --u 2 --x 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.starts_with("exponent=-6 value="));

    RunResult zero = run_cli("eval --k 1 --m 4 --u 2 --x 0");
    CHECK(zero.out == "exponent=0 value=1\n");

    RunResult deep = run_cli("eval --k 3 --m 10 --u 8 --x 1");
    CHECK(deep.exit_code == 0);
    CHECK(deep.out == "exponent=-327672 (value underflows)\n");

    RunResult bare = run_cli("eval --k 1 --m 4 --u 2 --x 3 --no-value");
    CHECK(bare.out == "exponent=-6\n");

    RunResult frac = run_cli("eval --k 1 --m 4 --u 2 --x 3/2 --no-value");
    CHECK(frac.out == "exponent=-15/2\n");
}

TEST_CASE("invert finds the worked combo", "[cli]") {
    RunResult r = run_cli("invert --n 40959");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    bool found = false;
    for (const auto& combo : j["combos"])
        if (combo["k"] == 3 && combo["m"] == 10 && combo["u"] == 8) found = true;
    CHECK(found);
}

TEST_CASE("partner and midpoint reports", "[cli]") {
    Json p = Json::parse(run_cli("partner --k 1 --m 3 --u 2").out);
    CHECK(p["partner"] == "2");
    CHECK(p["exponent_at_1"] == "-4");

    Json m = Json::parse(run_cli("midpoint --k 3 --m 10 --u 8").out);
    CHECK(m["theta"] == "20480");
    CHECK(m["interval"][1] == "40959");
    CHECK(m["value_exponent"] == "-3355443200");
}

TEST_CASE("delta-chain report", "[cli]") {
    Json j = Json::parse(run_cli("delta-chain --k 1 --m 4 --u 2 --delta 1/2 --delta 1").out);
    CHECK(j["direction"] == "decreasing");
    CHECK(j["left_exponents"] == Json::array({"-15/2", "-8"}));
    CHECK(j["right_exponents"] == Json::array({"-15/2", "-8"}));
    CHECK(j["midpoint_reached"] == true);

    Json g = Json::parse(run_cli("delta-chain --k 1 --m 4 --u=-2 --delta 1/2").out);
    CHECK(g["direction"] == "increasing");
    CHECK(g["left_exponents"] == Json::array({"15/2"}));
}

TEST_CASE("distance report", "[cli]") {
    Json j = Json::parse(run_cli("distance --k 1 --m 4 --u 2").out);
    CHECK(j["Z"] == "4");
    CHECK(j["absA"] == "3");
    CHECK(j["D"] == "2");
    REQUIRE(!j["log_distance"].is_null());
    CHECK(j["log_distance"]["terms"] == 50);

    // Z = 2: distance defined (0) but no logarithmic distance.
    Json flat = Json::parse(run_cli("distance --k 1 --m 2 --u 2").out);
    CHECK(flat["D"] == "0");
    CHECK(flat["log_distance"].is_null());
}

TEST_CASE("solve-distance report", "[cli]") {
    Json j = Json::parse(run_cli("solve-distance --Z 2.5 --E 2").out);
    CHECK(std::abs(j["u_real"].get<double>() - 0.46209812037329687) < 1e-12);
    CHECK(std::abs(j["m_real"].get<double>() - 11.707700518156544) < 1e-9);
    CHECK(j["residual"].get<double>() < 1e-12);
    CHECK(j["u_negative"] == false);
}

TEST_CASE("claims harness output", "[cli]") {
    const std::string args = "claims --k-max 1 --m-max 5 --u-max 10";
    RunResult first = run_cli(args);
    REQUIRE(first.exit_code == 0);
    Json j = Json::parse(first.out);
    CHECK(j["symmetry"]["verdict"] == "holds-on-grid");
    CHECK(j["monotone_decrease_constant_u"]["verdict"] == "holds-on-grid");
    CHECK(j["monotone_decrease_varying_u"]["verdict"] == "counterexample-found");

    const Json& replay = j["monotone_decrease_replay"];
    REQUIRE(replay["verdict"] == "counterexample-found");
    REQUIRE(replay["witnesses"].size() == 2);
    CHECK(replay["witnesses"][0]["combo"] == Json({{"k", 1}, {"m", 3}, {"u", 10}, {"N", 2}}));
    CHECK(replay["witnesses"][0]["exponent"] == "-20");
    CHECK(replay["witnesses"][0]["absA"] == "2");
    CHECK(replay["witnesses"][1]["combo"] == Json({{"k", 1}, {"m", 4}, {"u", 1}, {"N", 2}}));
    CHECK(replay["witnesses"][1]["exponent"] == "-3");
    CHECK(replay["witnesses"][1]["absA"] == "3");

    // Byte-identical replay.
    CHECK(run_cli(args).out == first.out);
}

TEST_CASE("figure emitters produce exact CSV", "[cli]") {
    RunResult fig1 = run_cli("emit-figure1 --combo 1,3,2");
    CHECK(fig1.exit_code == 0);
    CHECK(fig1.out == "p,k,m,u,N,x,exponent\n1,1,3,2,2,1,-4\n1,1,3,2,2,2,-4\n");

    RunResult fig2 = run_cli("emit-figure2 --combo 1,2,2 --combo 1,3,2 --combo 1,4,2");
    CHECK(fig2.out == "p,absA,exponent_at_1\n1,1,-2\n2,2,-4\n3,3,-6\n");

    // Unsorted input comes out sorted by |A|.
    RunResult sorted = run_cli("emit-figure2 --combo 1,4,3 --combo 1,3,1");
    CHECK(sorted.out == "p,absA,exponent_at_1\n1,2,-2\n2,3,-9\n");

    // No combos: header-only CSV.
    CHECK(run_cli("emit-figure1").out == "p,k,m,u,N,x,exponent\n");
    CHECK(run_cli("emit-figure2").out == "p,absA,exponent_at_1\n");
}

TEST_CASE("figure1 CSV round-trips through the symmetry check", "[cli]") {
    RunResult r = run_cli("emit-figure1 --combo 1,2,2 --combo 1,3,2 --combo 1,4,2 --combo 2,2,2");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        std::vector<std::string> cols;
        std::istringstream cs(line);
        std::string col;
        while (std::getline(cs, col, ',')) cols.push_back(col);
        REQUIRE(cols.size() == 7);
        qexp::ParamCombo c(std::stoll(cols[1]), std::stoll(cols[2]), std::stoll(cols[3]),
                           std::stoll(cols[4]));
        qexp::Rational x = qexp::Rational::from_string(cols[5]);
        qexp::Rational e = qexp::Rational::from_string(cols[6]);
        CHECK(qexp::exponent_at(c, x) == e);  // re-verify each row
        // The two rows of a pair carry one exponent iff f(1) = f(partner).
        CHECK(qexp::check_symmetry(c) ==
              (qexp::exponent_at(c, qexp::Rational(1)) == e));
    }
}

TEST_CASE("output file option", "[cli]") {
    const std::string path = "cli_test_output.csv";
    std::remove(path.c_str());
    RunResult r = run_cli("emit-figure2 --combo 1,3,2 -o " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == "p,absA,exponent_at_1\n1,2,-4\n");
    std::remove(path.c_str());
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(run_cli("midpoint --k 1 --m 2 --u 2").exit_code == 1);   // degenerate interval
    CHECK(run_cli("partner --k 1 --m 1 --u 5").exit_code == 1);    // |A| = 0
    CHECK(run_cli("eval --k 0 --m 1 --u 1 --x 1").exit_code == 1); // bad k
    CHECK(run_cli("solve-distance --Z 3 --E 1").exit_code == 1);   // ln(Z-2) = 0
    CHECK(run_cli("eval --k 1 --m 1 --u 1 --x abc").exit_code == 1);
    CHECK(run_cli("emit-figure1 --combo 1,1,5").exit_code == 1);   // degenerate partner
    CHECK(run_cli("emit-figure2 --combo 1,2,2 --combo 1,2,2").exit_code == 1);  // duplicate |A|
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("eval --k 1 --m 1").exit_code == 2);             // missing required
    CHECK(run_cli("emit-figure1 --combo 1,3,2 --format xml").exit_code == 2);
    CHECK(run_cli("--config does_not_exist.cfg eval --k 1 --m 2 --u 2 --x 1").exit_code == 2);
    CHECK(run_cli("eval --k 1 --m 2 --u 2 --x 1").exit_code == 0);
}

TEST_CASE("every command is byte-deterministic", "[cli]") {
    const std::vector<std::string> commands = {
        "eval --k 1 --m 4 --u 2 --x 1",
        "invert --n 63 --k-max 4 --u-max 8",
        "partner --k 2 --m 3 --u 2",
        "midpoint --k 1 --m 5 --u 3",
        "delta-chain --k 1 --m 6 --u 2 --delta 1/3 --delta 2",
        "distance --k 1 --m 5 --u 2 --terms 12",
        "solve-distance --Z 2.7 --E 3",
        "claims --k-max 2 --m-max 5 --u-max 4",
        "emit-figure1 --combo 1,5,2 --combo 2,3,2",
        "emit-figure2 --combo 1,5,2 --combo 2,3,2",
    };
    for (const std::string& cmd : commands) {
        RunResult a = run_cli(cmd);
        RunResult b = run_cli(cmd);
        REQUIRE(a.exit_code == 0);
        CHECK(!a.out.empty());
        CHECK(a.out == b.out);
    }
}

TEST_CASE("config file supplies defaults, flags win", "[cli]") {
    const std::string path = "cli_test_config.cfg";
    {
        std::ofstream cfg(path);
        cfg << "[eval]\nk=1\nm=4\nu=2\nx=1\n";
    }
    RunResult from_config = run_cli("--config " + path + " eval --no-value");
    CHECK(from_config.exit_code == 0);
    CHECK(from_config.out == "exponent=-6\n");
    // Command line overrides the config value of x.
    RunResult overridden = run_cli("--config " + path + " eval --x 0 --no-value");
    CHECK(overridden.out == "exponent=0\n");
    std::remove(path.c_str());
}
