// qexp: exact queries, scans, and data emitters for the quadratic
// exponential family f(x) = exp(u x^2 + v x).
//
// Exit codes: 0 success, 1 domain/precondition errors, 2 config errors.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qexp/emit.hpp"
#include "qexp/qexp.hpp"
#include "qexp/serialize.hpp"

namespace {

using namespace qexp;

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ComboFlags {
    std::int64_t k = 0;
    std::int64_t m = 0;
    std::int64_t u = 0;
    std::int64_t n = 2;
};

void add_combo_flags(CLI::App* cmd, ComboFlags& f) {
    cmd->add_option("--k", f.k, "Parameter k (positive)")->required();
    cmd->add_option("--m", f.m, "Parameter m (positive)")->required();
    cmd->add_option("--u", f.u, "Parameter u (nonzero integer; negative selects g)")
        ->required();
    cmd->add_option("--N", f.n, "Parameter N")->capture_default_str();
}

ParamCombo make_combo(const ComboFlags& f) { return {f.k, f.m, f.u, f.n}; }

ParamCombo parse_combo_spec(const std::string& spec) {
    std::vector<std::int64_t> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        std::int64_t value = 0;
        try {
            value = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad combo spec '" + spec + "'");
        }
        if (used != item.size())
            throw std::invalid_argument("bad combo spec '" + spec + "'");
        parts.push_back(value);
    }
    if (parts.size() == 3) return {parts[0], parts[1], parts[2]};
    if (parts.size() == 4) return {parts[0], parts[1], parts[2], parts[3]};
    throw std::invalid_argument("combo spec must be k,m,u or k,m,u,N: '" + spec + "'");
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw OutputError("failed writing output file '" + path + "'");
}

std::string figure_json(const Json& rows) { return rows.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for quadratic exponential functions"};
    app.require_subcommand(1);
    app.fallthrough();  // -o and --config may follow the subcommand
    app.set_config("--config", "", "key=value config file; command-line flags win");
    app.set_version_flag("--version", "qexp 0.1.0");

    std::string output_path;
    app.add_option("-o,--output", output_path, "Write output to this file instead of stdout")
        ->configurable(true);

    // --- eval ---------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "Exponent (and optional value) of f at x");
    ComboFlags eval_combo;
    add_combo_flags(eval, eval_combo);
    std::string eval_x;
    unsigned eval_precision = 30;
    bool eval_value = true;
    eval->add_option("--x", eval_x, "Evaluation point (integer, n/d, or decimal)")->required();
    eval->add_option("--precision", eval_precision, "Significant digits for the rendered value")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    eval->add_flag("--value,!--no-value", eval_value, "Render e^{exponent} as a decimal");
    eval->callback([&] {
        ParamCombo c = make_combo(eval_combo);
        Rational x = Rational::from_string(eval_x);
        Rational e = exponent_at(c, x);
        std::string line = "exponent=" + e.to_string();
        if (eval_value) {
            ExpRendering r = render_exp(e, eval_precision);
            switch (r.status) {
                case ExpRendering::Status::ok:
                    line += " value=" + r.text;
                    break;
                case ExpRendering::Status::underflow:
                    line += " (value underflows)";
                    break;
                case ExpRendering::Status::overflow:
                    line += " (value overflows)";
                    break;
            }
        }
        write_output(output_path, line + "\n");
    });

    // --- invert -------------------------------------------------------
    auto* invert = app.add_subcommand("invert", "All combos with |A| = n within bounds");
    std::int64_t invert_n = 0;
    std::int64_t invert_kmax = 4, invert_umax = 10;
    invert->add_option("--n", invert_n, "Target |A|")->required();
    invert->add_option("--k-max", invert_kmax, "Largest k searched")->capture_default_str();
    invert->add_option("--u-max", invert_umax, "Largest u searched")->capture_default_str();
    invert->callback([&] {
        std::vector<ParamCombo> combos = invert_target(invert_n, invert_kmax, invert_umax);
        Json list = Json::array();
        for (const ParamCombo& c : combos) list.push_back(to_json(c));
        Json j{{"n", invert_n},
               {"k_max", invert_kmax},
               {"u_max", invert_umax},
               {"combos", list}};
        write_output(output_path, dump_report(j));
    });

    // --- partner ------------------------------------------------------
    auto* partner = app.add_subcommand("partner", "The unique n with f(n) = f(1)");
    ComboFlags partner_combo;
    add_combo_flags(partner, partner_combo);
    partner->callback([&] {
        ParamCombo c = make_combo(partner_combo);
        Int p = find_partner(c);
        Json j{{"combo", to_json(c)},
               {"partner", p.get_str()},
               {"exponent_at_1", exponent_at(c, Rational(1)).to_string()}};
        write_output(output_path, dump_report(j));
    });

    // --- midpoint -----------------------------------------------------
    auto* mid = app.add_subcommand("midpoint", "Vertex theta of the exponent on [1, |A|]");
    ComboFlags mid_combo;
    add_combo_flags(mid, mid_combo);
    mid->callback([&] {
        ParamCombo c = make_combo(mid_combo);
        Midpoint m = midpoint(c);
        Json j{{"combo", to_json(c)},
               {"theta", m.theta.to_string()},
               {"interval", Json::array({"1", m.abs_a.get_str()})},
               {"value_exponent", midpoint_value_exponent(c).to_string()}};
        write_output(output_path, dump_report(j));
    });

    // --- delta-chain --------------------------------------------------
    auto* chain_cmd = app.add_subcommand(
        "delta-chain", "Mirror-symmetry chain f(1+delta) = f(|A|-delta)");
    ComboFlags chain_combo;
    add_combo_flags(chain_cmd, chain_combo);
    std::vector<std::string> chain_deltas;
    chain_cmd->add_option("--delta", chain_deltas, "Offset delta (repeatable, increasing)");
    chain_cmd->callback([&] {
        ParamCombo c = make_combo(chain_combo);
        std::vector<Rational> deltas;
        deltas.reserve(chain_deltas.size());
        for (const std::string& d : chain_deltas) deltas.push_back(Rational::from_string(d));
        DeltaChain chain = c.u() > 0 ? delta_chain(c, deltas) : mirrored_chain_g(c, deltas);
        Json j{{"combo", to_json(c)},
               {"direction", c.u() > 0 ? "decreasing" : "increasing"}};
        j.update(to_json(chain));
        write_output(output_path, dump_report(j));
    });

    // --- distance -----------------------------------------------------
    auto* dist = app.add_subcommand(
        "distance", "Distance D = |A| - 1 and, for Z > 2, enclosures of ln(Z-2)");
    ComboFlags dist_combo;
    add_combo_flags(dist, dist_combo);
    unsigned dist_terms = 50;
    dist->add_option("--terms", dist_terms, "Series terms for the ln(Z-2) expansion")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    dist->callback([&] {
        ParamCombo c = make_combo(dist_combo);
        Int d = distance_D(c);
        Json j{{"combo", to_json(c)},
               {"Z", c.z().get_str()},
               {"absA", compute_abs_A(c).value.get_str()},
               {"D", d.get_str()}};
        if (c.z() > 2)
            j["log_distance"] = to_json(log_distance(Rational(c.z()), dist_terms));
        else
            j["log_distance"] = nullptr;
        write_output(output_path, dump_report(j));
    });

    // --- solve-distance -------------------------------------------------
    auto* solve = app.add_subcommand(
        "solve-distance", "Real u, m making the distance Z-2 equal f(|A|)");
    double solve_z = 0;
    unsigned solve_e = 1;
    double solver_tol = 1e-12;
    solve->add_option("--Z", solve_z, "Z = m u^{Nk-2} (real, > 2, != 3)")->required();
    solve->add_option("--E", solve_e, "Exponent index E = Nk - 2")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    solve->add_option("--solver-tol", solver_tol, "Route-agreement tolerance")
        ->capture_default_str();
    solve->callback([&] {
        DistanceSolution s = solve_distance_equals_value(solve_z, solve_e, solver_tol);
        write_output(output_path, dump_report(to_json(s)));
    });

    // --- claims ---------------------------------------------------------
    auto* claims = app.add_subcommand("claims", "Run the claim harness over a grid");
    std::int64_t claims_kmax = 4, claims_mmax = 20, claims_umax = 10;
    claims->add_option("--k-max", claims_kmax, "Largest k")->capture_default_str();
    claims->add_option("--m-max", claims_mmax, "Largest m")->capture_default_str();
    claims->add_option("--u-max", claims_umax, "Largest u")->capture_default_str();
    claims->callback([&] {
        SearchBounds bounds{claims_kmax, claims_mmax, claims_umax};
        std::vector<ParamCombo> constant_u;
        for (std::int64_t m = 2; m <= std::max<std::int64_t>(claims_mmax, 2); ++m)
            constant_u.emplace_back(1, m, 2);
        FamilySequence constant_seq = build_increasing_sequence(constant_u);
        FamilySequence replay_seq =
            build_increasing_sequence({ParamCombo(1, 3, 10), ParamCombo(1, 4, 1)});
        Json j{{"symmetry", to_json(claim_symmetry_grid(bounds))},
               {"monotone_decrease_constant_u", to_json(check_monotone_decrease(constant_seq))},
               {"monotone_decrease_varying_u",
                to_json(claim_monotone_counterexample_search(bounds))},
               {"monotone_decrease_replay", to_json(check_monotone_decrease(replay_seq))}};
        write_output(output_path, dump_report(j));
    });

    // --- emit-figure1 ---------------------------------------------------
    auto* fig1 = app.add_subcommand(
        "emit-figure1", "Rows (p,k,m,u,N,x,exponent) at x = 1 and x = partner");
    std::vector<std::string> fig1_specs;
    std::string fig1_format = "csv";
    fig1->add_option("--combo", fig1_specs, "Combo k,m,u[,N] (repeatable)");
    fig1->add_option("--format", fig1_format, "csv or json")->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    fig1->callback([&] {
        std::vector<ParamCombo> combos;
        combos.reserve(fig1_specs.size());
        for (const std::string& s : fig1_specs) combos.push_back(parse_combo_spec(s));
        if (fig1_format == "csv") {
            std::ostringstream os;
            emit_figure1(combos, os);
            write_output(output_path, os.str());
        } else {
            Json rows = Json::array();
            for (std::size_t i = 0; i < combos.size(); ++i) {
                const ParamCombo& c = combos[i];
                Int p = find_partner(c);
                for (const Rational& x : {Rational(1), Rational(p)})
                    rows.push_back(Json{{"p", i + 1},
                                        {"combo", to_json(c)},
                                        {"x", x.to_string()},
                                        {"exponent", exponent_at(c, x).to_string()}});
            }
            write_output(output_path, figure_json(rows));
        }
    });

    // --- emit-figure2 ---------------------------------------------------
    auto* fig2 = app.add_subcommand(
        "emit-figure2", "Rows (p,absA,exponent_at_1) sorted by |A| ascending");
    std::vector<std::string> fig2_specs;
    std::string fig2_format = "csv";
    fig2->add_option("--combo", fig2_specs, "Combo k,m,u[,N] (repeatable)");
    fig2->add_option("--format", fig2_format, "csv or json")->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    fig2->callback([&] {
        std::vector<ParamCombo> combos;
        combos.reserve(fig2_specs.size());
        for (const std::string& s : fig2_specs) combos.push_back(parse_combo_spec(s));
        FamilySequence seq = build_increasing_sequence(combos);
        if (fig2_format == "csv") {
            std::ostringstream os;
            emit_figure2(seq, os);
            write_output(output_path, os.str());
        } else {
            Json rows = Json::array();
            for (std::size_t i = 0; i < seq.size(); ++i)
                rows.push_back(Json{{"p", i + 1},
                                    {"absA", seq.abs_a_values[i].get_str()},
                                    {"exponent_at_1", seq.exponents_at_1[i].to_string()}});
            write_output(output_path, figure_json(rows));
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
