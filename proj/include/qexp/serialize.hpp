#pragma once

#include <string>

#include <json.hpp>

#include "qexp/analysis.hpp"
#include "qexp/combo.hpp"
#include "qexp/enclosure.hpp"
#include "qexp/family.hpp"

namespace qexp {

// All machine output is deterministic: keys in declaration order, exact
// numbers as canonical "num" / "num/den" strings, never floats.
using Json = nlohmann::ordered_json;

inline Json to_json(const ParamCombo& c) {
    return Json{{"k", c.k()}, {"m", c.m()}, {"u", c.u()}, {"N", c.n()}};
}

inline Json to_json(const RationalInterval& iv) {
    return Json{{"lo", iv.lo.to_string()}, {"hi", iv.hi.to_string()}};
}

inline Json to_json(const Witness& w) {
    return Json{{"combo", to_json(w.combo)},
                {"exponent", w.exponent.to_string()},
                {"absA", w.abs_a.get_str()}};
}

inline Json to_json(const ClaimReport& r) {
    Json witnesses = Json::array();
    for (const Witness& w : r.witnesses) witnesses.push_back(to_json(w));
    return Json{{"claim", r.claim},
                {"grid", r.grid},
                {"verdict", to_string(r.verdict)},
                {"witnesses", witnesses}};
}

inline Json to_json(const PairEntry& e) {
    Json j{{"combo", to_json(e.combo)},
           {"exponent_at_1", e.exponent_at_1.to_string()},
           {"partner", e.partner.get_str()},
           {"degenerate", e.degenerate}};
    if (e.consecutive_equal_at)
        j["consecutive_equal_at"] = e.consecutive_equal_at->get_str();
    return j;
}

inline Json to_json(const DeltaChain& chain) {
    Json deltas = Json::array();
    Json left = Json::array();
    Json right = Json::array();
    for (const Rational& d : chain.deltas) deltas.push_back(d.to_string());
    for (const Rational& e : chain.left_exponents) left.push_back(e.to_string());
    for (const Rational& e : chain.right_exponents) right.push_back(e.to_string());
    return Json{{"deltas", deltas},
                {"left_exponents", left},
                {"right_exponents", right},
                {"mirror_equal", true},  // enforced on construction
                {"midpoint_reached", chain.midpoint_reached}};
}

inline Json to_json(const LogDistance& d) {
    return Json{{"direct", to_json(d.direct)},
                {"series", to_json(d.series)},
                {"terms", d.terms}};
}

inline Json to_json(const DistanceSolution& s) {
    return Json{{"Z", s.z},
                {"E", s.exponent_index},
                {"u_real", s.u_real},
                {"m_real", s.m_real},
                {"residual", s.residual},
                {"u_negative", s.u_negative},
                {"u_integral", s.u_integral},
                {"m_integral", s.m_integral}};
}

/// Canonical byte form used by the CLI and the replay tests.
inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qexp
