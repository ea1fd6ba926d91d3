#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qexp/combo.hpp"
#include "qexp/enclosure.hpp"
#include "qexp/exact.hpp"
#include "qexp/rational.hpp"

namespace qexp {

/// Grid bounds for enumeration and searches (all inclusive, >= 1).
struct SearchBounds {
    std::int64_t k_max = 4;
    std::int64_t m_max = 20;
    std::int64_t u_max = 10;
};

/**
 * All combos with N = 2, k <= k_max, u in [1, u_max] and integer m >= 1
 * such that |A| = m u^{2k-2} - 1 equals n. Never empty: {k=1, m=n+1, u}
 * qualifies for every u. Results sorted lexicographically by (k, m, u).
 */
inline std::vector<ParamCombo> invert_target(std::int64_t n, std::int64_t k_max,
                                             std::int64_t u_max) {
    if (n < 1) throw std::invalid_argument("invert_target: n must be >= 1");
    if (k_max < 1 || u_max < 1)
        throw std::invalid_argument("invert_target: bounds must be >= 1");
    const Int target = Int(n) + 1;  // m u^{2k-2} = n + 1
    std::vector<ParamCombo> out;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        for (std::int64_t u = 1; u <= u_max; ++u) {
            Int w = int_pow(Int(u), static_cast<unsigned long>(2 * k - 2));
            if (k > 1 && w > target) break;  // w grows with u
            if (!mpz_divisible_p(target.get_mpz_t(), w.get_mpz_t())) continue;
            Int m = target / w;
            if (!m.fits_slong_p())
                throw std::invalid_argument("invert_target: n out of supported range");
            out.emplace_back(k, m.get_si(), u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * The unique n in N with f(n) = f(1): the second root of Q(x) = Q(1),
 * which is Z - 1 = |A|. Requires N*k even and a nondegenerate combo.
 */
inline Int find_partner(const ParamCombo& combo) {
    if (!combo.nk_even())
        throw std::domain_error("find_partner: N*k must be even");
    AbsA a = compute_abs_A(combo);
    if (a.degenerate())
        throw std::domain_error("find_partner: degenerate combo (|A| = 0)");
    if (exponent_at(combo, Rational(a.value)) != exponent_at(combo, Rational(1)))
        throw std::logic_error("find_partner: partnership identity failed");
    return a.value;
}

/**
 * Combos ordered by strictly increasing |A|, with the matching |A| and
 * Q(1) values. Built only through build_increasing_sequence.
 */
struct FamilySequence {
    std::vector<ParamCombo> combos;
    std::vector<Int> abs_a_values;
    std::vector<Rational> exponents_at_1;

    std::size_t size() const { return combos.size(); }
};

/// Sorts combos by |A| ascending; duplicate |A| makes the order ambiguous
/// and is rejected.
inline FamilySequence build_increasing_sequence(std::vector<ParamCombo> combos) {
    for (const ParamCombo& c : combos)
        if (!c.nk_even())
            throw std::invalid_argument("build_increasing_sequence: N*k must be even");
    std::vector<std::size_t> idx(combos.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<Int> abs_a;
    abs_a.reserve(combos.size());
    for (const ParamCombo& c : combos) abs_a.push_back(compute_abs_A(c).value);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return abs_a[a] < abs_a[b]; });
    FamilySequence seq;
    for (std::size_t i : idx) {
        if (!seq.abs_a_values.empty() && seq.abs_a_values.back() == abs_a[i])
            throw std::domain_error("build_increasing_sequence: duplicate |A|");
        seq.combos.push_back(combos[i]);
        seq.abs_a_values.push_back(abs_a[i]);
        seq.exponents_at_1.push_back(exponent_at(combos[i], Rational(1)));
    }
    return seq;
}

/// Open ball B_sigma(0) on the positive reals: {b > 0 : b < sigma}.
struct Ball {
    Rational sigma;

    explicit Ball(Rational s) : sigma(std::move(s)) {
        if (sigma.sgn() <= 0) throw std::invalid_argument("Ball: sigma must be positive");
    }
};

/**
 * Smallest M with e^{Q_p(1)} < sigma for every p > M (1-based), or
 * nothing when even the final term is outside the ball. Membership is
 * decided exactly: Q_p(1) < ln(sigma) via certified enclosures.
 */
inline std::optional<std::size_t> tail_in_ball(const FamilySequence& seq, const Ball& ball) {
    if (seq.size() == 0)
        throw std::invalid_argument("tail_in_ball: sequence must be nonempty");
    auto inside = [&](std::size_t i) {
        return compare_rational_to_log(seq.exponents_at_1[i], ball.sigma) ==
               std::strong_ordering::less;
    };
    if (!inside(seq.size() - 1)) return std::nullopt;
    std::size_t m = 0;
    for (std::size_t i = seq.size() - 1; i-- > 0;) {
        if (!inside(i)) {
            m = i + 1;  // 1-based index of the last term outside
            break;
        }
    }
    return m;
}

enum class Verdict { holds_on_grid, counterexample_found };

inline const char* to_string(Verdict v) {
    return v == Verdict::holds_on_grid ? "holds-on-grid" : "counterexample-found";
}

struct Witness {
    ParamCombo combo;
    Rational exponent;
    Int abs_a;
};

/// Machine-checkable verdict for one claim over one grid. A counterexample
/// witness re-verifies on replay; everything here is deterministic.
struct ClaimReport {
    std::string claim;
    std::string grid;
    Verdict verdict = Verdict::holds_on_grid;
    std::vector<Witness> witnesses;
};

/**
 * Checks that Q_p(1) strictly decreases along an increasing-|A| sequence.
 * The claim is not assumed: it is provable for constant u but fails when
 * u varies, and the report carries the offending adjacent pair when it
 * does.
 */
inline ClaimReport check_monotone_decrease(const FamilySequence& seq) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!(seq.abs_a_values[i] < seq.abs_a_values[i + 1]))
            throw std::invalid_argument("check_monotone_decrease: sequence must be increasing-|A|");
    ClaimReport report;
    report.claim = "monotone-decrease-at-1";
    report.grid = "increasing-|A| sequence of " + std::to_string(seq.size()) + " combos";
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!(seq.exponents_at_1[i + 1] < seq.exponents_at_1[i])) {
            report.verdict = Verdict::counterexample_found;
            report.witnesses.push_back(
                {seq.combos[i], seq.exponents_at_1[i], seq.abs_a_values[i]});
            report.witnesses.push_back(
                {seq.combos[i + 1], seq.exponents_at_1[i + 1], seq.abs_a_values[i + 1]});
            return report;
        }
    }
    return report;
}

/// One enumerated combo with its f(1)-partner data.
struct PairEntry {
    ParamCombo combo;
    Rational exponent_at_1;
    Int partner;      // |A|; 0 when degenerate
    bool degenerate;  // Z = 1, no partner in N
    // n with f(n) = f(n+1), present iff Z is odd and >= 3 (then n = (Z-1)/2).
    std::optional<Int> consecutive_equal_at;
};

/**
 * Deterministic lexicographic enumeration over (k, m, u), N = 2, of every
 * combo in bounds together with its pair {Q(1), partner}. A constructive
 * desk-scale witness that the set of pairs is countable.
 */
inline std::vector<PairEntry> enumerate_pairs(const SearchBounds& bounds) {
    if (bounds.k_max < 1 || bounds.m_max < 1 || bounds.u_max < 1)
        throw std::invalid_argument("enumerate_pairs: bounds must be >= 1");
    std::vector<PairEntry> out;
    for (std::int64_t k = 1; k <= bounds.k_max; ++k)
        for (std::int64_t m = 1; m <= bounds.m_max; ++m)
            for (std::int64_t u = 1; u <= bounds.u_max; ++u) {
                ParamCombo c(k, m, u);
                AbsA a = compute_abs_A(c);
                PairEntry e{c, exponent_at(c, Rational(1)), a.value, a.degenerate(),
                            std::nullopt};
                if (c.z() >= 3 && c.z() % 2 == 1)
                    e.consecutive_equal_at = Int((c.z() - 1) / 2);
                out.push_back(std::move(e));
            }
    return out;
}

/// check_symmetry over the full grid (N in {2, 4}), skipping degenerate
/// combos. Expected verdict: holds-on-grid, always.
inline ClaimReport claim_symmetry_grid(const SearchBounds& bounds) {
    ClaimReport report;
    report.claim = "symmetry-f1-equals-fA";
    report.grid = "k<=" + std::to_string(bounds.k_max) + ", m<=" + std::to_string(bounds.m_max) +
                  ", u<=" + std::to_string(bounds.u_max) +
                  ", N in {2,4}, nondegenerate combos";
    for (std::int64_t n : {std::int64_t{2}, std::int64_t{4}})
        for (std::int64_t k = 1; k <= bounds.k_max; ++k)
            for (std::int64_t m = 1; m <= bounds.m_max; ++m)
                for (std::int64_t u = 1; u <= bounds.u_max; ++u) {
                    ParamCombo c(k, m, u, n);
                    AbsA a = compute_abs_A(c);
                    if (a.degenerate()) continue;
                    if (!check_symmetry(c)) {
                        report.verdict = Verdict::counterexample_found;
                        report.witnesses.push_back(
                            {c, exponent_at(c, Rational(1)), a.value});
                        return report;
                    }
                }
    return report;
}

/**
 * Searches ordered pairs (c1, c2) with |A(c1)| < |A(c2)| for a violation
 * of f_2(1) < f_1(1), scanning lexicographically so the first witness is
 * reproducible byte for byte. With u free to vary a violation exists on
 * any nontrivial grid.
 */
inline ClaimReport claim_monotone_counterexample_search(const SearchBounds& bounds) {
    ClaimReport report;
    report.claim = "monotone-decrease-varying-u";
    report.grid = "ordered combo pairs, k<=" + std::to_string(bounds.k_max) +
                  ", m<=" + std::to_string(bounds.m_max) + ", u<=" + std::to_string(bounds.u_max) +
                  ", N=2, |A| increasing, lexicographic scan";
    std::vector<PairEntry> entries = enumerate_pairs(bounds);
    for (const PairEntry& e1 : entries) {
        if (e1.degenerate) continue;
        for (const PairEntry& e2 : entries) {
            if (e2.degenerate) continue;
            if (!(e1.partner < e2.partner)) continue;  // partner == |A|
            if (!(e2.exponent_at_1 < e1.exponent_at_1)) {
                report.verdict = Verdict::counterexample_found;
                report.witnesses.push_back({e1.combo, e1.exponent_at_1, e1.partner});
                report.witnesses.push_back({e2.combo, e2.exponent_at_1, e2.partner});
                return report;
            }
        }
    }
    return report;
}

}  // namespace qexp
