#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qexp/combo.hpp"
#include "qexp/enclosure.hpp"
#include "qexp/exact.hpp"
#include "qexp/rational.hpp"

namespace qexp {

/**
 * The vertex theta = -v/2u of the exponent, which coincides with the
 * midpoint (1 + |A|)/2 of the interval [1, |A|]: with Z >= 1 one has
 * |A| = Z - 1 and -v/2u = Z/2 = (1 + (Z-1))/2.
 */
struct Midpoint {
    Rational theta;
    Int abs_a;  // interval is [1, abs_a]
};

inline Midpoint midpoint(const ParamCombo& combo) {
    if (!combo.nk_even())
        throw std::domain_error("midpoint: N*k must be even");
    AbsA a = compute_abs_A(combo);
    if (a.value <= 1)
        throw std::domain_error("midpoint: interval [1, |A|] is degenerate");
    Rational theta(-combo.v(), Int(2) * Int(combo.u()));
    if (theta != Rational(Int(1) + a.value, Int(2)))
        throw std::logic_error("midpoint: vertex does not match interval midpoint");
    if (derivative_sign_at(combo, theta) != Sign::zero)
        throw std::logic_error("midpoint: derivative not zero at vertex");
    return {std::move(theta), std::move(a.value)};
}

/**
 * Q(theta) in closed form: -m^2 u^{2Nk-3} / 4. Cross-checked against the
 * direct evaluation Q(theta); the closed form's coefficient is u (the
 * algebra does not close with any other value), which the exact equality
 * makes auditable.
 */
inline Rational midpoint_value_exponent(const ParamCombo& combo) {
    Midpoint mid = midpoint(combo);
    const auto p = static_cast<unsigned long>(2 * combo.nk() - 3);
    Rational closed(Int(-1) * Int(combo.m()) * Int(combo.m()) * int_pow(Int(combo.u()), p),
                    Int(4));
    if (closed != exponent_at(combo, mid.theta))
        throw std::logic_error("midpoint_value_exponent: closed form disagrees with Q(theta)");
    return closed;
}

/**
 * Offsets delta_1 < ... < delta_n probing the mirror symmetry
 * Q(1 + delta) = Q(|A| - delta). Left and right exponent lists are equal
 * entry by entry; for u > 0 the left values strictly decrease, for u < 0
 * they strictly increase. midpoint_reached records whether delta_n =
 * (m/2) u^{Nk-2} - 1, i.e. whether 1 + delta_n lands on theta.
 */
struct DeltaChain {
    std::vector<Rational> deltas;
    std::vector<Rational> left_exponents;   // Q(1 + delta_i)
    std::vector<Rational> right_exponents;  // Q(|A| - delta_i)
    bool midpoint_reached = false;
};

namespace detail {

inline DeltaChain build_chain(const ParamCombo& combo, const std::vector<Rational>& deltas,
                              bool left_increasing) {
    if (!combo.nk_even())
        throw std::domain_error("delta chain: N*k must be even");
    AbsA a = compute_abs_A(combo);
    if (a.degenerate())
        throw std::domain_error("delta chain: degenerate combo (|A| = 0)");
    const Rational abs_a(a.value);
    DeltaChain chain;
    chain.deltas = deltas;
    const Rational one(1);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const Rational& d = deltas[i];
        if (d.sgn() <= 0)
            throw std::invalid_argument("delta chain: offsets must be positive");
        if (i > 0 && !(deltas[i - 1] < d))
            throw std::invalid_argument("delta chain: offsets must be strictly increasing");
        if (!(one + d <= abs_a - d))
            throw std::invalid_argument("delta chain: offset leaves [1, |A|]");
        Rational left = exponent_at(combo, one + d);
        Rational right = exponent_at(combo, abs_a - d);
        if (left != right)
            throw std::logic_error("delta chain: mirror equality failed");
        if (i > 0) {
            const bool ok = left_increasing ? chain.left_exponents.back() < left
                                            : left < chain.left_exponents.back();
            if (!ok) throw std::logic_error("delta chain: monotonicity failed");
        }
        chain.left_exponents.push_back(std::move(left));
        chain.right_exponents.push_back(std::move(right));
    }
    if (!deltas.empty())
        chain.midpoint_reached = deltas.back() == Rational(combo.z(), Int(2)) - one;
    return chain;
}

}  // namespace detail

/// Chain for the U-shaped family (u > 0): left values strictly decrease
/// toward the midpoint.
inline DeltaChain delta_chain(const ParamCombo& combo, const std::vector<Rational>& deltas) {
    if (combo.u() <= 0)
        throw std::domain_error("delta_chain: u must be positive (see mirrored_chain_g)");
    return detail::build_chain(combo, deltas, /*left_increasing=*/false);
}

/// Chain for the mirrored family g (u < 0): same mirror equality, all
/// inequalities reversed.
inline DeltaChain mirrored_chain_g(const ParamCombo& combo, const std::vector<Rational>& deltas) {
    if (combo.u() >= 0)
        throw std::domain_error("mirrored_chain_g: u must be negative");
    return detail::build_chain(combo, deltas, /*left_increasing=*/true);
}

/// The distance D from |A| to 1, i.e. |A| - 1 = Z - 2.
inline Int distance_D(const ParamCombo& combo) {
    AbsA a = compute_abs_A(combo);
    if (a.degenerate())
        throw std::domain_error("distance_D: degenerate combo (|A| = 0)");
    return Int(a.value - 1);
}

/**
 * The logarithmic distance ln(Z - 2) computed two ways:
 *   direct: certified MPFR enclosure of ln(Z - 2);
 *   series: enclosure of ln Z plus the Mercator expansion of
 *           ln(1 - 2/Z) truncated after `terms` terms.
 *
 * With t = 2/Z in (0, 1):  ln(1 - t) = -(t + t^2/2 + ...), and the
 * truncated tail is bounded by t^{T+1} / ((T+1)(1 - t)), so the series
 * enclosure is [lnZ.lo + S - bound, lnZ.hi + S] with S the exact partial
 * sum. The two enclosures bracket the same number and must overlap.
 */
struct LogDistance {
    RationalInterval direct;
    RationalInterval series;
    unsigned terms = 0;
};

inline LogDistance log_distance(const Rational& z, unsigned terms, mpfr_prec_t prec = 128) {
    if (!(z > Rational(2)))
        throw std::domain_error("log_distance: Z must exceed 2");
    if (terms < 1) throw std::invalid_argument("log_distance: need at least one term");

    LogDistance out;
    out.terms = terms;
    out.direct = log_enclosure(z - Rational(2), prec);

    RationalInterval ln_z = log_enclosure(z, prec);
    const Rational t = Rational(2) / z;
    Rational partial(0);
    Rational power(1);
    for (unsigned j = 1; j <= terms; ++j) {
        power *= t;
        partial -= power / Rational(static_cast<long>(j));
    }
    Rational tail_bound = power * t / (Rational(static_cast<long>(terms) + 1) * (Rational(1) - t));
    out.series = {ln_z.lo + partial - tail_bound, ln_z.hi + partial};
    if (!out.direct.overlaps(out.series))
        throw std::logic_error("log_distance: routes disagree");
    return out;
}

/**
 * Real-valued solution of "distance equals value": D = Z - 2 equals
 * f(|A|) = e^{u(1-Z)} exactly when u = ln(Z-2)/(1-Z), and then
 * m = Z / u^E = Z (1-Z)^E / ln(Z-2)^E for E = Nk - 2. The solution is
 * generically non-integral, which is reported rather than rounded; it
 * never feeds back into integer combos.
 */
struct DistanceSolution {
    double z = 0;
    unsigned exponent_index = 0;  // E = Nk - 2
    double u_real = 0;
    double m_real = 0;
    double residual = 0;  // |(Z-2) - e^{u(1-Z)}|
    bool u_negative = false;
    bool u_integral = false;  // within 1e-9 of an integer
    bool m_integral = false;
};

inline DistanceSolution solve_distance_equals_value(double z, unsigned exponent_index,
                                                    double tol = 1e-12) {
    if (!(z > 2.0)) throw std::domain_error("solve_distance_equals_value: Z must exceed 2");
    if (z == 3.0)
        throw std::domain_error("solve_distance_equals_value: Z = 3 makes ln(Z-2) vanish");
    if (exponent_index < 1)
        throw std::invalid_argument("solve_distance_equals_value: E must be >= 1");

    DistanceSolution sol;
    sol.z = z;
    sol.exponent_index = exponent_index;
    const double log_d = std::log(z - 2.0);
    sol.u_real = log_d / (1.0 - z);
    const double e = static_cast<double>(exponent_index);
    sol.m_real = z * std::pow(1.0 - z, e) / std::pow(log_d, e);
    const double m_alt = z / std::pow(sol.u_real, e);
    if (std::abs(sol.m_real - m_alt) > tol * std::abs(sol.m_real))
        throw std::logic_error("solve_distance_equals_value: m routes disagree");
    sol.residual = std::abs((z - 2.0) - std::exp(sol.u_real * (1.0 - z)));
    sol.u_negative = sol.u_real < 0;
    sol.u_integral = std::abs(sol.u_real - std::round(sol.u_real)) < 1e-9;
    sol.m_integral = std::abs(sol.m_real - std::round(sol.m_real)) < 1e-9;
    return sol;
}

/**
 * Instance check of Rolle's setup on [1, |A|]: f(1) = f(|A|) and f' is
 * negative before theta, zero at theta, positive after (reversed for
 * u < 0). The numeric part checks that the central difference
 * (Q(x+h) - Q(x-h)) / 2h reproduces 2ux + v exactly; on a quadratic the
 * central difference has no truncation error, so equality is rational
 * equality, not a tolerance.
 */
struct RolleReport {
    Rational theta;
    Int abs_a;
    std::size_t samples = 0;  // interior points probed, both sides of theta
    bool sign_pattern_ok = false;
    bool central_difference_exact = false;
};

inline RolleReport verify_rolle(const ParamCombo& combo, const Rational& h) {
    if (h.sgn() <= 0) throw std::invalid_argument("verify_rolle: step must be positive");
    Midpoint mid = midpoint(combo);
    const Sign before = combo.u() > 0 ? Sign::negative : Sign::positive;
    const Sign after = combo.u() > 0 ? Sign::positive : Sign::negative;

    auto central_matches = [&](const Rational& x) {
        Rational diff = (exponent_at(combo, x + h) - exponent_at(combo, x - h)) /
                        (Rational(2) * h);
        return diff == derivative_factor(combo, x);
    };

    RolleReport report;
    report.theta = mid.theta;
    report.abs_a = mid.abs_a;
    report.sign_pattern_ok = derivative_sign_at(combo, mid.theta) == Sign::zero;
    report.central_difference_exact = central_matches(mid.theta);
    std::size_t count = 0;
    for (Rational x = Rational(1) + h; x < mid.theta; x += h) {
        report.sign_pattern_ok =
            report.sign_pattern_ok && derivative_sign_at(combo, x) == before;
        report.central_difference_exact =
            report.central_difference_exact && central_matches(x);
        ++count;
    }
    for (Rational x = mid.theta + h; x < Rational(mid.abs_a); x += h) {
        report.sign_pattern_ok =
            report.sign_pattern_ok && derivative_sign_at(combo, x) == after;
        report.central_difference_exact =
            report.central_difference_exact && central_matches(x);
        ++count;
    }
    report.samples = count;
    return report;
}

/// f'(x) = e^{Q(x)} (2ux + v) as an exactly comparable scaled exponential.
inline ScaledExp derivative_value(const ParamCombo& combo, const Rational& x) {
    return {derivative_factor(combo, x), exponent_at(combo, x)};
}

/**
 * Intermediate-value witness for f' on [1, theta] or [theta, |A|]: given
 * beta strictly between the endpoint derivatives, bisects until the
 * bracket is narrower than width_tol, keeping beta strictly inside. The
 * returned bracket [lo, hi] has f' on opposite sides of beta at its ends;
 * x is the bracket midpoint (or the exact preimage when bisection lands
 * on it).
 */
struct DarbouxWitness {
    Rational lo;
    Rational hi;
    Rational x;
};

inline DarbouxWitness verify_darboux(const ParamCombo& combo, const ScaledExp& beta,
                                     const Rational& width_tol = Rational(1, 1000000000)) {
    if (width_tol.sgn() <= 0)
        throw std::invalid_argument("verify_darboux: width tolerance must be positive");
    Midpoint mid = midpoint(combo);
    if (beta.sgn() == 0) return {mid.theta, mid.theta, mid.theta};  // beta = f'(theta)

    const ScaledExp zero{Rational(0), Rational(0)};
    auto strictly_between = [&](const ScaledExp& lo_v, const ScaledExp& hi_v) {
        auto a = compare_scaled(lo_v, beta);
        auto b = compare_scaled(beta, hi_v);
        return (a == std::strong_ordering::less && b == std::strong_ordering::less) ||
               (a == std::strong_ordering::greater && b == std::strong_ordering::greater);
    };

    Rational lo(1), hi = mid.theta;
    if (!strictly_between(derivative_value(combo, lo), zero)) {
        lo = mid.theta;
        hi = Rational(mid.abs_a);
        if (!strictly_between(zero, derivative_value(combo, hi)))
            throw std::domain_error("verify_darboux: beta outside derivative range");
    }

    // Orientation of the bracket: which side of beta the low end sits on.
    auto side_lo = compare_scaled(derivative_value(combo, lo), beta);
    while (hi - lo > width_tol) {
        Rational x = (lo + hi) / Rational(2);
        auto side = compare_scaled(derivative_value(combo, x), beta);
        if (side == std::strong_ordering::equal) return {x, x, x};
        if (side == side_lo)
            lo = std::move(x);
        else
            hi = std::move(x);
    }
    Rational x = (lo + hi) / Rational(2);
    return {std::move(lo), std::move(hi), std::move(x)};
}

}  // namespace qexp
