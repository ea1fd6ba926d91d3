#pragma once

#include <compare>
#include <stdexcept>

#include "qexp/combo.hpp"
#include "qexp/rational.hpp"

namespace qexp {

/// Q(x) = u x^2 + v x, evaluated exactly.
inline Rational exponent_at(const ParamCombo& combo, const Rational& x) {
    return Rational(Int(combo.u())) * x * x + Rational(combo.v()) * x;
}

/**
 * A function value carried in log space: the real number e^{log_value},
 * negated when positive is false. f itself is always positive; the sign
 * flag exists for derivative factors.
 */
struct QValue {
    Rational log_value;
    bool positive = true;
};

/// f(x) = e^{Q(x)}.
inline QValue value_at(const ParamCombo& combo, const Rational& x) {
    return {exponent_at(combo, x), true};
}

/// Ordering of e^{a} vs e^{b}; exp is monotone, so this is exact rational
/// comparison of the log values.
inline std::strong_ordering compare_values(const QValue& a, const QValue& b) {
    if (!a.positive || !b.positive)
        throw std::invalid_argument("compare_values: both values must be positive");
    return a.log_value <=> b.log_value;
}

enum class Sign { negative, zero, positive };

/// f'(x)/f(x) = 2 u x + v, exact.
inline Rational derivative_factor(const ParamCombo& combo, const Rational& x) {
    return Rational(Int(2) * Int(combo.u())) * x + Rational(combo.v());
}

/// Sign of f'(x). f(x) > 0 everywhere, so this is the sign of 2 u x + v.
inline Sign derivative_sign_at(const ParamCombo& combo, const Rational& x) {
    int s = derivative_factor(combo, x).sgn();
    if (s < 0) return Sign::negative;
    if (s > 0) return Sign::positive;
    return Sign::zero;
}

/**
 * Exact check of f(1) = f(|A|). Holds for every combo with N*k even and
 * |A| >= 1; a false return means the implementation (not the identity)
 * is broken, which is what the check exists to catch.
 */
inline bool check_symmetry(const ParamCombo& combo) {
    if (!combo.nk_even())
        throw std::domain_error("check_symmetry: N*k must be even");
    AbsA a = compute_abs_A(combo);
    if (a.degenerate())
        throw std::domain_error("check_symmetry: degenerate combo (|A| = 0)");
    return exponent_at(combo, Rational(1)) == exponent_at(combo, Rational(a.value));
}

}  // namespace qexp
