#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

#include "qexp/rational.hpp"

namespace qexp {

/// Closed interval [lo, hi] with exact rational endpoints.
struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool overlaps(const RationalInterval& o) const { return lo <= o.hi && o.lo <= hi; }
};

namespace detail {

class MpfrFloat {
public:
    explicit MpfrFloat(mpfr_prec_t prec) { mpfr_init2(f_, prec); }
    ~MpfrFloat() { mpfr_clear(f_); }
    MpfrFloat(const MpfrFloat&) = delete;
    MpfrFloat& operator=(const MpfrFloat&) = delete;

    mpfr_ptr get() { return f_; }
    mpfr_srcptr get() const { return f_; }

private:
    mpfr_t f_;
};

/// Exact rational value of an MPFR float (every finite binary float is
/// rational: mantissa * 2^exp).
inline Rational to_rational(mpfr_srcptr f) {
    if (mpfr_zero_p(f)) return Rational(0);
    if (!mpfr_number_p(f))
        throw std::runtime_error("mpfr value is not finite");
    Int mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), f);
    if (e >= 0) {
        Int num;
        mpz_mul_2exp(num.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        return Rational(num);
    }
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    return Rational(mant, den);
}

}  // namespace detail

/**
 * Certified enclosure of ln(q) for rational q > 0.
 *
 * Lower endpoint: round q down, take ln rounded down; upper endpoint the
 * mirror image. MPFR's ln is correctly rounded in each direction, so the
 * true ln(q) lies in [lo, hi]. Width shrinks as 2^{-prec}.
 */
inline RationalInterval log_enclosure(const Rational& q, mpfr_prec_t prec = 128) {
    if (q.sgn() <= 0)
        throw std::domain_error("log_enclosure: argument must be positive");
    detail::MpfrFloat x(prec), l(prec);
    mpfr_set_q(x.get(), q.raw(), MPFR_RNDD);
    mpfr_log(l.get(), x.get(), MPFR_RNDD);
    Rational lo = detail::to_rational(l.get());
    mpfr_set_q(x.get(), q.raw(), MPFR_RNDU);
    mpfr_log(l.get(), x.get(), MPFR_RNDU);
    Rational hi = detail::to_rational(l.get());
    return {std::move(lo), std::move(hi)};
}

/**
 * Exact ordering of a rational r against ln(q), q > 0 rational.
 *
 * ln(q) is irrational for every rational q != 1, and r = ln(q) would make
 * e^r rational, which happens only at r = 0. So after handling q = 1 the
 * enclosure refinement below always separates the two numbers.
 */
inline std::strong_ordering compare_rational_to_log(const Rational& r, const Rational& q) {
    if (q.sgn() <= 0)
        throw std::domain_error("compare_rational_to_log: q must be positive");
    if (q == Rational(1)) return r <=> Rational(0);
    for (mpfr_prec_t prec = 64; prec <= (mpfr_prec_t{1} << 22); prec *= 2) {
        RationalInterval enc = log_enclosure(q, prec);
        if (r < enc.lo) return std::strong_ordering::less;
        if (r > enc.hi) return std::strong_ordering::greater;
    }
    throw std::runtime_error("compare_rational_to_log: enclosure failed to separate");
}

/**
 * The real number coeff * e^{exponent} with both parts exact rationals.
 * Closed under the comparisons this library needs: f(x) has coeff 1 and
 * f'(x) has coeff 2ux + v.
 */
struct ScaledExp {
    Rational coeff;
    Rational exponent;

    int sgn() const { return coeff.sgn(); }
};

/// Exact ordering of two scaled exponentials.
inline std::strong_ordering compare_scaled(const ScaledExp& a, const ScaledExp& b) {
    const int sa = a.sgn(), sb = b.sgn();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // Same nonzero sign: order |a| vs |b|, then flip for negatives.
    const Rational ca = abs(a.coeff), cb = abs(b.coeff);
    std::strong_ordering mag = std::strong_ordering::equal;
    if (a.exponent == b.exponent) {
        mag = ca <=> cb;
    } else if (ca == cb) {
        mag = a.exponent <=> b.exponent;
    } else {
        // ca e^{Ea} vs cb e^{Eb}  <=>  Ea - Eb vs ln(cb/ca)
        mag = compare_rational_to_log(a.exponent - b.exponent, cb / ca);
    }
    if (sa > 0 || mag == std::strong_ordering::equal) return mag;
    return mag == std::strong_ordering::less ? std::strong_ordering::greater
                                             : std::strong_ordering::less;
}

/// Decimal rendering of e^{exponent}.
struct ExpRendering {
    enum class Status { ok, underflow, overflow };
    Status status = Status::ok;
    std::string text;  // "d.ddd...e<k>" scientific form; empty unless ok
};

/**
 * Renders e^{exponent} with the given number of significant decimal
 * digits. Values outside the decade window [1e-308, 1e308] are reported
 * as underflow/overflow instead of being rendered.
 */
inline ExpRendering render_exp(const Rational& exponent, unsigned digits = 30) {
    if (digits < 1) throw std::invalid_argument("render_exp: digits must be >= 1");
    if (exponent.is_zero()) return {ExpRendering::Status::ok, "1"};

    const auto prec = static_cast<mpfr_prec_t>(digits * 3.33) + 32;
    detail::MpfrFloat x(prec), v(prec);
    mpfr_set_q(x.get(), exponent.raw(), MPFR_RNDN);
    mpfr_exp(v.get(), x.get(), MPFR_RNDN);
    if (mpfr_zero_p(v.get())) return {ExpRendering::Status::underflow, ""};
    if (mpfr_inf_p(v.get())) return {ExpRendering::Status::overflow, ""};

    mpfr_exp_t dec_exp = 0;
    char* s = mpfr_get_str(nullptr, &dec_exp, 10, digits, v.get(), MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    // mpfr convention: value = 0.mant * 10^dec_exp, so the scientific
    // exponent is dec_exp - 1.
    const long sci = static_cast<long>(dec_exp) - 1;
    if (sci < -308) return {ExpRendering::Status::underflow, ""};
    if (sci > 308) return {ExpRendering::Status::overflow, ""};
    std::string text;
    text += mant[0];
    if (mant.size() > 1) {
        text += '.';
        text += mant.substr(1);
    }
    text += 'e';
    text += std::to_string(sci);
    return {ExpRendering::Status::ok, text};
}

}  // namespace qexp
