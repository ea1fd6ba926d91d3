#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qexp {

/// Arbitrary-precision integer.
using Int = mpz_class;

/// base^exp for a nonnegative integer exponent.
inline Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

/**
 * Exact rational number.
 *
 * Invariants: always in lowest terms, denominator > 0, zero is 0/1.
 * Every constructor canonicalizes; GMP's rational arithmetic preserves
 * canonical form from there on, so equality is plain field equality.
 */
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(const Int& n) : q_(n) {}
    Rational(const Int& num, const Int& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(num) / mpq_class(den);  // mpq division canonicalizes
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    Int num() const { return Int(q_.get_num()); }
    Int den() const { return Int(q_.get_den()); }
    int sgn() const { return ::sgn(q_); }
    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    /// Canonical text form: "num" when integral, "num/den" otherwise.
    std::string to_string() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }

    /// Underlying mpq, for MPFR interop.
    mpq_srcptr raw() const { return q_.get_mpq_t(); }

    /// Parses "n", "n/d", or a plain decimal like "-1.25", all exact.
    static Rational from_string(std::string_view s);

    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_), raw_tag{}); }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.q_ + b.q_), raw_tag{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.q_ - b.q_), raw_tag{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.q_ * b.q_), raw_tag{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.q_ / b.q_), raw_tag{});
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.raw(), b.raw()) != 0;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return mpq_cmp(a.raw(), b.raw()) <=> 0;
    }

private:
    struct raw_tag {};
    Rational(mpq_class q, raw_tag) : q_(std::move(q)) {}  // already canonical

    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sgn() < 0 ? -r : r; }

namespace detail {

inline Int parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    bool neg = !s.empty() && s.front() == '-';
    std::string_view digits = neg ? s.substr(1) : s;
    if (digits.empty()) throw std::invalid_argument("Rational: empty integer part");
    for (char c : digits)
        if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad digit in number");
    Int v(std::string(digits), 10);
    return neg ? Int(-v) : v;
}

}  // namespace detail

inline Rational Rational::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Int num = detail::parse_integer(s.substr(0, slash));
        Int den = detail::parse_integer(s.substr(slash + 1));
        return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view head = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        bool neg = !head.empty() && head.front() == '-';
        if (!head.empty() && (head.front() == '-' || head.front() == '+')) head.remove_prefix(1);
        if (frac.empty()) throw std::invalid_argument("Rational: empty fraction digits");
        for (char c : frac)
            if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad digit in fraction");
        Int ipart = head.empty() ? Int(0) : detail::parse_integer(head);
        Int scale = int_pow(Int(10), frac.size());
        Int num = ipart * scale + Int(std::string(frac), 10);
        if (neg) num = -num;
        return Rational(num, scale);
    }
    return Rational(detail::parse_integer(s));
}

}  // namespace qexp
