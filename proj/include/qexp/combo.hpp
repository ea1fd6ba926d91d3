#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "qexp/rational.hpp"

namespace qexp {

/**
 * Parameter combination {k, m, u, N} for the quadratic exponential
 * f(x) = exp(u x^2 + v x) with
 *
 *   v = (-1)^{Nk-1} m u^{Nk-1},   Z = m u^{Nk-2}.
 *
 * k, m, N are positive, u is a nonzero integer (negative u is the
 * mirrored family g). N*k >= 2 so the power Nk-2 of u is a nonnegative
 * integer. Z uses u as given, so Z may be negative when Nk is odd and
 * u < 0; the symmetric() factory additionally requires Nk even, which
 * forces Z >= 1.
 */
class ParamCombo {
public:
    ParamCombo(std::int64_t k, std::int64_t m, std::int64_t u, std::int64_t n = 2)
        : k_(k), m_(m), u_(u), n_(n) {
        if (k < 1) throw std::invalid_argument("ParamCombo: k must be positive");
        if (m < 1) throw std::invalid_argument("ParamCombo: m must be positive");
        if (u == 0) throw std::invalid_argument("ParamCombo: u must be nonzero");
        if (n < 1) throw std::invalid_argument("ParamCombo: N must be positive");
        if (k > std::numeric_limits<std::int64_t>::max() / n)
            throw std::invalid_argument("ParamCombo: N*k overflows");
        if (n * k < 2) throw std::invalid_argument("ParamCombo: N*k must be at least 2");
        const auto nk = static_cast<unsigned long>(n_ * k_);
        Int t = Int(m_) * int_pow(Int(u_), nk - 1);
        v_ = (nk % 2 == 0) ? Int(-t) : t;  // (-1)^{Nk-1}
        z_ = Int(m_) * int_pow(Int(u_), nk - 2);
    }

    /// Combo admissible for the symmetry theorems: N*k even on top of the
    /// base invariants.
    static ParamCombo symmetric(std::int64_t k, std::int64_t m, std::int64_t u,
                                std::int64_t n = 2) {
        ParamCombo c(k, m, u, n);
        if (!c.nk_even())
            throw std::invalid_argument("ParamCombo::symmetric: N*k must be even");
        return c;
    }

    std::int64_t k() const { return k_; }
    std::int64_t m() const { return m_; }
    std::int64_t u() const { return u_; }
    std::int64_t n() const { return n_; }
    std::int64_t nk() const { return n_ * k_; }
    bool nk_even() const { return nk() % 2 == 0; }

    /// Linear coefficient v = (-1)^{Nk-1} m u^{Nk-1}.
    const Int& v() const { return v_; }
    /// Z = m u^{Nk-2}; the vertex of the exponent sits at Z/2.
    const Int& z() const { return z_; }

    friend bool operator==(const ParamCombo& a, const ParamCombo& b) {
        return a.key() == b.key();
    }
    friend std::strong_ordering operator<=>(const ParamCombo& a, const ParamCombo& b) {
        return a.key() <=> b.key();
    }

private:
    std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t> key() const {
        return {k_, m_, u_, n_};
    }

    std::int64_t k_, m_, u_, n_;
    Int v_, z_;
};

enum class AbsBranch {
    z_at_least_one,  // |A| = Z - 1
    z_below_one,     // |A| = 1 - Z
};

/// |A| = |1 - Z| with the branch that produced it. Zero (Z = 1) is the
/// degenerate case excluded from the symmetry theorems.
struct AbsA {
    Int value;
    AbsBranch branch;

    bool degenerate() const { return value == 0; }
};

inline AbsA compute_abs_A(const ParamCombo& combo) {
    const Int& z = combo.z();
    if (z >= 1) return {Int(z - 1), AbsBranch::z_at_least_one};
    return {Int(1 - z), AbsBranch::z_below_one};
}

}  // namespace qexp
