#pragma once

#include <ostream>
#include <vector>

#include "qexp/combo.hpp"
#include "qexp/exact.hpp"
#include "qexp/family.hpp"

namespace qexp {

// CSV data emitters. Comma separator, LF line endings, exact exponents
// (plotting tools exponentiate at whatever precision they choose).

/// One pair of rows per combo: Q at x = 1 and at x = partner. The two
/// exponents per p are equal by the symmetry identity.
inline void emit_figure1(const std::vector<ParamCombo>& combos, std::ostream& os) {
    os << "p,k,m,u,N,x,exponent\n";
    for (std::size_t i = 0; i < combos.size(); ++i) {
        const ParamCombo& c = combos[i];
        Int partner = find_partner(c);
        const auto row = [&](const Rational& x) {
            os << (i + 1) << ',' << c.k() << ',' << c.m() << ',' << c.u() << ',' << c.n()
               << ',' << x.to_string() << ',' << exponent_at(c, x).to_string() << '\n';
        };
        row(Rational(1));
        row(Rational(partner));
    }
}

/// |A_p| against Q_p(1), sorted by |A| ascending.
inline void emit_figure2(const FamilySequence& seq, std::ostream& os) {
    os << "p,absA,exponent_at_1\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        os << (i + 1) << ',' << seq.abs_a_values[i].get_str() << ','
           << seq.exponents_at_1[i].to_string() << '\n';
    }
}

}  // namespace qexp
