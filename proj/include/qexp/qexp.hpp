#pragma once

// Exact arithmetic for the quadratic exponential family
// f(x) = exp(u x^2 + v x), v = (-1)^{Nk-1} m u^{Nk-1}.

#include "qexp/analysis.hpp"
#include "qexp/combo.hpp"
#include "qexp/enclosure.hpp"
#include "qexp/exact.hpp"
#include "qexp/family.hpp"
#include "qexp/rational.hpp"
