#pragma once

#include <vector>

#include "wcospec/common.hpp"

namespace wcospec {

// Roots of p(z) = sum_k coeffs[k] z^k via the companion-matrix eigenvalues,
// polished with a few Newton steps.  Throws invalid_input on the zero
// polynomial.  A constant polynomial has no roots.
std::vector<complex> poly_roots(const std::vector<complex>& coeffs);

// Horner evaluation, ascending coefficients.
complex poly_eval(const std::vector<complex>& coeffs, complex z);

}  // namespace wcospec
