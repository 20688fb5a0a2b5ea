#pragma once

#include <vector>

namespace fwt::detail {

/// Polynomial with coefficients in ascending order of degree.
using Poly = std::vector<double>;

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);
double poly_eval(const Poly& p, double x);

/// Real roots of p. Leading coefficients below 1e-14 of the largest one are
/// dropped. Complex roots whose imaginary part is within `imag_tol`
/// (relative to max(1, |re|)) are reported as real candidates; callers are
/// expected to polish and verify. Returns false if p is identically zero.
bool real_roots(const Poly& p, std::vector<double>& roots, double imag_tol = 1e-6);

}  // namespace fwt::detail
