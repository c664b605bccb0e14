#include "wcospec/polyroots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>

namespace wcospec {

complex poly_eval(const std::vector<complex>& coeffs, complex z) {
  complex acc(0.0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

namespace {

complex poly_deriv_eval(const std::vector<complex>& coeffs, complex z) {
  complex acc(0.0);
  for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * z + static_cast<double>(i) * coeffs[i];
  return acc;
}

}  // namespace

std::vector<complex> poly_roots(const std::vector<complex>& coeffs) {
  double maxmag = 0.0;
  for (const auto& c : coeffs) maxmag = std::max(maxmag, std::abs(c));
  if (maxmag == 0.0) throw invalid_input("poly_roots: zero polynomial");

  // Strip negligible leading coefficients.
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && std::abs(coeffs[deg]) <= 1e-14 * maxmag) --deg;
  if (deg == 0) return {};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  const complex lead = coeffs[deg];
  for (std::size_t k = 0; k < deg; ++k) {
    if (k + 1 < deg) companion(k + 1, k) = 1.0;
    companion(k, deg - 1) = -coeffs[k] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw evaluation_error("poly_roots: eigensolver failed");

  std::vector<complex> roots(deg);
  std::vector<complex> trimmed(coeffs.begin(), coeffs.begin() + deg + 1);
  for (std::size_t k = 0; k < deg; ++k) {
    complex r = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    for (int it = 0; it < 4; ++it) {
      complex d = poly_deriv_eval(trimmed, r);
      if (std::abs(d) < 1e-300) break;
      complex step = poly_eval(trimmed, r) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
    }
    roots[k] = r;
  }
  // Deterministic order.
  std::sort(roots.begin(), roots.end(), [](const complex& a, const complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace wcospec
