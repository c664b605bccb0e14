#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "wcospec/common.hpp"
#include "wcospec/rotation.hpp"

namespace wcospec {

struct BergmanParams {
  double p = 2.0;
  double alpha = 0.0;

  void validate() const {
    if (!(p >= 1.0)) throw invalid_input("Bergman params: p must be >= 1");
    if (!(alpha > -1.0)) throw invalid_input("Bergman params: alpha must be > -1");
  }
};

// Truncated Taylor-coefficient vector (degree <= N, coeffs[k] multiplies z^k).
struct AnalyticVector {
  std::vector<complex> coeffs;

  static constexpr std::size_t kDefaultMaxDegree = 4096;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  complex eval(complex z) const {
    complex acc(0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
  }
  void validate(std::size_t max_degree = kDefaultMaxDegree) const;
};

// Squared A^2_alpha norm of z^n on the normalized measure:
//   m_n(alpha) = n! Gamma(alpha+2) / Gamma(n+alpha+2),
// computed through lgamma.
double monomial_norm_sq(std::size_t n, double alpha);

// Radial Gauss-Jacobi rule for int_0^1 F(r) (1-r^2)^alpha r dr plus a uniform
// angular grid; sum of radial weights is 1/(2(1+alpha)) and the full rule
// integrates 1 over the normalized measure to 1.
class DiskQuadrature {
 public:
  DiskQuadrature(std::size_t radial_order, std::size_t angular_size, double alpha);

  double alpha() const { return alpha_; }
  std::size_t radial_order() const { return radial_nodes_.size(); }
  std::size_t angular_size() const { return angular_; }
  const std::vector<double>& radial_nodes() const { return radial_nodes_; }
  const std::vector<double>& radial_weights() const { return radial_weights_; }

  // integral of fn over D against the normalized measure dA_alpha.
  double integrate(const std::function<double(complex)>& fn) const;

 private:
  std::vector<double> radial_nodes_;
  std::vector<double> radial_weights_;
  std::size_t angular_;
  double alpha_;
};

// Gauss-Jacobi nodes/weights on [0,1] for weight (1-t)^alpha (Golub-Welsch on
// the symmetric Jacobi matrix).
void gauss_jacobi_01(std::size_t n, double alpha, std::vector<double>& nodes,
                     std::vector<double>& weights);

// A^p_alpha norm by quadrature.  For p = 2 and coefficient input the
// coefficient formula sum |a_n|^2 m_n(alpha) is evaluated as a cross-check and
// disagreement beyond 1e-8 relative throws (only when the rule resolves the
// degree: radial_order >= (deg+1)/2 and angular > 2 deg).
double norm(const AnalyticVector& f, const BergmanParams& params, const DiskQuadrature& quad);
double norm(const std::function<complex(complex)>& f, const BergmanParams& params,
            const DiskQuadrature& quad);

// Exact p = 2 coefficient norm.
double norm2_coefficient(const AnalyticVector& f, double alpha);

struct ApplyResult {
  AnalyticVector coeffs;
  // Size indicator for the discarded sampling tail (max unscaled magnitude of
  // the top quarter of the sampled spectrum).
  double aliasing_bound = 0.0;
};

// Taylor coefficients of psi (f o phi) through degree n_out.  Rotation maps
// use exact coefficient arithmetic; general elliptic maps sample on a circle
// of radius r0 and unscale (r0 <= 0 selects a degree-adapted default).
ApplyResult apply_wco(const WeightCocycle& cw, const AnalyticVector& f, std::size_t n_out,
                      double r0 = 0.5);

// Matrix of C_{psi, eta z} on the normalized monomial basis e_k = z^k/sqrt(m_k):
// entry (k+j, k) = eta^k psi_j sqrt(m_{k+j}/m_k); lower triangular, diagonal
// psi(0) eta^k.  Requires a rotation (fixed point 0): conjugate first.
Eigen::MatrixXcd wco_matrix(const HInfFunction& weight, const EllipticAutomorphism& map,
                            std::size_t n, double alpha);

}  // namespace wcospec
