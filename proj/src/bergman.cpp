#include "wcospec/bergman.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "wcospec/fft.hpp"

namespace wcospec {

void AnalyticVector::validate(std::size_t max_degree) const {
  if (coeffs.size() > max_degree + 1) throw invalid_input("analytic vector: degree too large");
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw invalid_input("analytic vector: non-finite coefficient");
  }
}

double monomial_norm_sq(std::size_t n, double alpha) {
  double nd = static_cast<double>(n);
  return std::exp(std::lgamma(nd + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(nd + alpha + 2.0));
}

void gauss_jacobi_01(std::size_t n, double alpha, std::vector<double>& nodes,
                     std::vector<double>& weights) {
  if (n == 0) throw invalid_input("gauss_jacobi_01: order must be positive");
  // Monic Jacobi recurrence on [-1,1] for weight (1-x)^alpha (1+x)^0.
  const double a = alpha, b = 0.0;
  Eigen::VectorXd diag(static_cast<Eigen::Index>(n)), sub(static_cast<Eigen::Index>(n));
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  for (std::size_t k = 0; k < n; ++k) {
    double kk = static_cast<double>(k);
    double denom = (2.0 * kk + a + b) * (2.0 * kk + a + b + 2.0);
    diag(static_cast<Eigen::Index>(k)) =
        (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / denom;
    if (k >= 1) {
      double beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) /
                    ((2.0 * kk + a + b) * (2.0 * kk + a + b) * (2.0 * kk + a + b + 1.0) *
                     (2.0 * kk + a + b - 1.0));
      sub(static_cast<Eigen::Index>(k) - 1) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(static_cast<Eigen::Index>(n) - 1));
  if (solver.info() != Eigen::Success) throw evaluation_error("gauss_jacobi_01: eigensolver failed");

  nodes.resize(n);
  weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double x = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    double w = mu0 * solver.eigenvectors()(0, static_cast<Eigen::Index>(k)) *
               solver.eigenvectors()(0, static_cast<Eigen::Index>(k));
    // Map [-1,1] -> [0,1]: t = (x+1)/2, weight gains 2^{-alpha-1}.
    nodes[k] = 0.5 * (x + 1.0);
    weights[k] = w * std::pow(2.0, -a - 1.0);
  }
}

DiskQuadrature::DiskQuadrature(std::size_t radial_order, std::size_t angular_size, double alpha)
    : angular_(angular_size), alpha_(alpha) {
  if (!(alpha > -1.0)) throw invalid_input("DiskQuadrature: alpha must be > -1");
  if (angular_size < 4) throw invalid_input("DiskQuadrature: angular grid too small");
  // int_0^1 F(r)(1-r^2)^alpha r dr = (1/2) int_0^1 F(sqrt(t)) (1-t)^alpha dt.
  std::vector<double> t_nodes, t_weights;
  gauss_jacobi_01(radial_order, alpha, t_nodes, t_weights);
  radial_nodes_.resize(radial_order);
  radial_weights_.resize(radial_order);
  for (std::size_t i = 0; i < radial_order; ++i) {
    radial_nodes_[i] = std::sqrt(t_nodes[i]);
    radial_weights_[i] = 0.5 * t_weights[i];
  }
}

double DiskQuadrature::integrate(const std::function<double(complex)>& fn) const {
  // (1+alpha)/pi sum_i W_i (2 pi / M) sum_j fn(r_i e^{i theta_j}).
  const double scale = 2.0 * (1.0 + alpha_) / static_cast<double>(angular_);
  std::vector<double> partial(radial_nodes_.size());
  parallel_for(radial_nodes_.size(), [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < angular_; ++j) {
      double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(angular_);
      double v = fn(std::polar(radial_nodes_[i], theta));
      acc += v;
    }
    partial[i] = acc * radial_weights_[i];
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total * scale;
}

double norm2_coefficient(const AnalyticVector& f, double alpha) {
  double acc = 0.0;
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    acc += std::norm(f.coeffs[n]) * monomial_norm_sq(n, alpha);
  }
  return std::sqrt(acc);
}

double norm(const std::function<complex(complex)>& f, const BergmanParams& params,
            const DiskQuadrature& quad) {
  params.validate();
  double integral = quad.integrate([&](complex z) {
    complex v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw evaluation_error("norm: non-finite value at quadrature node");
    return std::pow(std::abs(v), params.p);
  });
  return std::pow(integral, 1.0 / params.p);
}

double norm(const AnalyticVector& f, const BergmanParams& params, const DiskQuadrature& quad) {
  double q = norm([&](complex z) { return f.eval(z); }, params, quad);
  if (params.p == 2.0) {
    const std::size_t deg = f.degree();
    const bool resolved =
        quad.radial_order() >= (deg + 1) / 2 + 1 && quad.angular_size() > 2 * deg;
    if (resolved) {
      double c = norm2_coefficient(f, params.alpha);
      double denom = std::max(c, 1e-300);
      if (std::abs(q - c) / denom > 1e-8)
        throw evaluation_error("norm: quadrature and coefficient formula disagree");
    }
  }
  return q;
}

namespace {

// Default sampling radius: r0^{-n} amplifies FFT roundoff, so keep
// r0^{n} >= 1e-6 for large degrees.
double default_sampling_radius(std::size_t n_out) {
  if (n_out <= 48) return 0.5;
  return std::max(0.5, std::pow(10.0, -6.0 / static_cast<double>(n_out + 1)));
}

}  // namespace

ApplyResult apply_wco(const WeightCocycle& cw, const AnalyticVector& f, std::size_t n_out,
                      double r0) {
  f.validate(AnalyticVector::kDefaultMaxDegree * 8);

  ApplyResult out;
  if (cw.map.fixed_point() == complex(0.0)) {
    // Rotation model: exact coefficient arithmetic.
    // (psi . f o phi)_m = sum_{i+j=m} psi_j eta^i f_i.
    std::vector<complex> rotated(std::min<std::size_t>(f.coeffs.size(), n_out + 1));
    for (std::size_t i = 0; i < rotated.size(); ++i) rotated[i] = f.coeffs[i] * cw.map.eta_power(static_cast<long>(i));
    std::vector<complex> psi = cw.weight.taylor(n_out);
    out.coeffs.coeffs = series_multiply(psi, rotated, n_out);
    out.aliasing_bound = 0.0;
    return out;
  }

  if (4 * (n_out + 1) > (1u << 20))
    throw invalid_input("apply_wco: requested degree too large for sample grid");
  std::size_t m = 4;
  while (m < 4 * (n_out + 1)) m <<= 1;
  if (r0 <= 0.0) r0 = default_sampling_radius(n_out);

  std::vector<complex> samples(m);
  for (std::size_t j = 0; j < m; ++j) {
    complex z = std::polar(r0, kTwoPi * static_cast<double>(j) / static_cast<double>(m));
    complex w = cw.map.apply(z);
    samples[j] = cw.weight.eval(z) * f.eval(w);
  }
  fft_forward(samples);

  out.coeffs.coeffs.resize(n_out + 1);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k <= n_out; ++k) {
    out.coeffs.coeffs[k] = samples[k] * inv_m / std::pow(r0, static_cast<double>(k));
  }
  double tail = 0.0;
  for (std::size_t k = 3 * m / 4; k < m; ++k) tail = std::max(tail, std::abs(samples[k]) * inv_m);
  out.aliasing_bound = tail / std::pow(r0, static_cast<double>(n_out));
  return out;
}

Eigen::MatrixXcd wco_matrix(const HInfFunction& weight, const EllipticAutomorphism& map,
                            std::size_t n, double alpha) {
  if (map.fixed_point() != complex(0.0))
    throw invalid_input("wco_matrix: map must be a rotation; conjugate first");
  std::vector<complex> psi = weight.taylor(n);

  // Ratios sqrt(m_{k+j}/m_k) via log-gamma differences.
  std::vector<double> logm(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double d = static_cast<double>(i);
    logm[i] = std::lgamma(d + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(d + alpha + 2.0);
  }

  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n + 1),
                                                static_cast<Eigen::Index>(n + 1));
  for (std::size_t k = 0; k <= n; ++k) {
    const complex ek = map.eta_power(static_cast<long>(k));
    for (std::size_t j = 0; k + j <= n; ++j) {
      mat(static_cast<Eigen::Index>(k + j), static_cast<Eigen::Index>(k)) =
          ek * psi[j] * std::exp(0.5 * (logm[k + j] - logm[k]));
    }
  }
  return mat;
}

}  // namespace wcospec
