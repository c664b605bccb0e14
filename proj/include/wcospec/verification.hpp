#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "wcospec/bergman.hpp"

namespace wcospec {

struct ResidualRecord {
  complex lambda;
  long k = 0;
  long n_k = 0;
  double residual = 0.0;
  double peak_angle = 0.0;
  std::size_t peak_power = 0;
  bool inconclusive = false;  // truncation self-check failed (no verdict)
};

// f_k = sum_{j=0}^{n_k-1} lambda^{k-j-1} psi_(j) (g o phi_{j-k}), assembled in
// exact coefficient arithmetic (rotation maps only; conjugate first).  The
// telescoping identity
//   (C - lambda) f_k = lambda^{k-n_k} psi_(n_k) (g o phi_{n_k-k})
//                      - lambda^k (g o phi_{-k})
// is verified to 1e-8 relative in norm as a built-in self-check.  When the
// lambda-powers would overflow, the vector is rescaled by a positive constant
// (residual ratios are unaffected); if that fails too, throws with a
// diagnostic.
AnalyticVector approx_eigenfunction(const WeightCocycle& cw, complex lambda, long k, long n_k,
                                    const AnalyticVector& g, std::size_t n_out);

struct ResidualScanSettings {
  std::vector<long> k_schedule{8, 16, 32, 64};
  std::size_t peak_power_cap = AnalyticVector::kDefaultMaxDegree * 4;  // N_peak = min(4k^2, cap)
  int phase_count = 16;
  long n_cap = 512;                // near-recurrence search bound for n_k
  std::size_t boundary_grid = 4096;  // grid for the |psi_(k)| peak search
  bool fixed_n = false;            // n_k = 2k + 1 instead of near-recurrence
};

// For each radius and each k: peak-localized g at the grid maximizer of
// |psi_(k)|, lambda = R e^{i phase} minimized over equispaced phases.
std::vector<ResidualRecord> residual_scan(const WeightCocycle& cw, const BergmanParams& params,
                                          const std::vector<double>& radii,
                                          const ResidualScanSettings& settings = {});

struct PseudospectrumField {
  std::vector<double> radii;
  std::vector<double> angles;
  Eigen::MatrixXd sigma_min;  // (radius, angle) -> smallest singular value
};

// sigma_min of (mat - lambda I) over a polar grid; inverse iteration on the
// LU factors, deterministic start and tolerance.
PseudospectrumField pseudospectrum(const Eigen::MatrixXcd& mat, const std::vector<double>& radii,
                                   const std::vector<double>& angles);

double smallest_singular_value(const Eigen::MatrixXcd& mat, complex lambda);
double operator_norm_2(const Eigen::MatrixXcd& mat);

struct MassCheckResult {
  double i1 = 0.0;      // mass over |z| < R
  double i2 = 0.0;      // mass over R < |z| < 1
  double c_const = 0.0; // (1 - R'^2)^alpha (R' - R), R' = (R+1)/2
  double ratio = 0.0;   // I2 (1+C) / (C ||f||^p)
  bool pass = false;    // ratio >= 1 - 1e-6
};

MassCheckResult annulus_mass_check(const AnalyticVector& f, double big_r,
                                   const BergmanParams& params);

// Min over random polynomials (degree <= max_degree, iid complex Gaussian
// coefficients) of ||(C - lambda) f|| / ||f||; a sampled witness for
// bounded-below, not a certificate.
double lower_bound_sample(const WeightCocycle& cw, complex lambda, const BergmanParams& params,
                          int trials, std::uint64_t seed, std::size_t max_degree = 64);

// Gauss-Legendre on [0,1] (no weight), used by the mass split.
void gauss_legendre_01(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace wcospec
