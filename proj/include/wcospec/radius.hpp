#pragma once

#include <utility>
#include <vector>

#include "wcospec/rotation.hpp"

namespace wcospec {

// Discrete boundary envelopes of a log-modulus grid: vstar is the
// moving-window maximum (u.s.c. regularization), vlower the moving-window
// minimum, vstarstar the min-envelope of the max-envelope of vlower.
struct EnvelopeSet {
  std::vector<double> vstar;
  std::vector<double> vlower;
  std::vector<double> vstarstar;
};

EnvelopeSet boundary_envelopes(const std::vector<double>& log_modulus, std::size_t window);

struct RadiusSettings {
  std::vector<long> schedule{16, 64, 256, 1024, 4096};
  std::size_t grid_m = 4096;       // boundary grid for the Birkhoff sup
  std::size_t envelope_window = 0; // odd; 0 selects data_grid/1024 + 1
};

// Estimate of rho = lim ||psi_(n)||_inf^{1/n} for an infinite-order elliptic
// map: the grid sup of exp(Birkhoff averages of the outer boundary data),
// bracketed by max(|v(a)|, |v**(a)|) from below and |v*(a)| from above.
struct RadiusEstimate {
  double value = 0.0;
  std::vector<std::pair<long, double>> sequence;  // (n, sup estimate)
  double v_at_a = 0.0;
  double v_starstar_at_a = 0.0;
  double v_star_at_a = 0.0;
  double tolerance = 0.0;  // reported ergodic tolerance
  bool monotone_decreasing = false;
  bool oscillating = false;
  bool window_sensitive = false;  // envelope bounds move > 5% from w to 2w+1

  double lower_bound() const { return std::max(v_at_a, v_starstar_at_a); }
  double upper_bound() const { return v_star_at_a; }
};

RadiusEstimate rho_estimate(const WeightCocycle& cw, const RadiusSettings& settings = {});

// Estimate of r = lim inf_{Shilov} |psi_(k)|^{1/k}: exactly 0 when the weight
// has boundary zeros; otherwise 1/rho(1/v) (closed form), cross-checked by a
// direct infimum of |v_(n)|^{1/n} over a disk grid.
struct InnerRadiusEstimate {
  double value = 0.0;
  bool closed_form_used = false;
  bool shilov_zero = false;
  double bracket_lo = 0.0;  // inverted bracket of rho(1/v)
  double bracket_hi = 0.0;
  std::vector<std::pair<long, double>> sequence;  // (n, disk-grid inf)
};

InnerRadiusEstimate r_estimate(const WeightCocycle& cw, const RadiusSettings& settings = {});

}  // namespace wcospec
