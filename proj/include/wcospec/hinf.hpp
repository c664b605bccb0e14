#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wcospec/common.hpp"

namespace wcospec {

// Boundary log-modulus data log|f(e^{i theta})| on the uniform grid
// theta_j = 2 pi j / M.  Samples are clamped to [kLogFloor, kLogCeil]; a
// sample at kLogFloor is a boundary-zero marker, not a value.  All numeric
// consumers read the patched samples, where floor markers are replaced by
// linear interpolation between the flanking unfloored samples (an integrable
// log-singularity contributes nothing to means at grid resolution, while a
// raw -700 would dominate them).
class BoundaryLogModulus {
 public:
  BoundaryLogModulus() = default;  // empty; populate through the factories

  static BoundaryLogModulus from_samples(std::vector<double> samples);
  static BoundaryLogModulus zero(std::size_t m);
  static BoundaryLogModulus from_char_set(const std::vector<bool>& set, double log_on,
                                          double log_off);

  std::size_t grid_size() const { return samples_.size(); }
  const std::vector<double>& raw() const { return samples_; }
  const std::vector<double>& patched() const { return patched_; }

  // Mean of the patched samples.
  double mean() const { return mean_; }
  double min_raw() const { return min_raw_; }
  double max_raw() const { return max_raw_; }
  bool has_floor_samples() const { return has_floor_; }

  // Nearest-sample value (set-membership data must not be smoothed); exact at
  // grid points.  Reads patched samples.
  double value_at(double theta) const;

 private:
  void finalize();

  std::vector<double> samples_;
  std::vector<double> patched_;
  double mean_ = 0.0;
  double min_raw_ = 0.0;
  double max_raw_ = 0.0;
  bool has_floor_ = false;
};

struct BlaschkeZero {
  complex z;
  int multiplicity = 1;
};

// Finite Blaschke part.  Every zero satisfies |z| < 1 - kBlaschkeEps.
struct BlaschkeFactorSet {
  std::vector<BlaschkeZero> zeros;

  bool empty() const { return zeros.empty(); }
  int degree() const;
  void validate() const;
};

struct SingularAtom {
  double theta = 0.0;  // in [0, 2 pi)
  double mass = 0.0;   // > 0
};

// Finite sum of boundary point masses for the singular inner factor
// exp(-sum_j s_j (zeta_j + z)/(zeta_j - z)).
struct SingularInnerAtoms {
  std::vector<SingularAtom> atoms;

  bool empty() const { return atoms.empty(); }
  void validate() const;
};

// A bounded analytic function in canonical factored form
//   psi = c * B * S * v
// with finite Blaschke part B, singular atoms S, outer part v built from
// boundary log-modulus data, and a unimodular constant c.
//
// Mobius/rotation precompositions are represented by a chain node: the
// composed object evaluates through the defining formula psi(w(z)) while its
// metadata fields (zeros, atoms, outer grid, flags) hold the mapped data.
class HInfFunction {
 public:
  // Pure outer function v with v(z) = exp(c_0 + 2 sum_{k>=1} g_k z^k), where
  // g_k are the analytic-half DFT coefficients of the boundary data.
  static HInfFunction outer_from_log_modulus(BoundaryLogModulus g);

  // Inner-outer splitting of a polynomial (ascending coefficients): roots
  // strictly inside D become Blaschke zeros, roots in the dead zone
  // [1 - kBlaschkeEps, 1 + kBlaschkeEps] are recorded as boundary zeros, and
  // the outer boundary data is log|p| sampled on the grid.
  static HInfFunction factor(const std::vector<complex>& poly_coeffs,
                             std::size_t grid_m = 4096);

  static HInfFunction from_components(BlaschkeFactorSet blaschke, SingularInnerAtoms singular,
                                      BoundaryLogModulus outer, complex unimodular_constant);

  static HInfFunction constant_fn(complex c, std::size_t grid_m = 64);

  // B(z) S(z) v(z) c; requires |z| <= 1 - kEvalEps.
  complex eval(complex z) const;

  // Outer-part boundary log-modulus at theta (inner factors contribute 0 a.e.).
  double boundary_log_modulus(double theta) const;

  // Outer function with negated boundary data; throws not_invertible when
  // zeros in D, boundary zeros, or singular atoms are present.
  HInfFunction reciprocal() const;

  // H o phi_a with phi_a(z) = (a - z)/(1 - conj(a) z).
  HInfFunction compose_mobius(complex a) const;

  // H(u z), |u| = 1.
  HInfFunction compose_rotation(complex u) const;

  // factor * psi for factor > 0 (shifts the outer data by log factor).
  HInfFunction scaled(double factor) const;

  // The outer factor alone (with unit constant).
  HInfFunction outer_part() const;

  // Taylor coefficients through degree n_out, by power-series assembly of the
  // factored form (and series composition across chain nodes).
  std::vector<complex> taylor(std::size_t n_out) const;

  const BlaschkeFactorSet& blaschke() const { return blaschke_; }
  const SingularInnerAtoms& singular() const { return singular_; }
  const BoundaryLogModulus& outer_log_modulus() const { return outer_; }
  complex unimodular_constant() const { return constant_; }
  const std::vector<double>& boundary_zero_angles() const { return boundary_zeros_; }

  // exp(min raw sample), or exactly 0 when a floor sample or declared
  // boundary zero is present.
  double ess_inf_boundary_modulus() const;

  bool zeros_in_disk() const { return !blaschke_.empty(); }
  bool zeros_on_shilov() const;
  bool singular_present() const { return !singular_.empty(); }

  // |v(0)| = exp(mean of the boundary data).
  double outer_modulus_at_zero() const { return std::exp(outer_.mean()); }

  // Cached Taylor coefficients of log v (length M/2).
  const std::vector<complex>& log_outer_taylor() const { return log_v_; }

  // Re log v(z) through the composition chain; safe where exp would
  // under/overflow.
  double outer_log_modulus_at(complex z) const;

  bool is_composed() const { return chain_ != nullptr; }

 private:
  HInfFunction() = default;
  void build_outer_cache();
  complex eval_unchecked(complex z) const;
  complex inner_outer_eval(complex z) const;
  HInfFunction composed(complex u, complex a) const;
  double boundary_raw_at(double theta) const;

  BlaschkeFactorSet blaschke_;
  SingularInnerAtoms singular_;
  BoundaryLogModulus outer_;
  complex constant_{1.0, 0.0};
  std::vector<double> boundary_zeros_;  // angles of dead-zone roots
  std::vector<complex> log_v_;          // Taylor of log v, length M/2

  // Precomposition chain: this object is base(u * phi_a(z)).
  struct Chain {
    std::shared_ptr<const HInfFunction> base;
    complex u{1.0, 0.0};  // unimodular
    complex a{0.0, 0.0};  // |a| < 1
  };
  std::shared_ptr<const Chain> chain_;
};

// phi_a(z) = (a - z)/(1 - conj(a) z), the involution exchanging 0 and a.
inline complex mobius_involution(complex a, complex z) {
  return (a - z) / (1.0 - std::conj(a) * z);
}

}  // namespace wcospec
