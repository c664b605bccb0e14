#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "wcospec/common.hpp"
#include "wcospec/hinf.hpp"

namespace wcospec {

// Elliptic disk automorphism phi = phi_a o (eta .) o phi_a: fixed point a in D,
// rotation multiplier eta = phi'(a) on the unit circle.  The multiplier is
// either exactly rational (eta = e^{2 pi i p/q}, lowest terms, order q) or a
// numeric angle treated as irrational with an explicit caveat (every double is
// rational; callers wanting finite order must say so).
class EllipticAutomorphism {
 public:
  static EllipticAutomorphism from_rational(complex fixed_point, long p, long q);
  static EllipticAutomorphism from_angle(complex fixed_point, double angle01);

  complex fixed_point() const { return a_; }
  complex eta() const { return eta_power(1); }
  double angle01() const;
  bool is_rational() const { return rational_.has_value(); }
  std::optional<long> order() const;           // q when rational, nullopt = infinite
  bool numeric_angle_caveat() const { return !rational_.has_value(); }

  complex eta_power(long n) const;  // exact modular arithmetic when rational
  complex apply(complex z) const { return iterate(1, z); }
  complex iterate(long n, complex z) const;    // phi_n(z), n may be negative

 private:
  EllipticAutomorphism() = default;
  complex a_{0.0, 0.0};
  std::optional<std::pair<long, long>> rational_;  // (p, q) lowest terms
  double angle_ = 0.0;                             // in [0, 1)
};

struct NonEllipticReport {
  enum class Kind { parabolic, hyperbolic };
  Kind kind = Kind::hyperbolic;
  complex fixed1, fixed2;  // on the unit circle
};

using MapClassification = std::variant<EllipticAutomorphism, NonEllipticReport>;

// Classification of phi(z) = lambda (b - z)/(1 - conj(b) z), |lambda| = 1:
// solves the fixed-point quadratic; elliptic when exactly one fixed point lies
// in the open disk, with multiplier eta = phi'(a) (verified against tau(w)/w).
MapClassification classify_mobius(complex lambda, complex b);

// The pair (psi, phi) with cocycle psi_(n) = prod_{j<n} psi o phi_j.
struct WeightCocycle {
  HInfFunction weight;
  EllipticAutomorphism map;
};

// (psi o phi_a, rotation eta) with the same multiplier; identity when a = 0.
WeightCocycle conjugate_to_rotation(const WeightCocycle& cw);

struct CocycleValue {
  double log_mag = 0.0;
  complex phase{1.0, 0.0};
  bool zero_hit = false;
};

// log|psi_(n)(z)| and phase, accumulated in log space term by term.
CocycleValue cocycle(const WeightCocycle& cw, long n, complex z);

// psi_(n)(z) as a complex number (exp of the log form).
complex cocycle_value(const WeightCocycle& cw, long n, complex z);

// (1/n) sum_{j<n} f(theta0 + 2 pi t j), f an observable on the circle.
double birkhoff_average(const std::function<double(double)>& f, double t, long n, double theta0);

struct BirkhoffGridResult {
  double sup;
  double inf;
};

// Sup and inf of the Birkhoff average over all M grid starting points.
// Deterministic regardless of thread count.
BirkhoffGridResult birkhoff_grid(const std::function<double(double)>& f, double t, long n,
                                 std::size_t m);

}  // namespace wcospec
