#include "wcospec/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace wcospec {

EllipticAutomorphism EllipticAutomorphism::from_rational(complex fixed_point, long p, long q) {
  if (std::abs(fixed_point) >= 1.0) throw invalid_input("elliptic map: |fixed point| must be < 1");
  if (q < 1) throw invalid_input("elliptic map: rational angle needs q >= 1");
  long g = std::gcd(std::abs(p), q);
  if (g > 0) {
    p /= g;
    q /= g;
  }
  p %= q;
  if (p < 0) p += q;
  EllipticAutomorphism e;
  e.a_ = fixed_point;
  e.rational_ = std::make_pair(p, q);
  e.angle_ = static_cast<double>(p) / static_cast<double>(q);
  return e;
}

EllipticAutomorphism EllipticAutomorphism::from_angle(complex fixed_point, double angle01) {
  if (std::abs(fixed_point) >= 1.0) throw invalid_input("elliptic map: |fixed point| must be < 1");
  if (!std::isfinite(angle01)) throw invalid_input("elliptic map: angle must be finite");
  EllipticAutomorphism e;
  e.a_ = fixed_point;
  e.angle_ = wrap_unit(angle01);
  return e;
}

double EllipticAutomorphism::angle01() const { return angle_; }

std::optional<long> EllipticAutomorphism::order() const {
  if (rational_) return rational_->second;
  return std::nullopt;
}

complex EllipticAutomorphism::eta_power(long n) const {
  if (rational_) {
    auto [p, q] = *rational_;
    long r = ((n % q) * (p % q)) % q;
    if (r < 0) r += q;
    return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(q));
  }
  return std::polar(1.0, kTwoPi * wrap_unit(static_cast<double>(n) * angle_));
}

complex EllipticAutomorphism::iterate(long n, complex z) const {
  if (n == 0) return z;
  const complex rot = eta_power(n);
  if (a_ == complex(0.0)) return rot * z;
  return mobius_involution(a_, rot * mobius_involution(a_, z));
}

MapClassification classify_mobius(complex lambda, complex b) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw invalid_input("mobius map: |lambda| must be 1");
  if (std::abs(b) >= 1.0) throw invalid_input("mobius map: |b| must be < 1");

  auto make_elliptic = [&](complex a) {
    // eta = phi'(a) = lambda (|b|^2 - 1)/(1 - conj(b) a)^2.
    complex denom = 1.0 - std::conj(b) * a;
    complex eta = lambda * (std::norm(b) - 1.0) / (denom * denom);
    eta /= std::abs(eta);
    EllipticAutomorphism e =
        EllipticAutomorphism::from_angle(a, wrap_unit(std::arg(eta) / kTwoPi));
    // Consistency check: tau = phi_a o phi o phi_a must act as w -> eta w.
    const complex w(0.1, 0.07);
    complex tau = mobius_involution(a, lambda * mobius_involution(b, mobius_involution(a, w)));
    if (std::abs(tau - e.eta() * w) > 1e-8)
      throw evaluation_error("mobius map: conjugated rotation check failed");
    return e;
  };

  if (b == complex(0.0)) return make_elliptic(complex(0.0));

  // Fixed points: conj(b) z^2 - (1 + lambda) z + lambda b = 0.
  const complex A = std::conj(b);
  const complex B = -(1.0 + lambda);
  const complex C = lambda * b;
  const complex disc = std::sqrt(B * B - 4.0 * A * C);
  const complex z1 = (-B + disc) / (2.0 * A);
  const complex z2 = (-B - disc) / (2.0 * A);

  const double tol = 1e-9;
  const double m1 = std::abs(z1), m2 = std::abs(z2);
  if (m1 < 1.0 - tol) return make_elliptic(z1);
  if (m2 < 1.0 - tol) return make_elliptic(z2);

  NonEllipticReport rep;
  rep.fixed1 = z1;
  rep.fixed2 = z2;
  rep.kind = std::abs(z1 - z2) <= tol ? NonEllipticReport::Kind::parabolic
                                      : NonEllipticReport::Kind::hyperbolic;
  return rep;
}

WeightCocycle conjugate_to_rotation(const WeightCocycle& cw) {
  const complex a = cw.map.fixed_point();
  if (a == complex(0.0)) return cw;
  auto rotation = [&] {
    if (cw.map.is_rational()) {
      long q = *cw.map.order();
      long p = std::lround(cw.map.angle01() * static_cast<double>(q));
      return EllipticAutomorphism::from_rational(complex(0.0), p, q);
    }
    return EllipticAutomorphism::from_angle(complex(0.0), cw.map.angle01());
  };
  return WeightCocycle{cw.weight.compose_mobius(a), rotation()};
}

CocycleValue cocycle(const WeightCocycle& cw, long n, complex z) {
  if (n < 0) throw invalid_input("cocycle: n must be nonnegative");
  CocycleValue out;
  for (long j = 0; j < n; ++j) {
    complex w = cw.map.iterate(j, z);
    complex val = cw.weight.eval(w);
    double mod = std::abs(val);
    if (mod == 0.0) {
      out.log_mag = -std::numeric_limits<double>::infinity();
      out.zero_hit = true;
      return out;
    }
    out.log_mag += std::log(mod);
    out.phase *= val / mod;
  }
  return out;
}

complex cocycle_value(const WeightCocycle& cw, long n, complex z) {
  CocycleValue v = cocycle(cw, n, z);
  if (v.zero_hit) return complex(0.0);
  return std::exp(v.log_mag) * v.phase;
}

double birkhoff_average(const std::function<double(double)>& f, double t, long n, double theta0) {
  if (n < 1) throw invalid_input("birkhoff_average: n must be >= 1");
  const double x0 = theta0 / kTwoPi;
  double acc = 0.0;
  for (long j = 0; j < n; ++j) {
    acc += f(kTwoPi * wrap_unit(x0 + static_cast<double>(j) * t));
  }
  return acc / static_cast<double>(n);
}

BirkhoffGridResult birkhoff_grid(const std::function<double(double)>& f, double t, long n,
                                 std::size_t m) {
  if (n < 1 || m < 1) throw invalid_input("birkhoff_grid: n and m must be >= 1");
  std::vector<double> averages(m);
  parallel_for(m, [&](std::size_t j) {
    averages[j] =
        birkhoff_average(f, t, n, kTwoPi * static_cast<double>(j) / static_cast<double>(m));
  });
  BirkhoffGridResult r{averages[0], averages[0]};
  for (double v : averages) {
    r.sup = std::max(r.sup, v);
    r.inf = std::min(r.inf, v);
  }
  return r;
}

}  // namespace wcospec
