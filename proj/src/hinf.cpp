#include "wcospec/hinf.hpp"

#include <algorithm>
#include <cmath>

#include "wcospec/fft.hpp"
#include "wcospec/polyroots.hpp"

namespace wcospec {

// ---------------------------------------------------------------------------
// BoundaryLogModulus

BoundaryLogModulus BoundaryLogModulus::from_samples(std::vector<double> samples) {
  if (!is_power_of_two(samples.size()) || samples.size() < 16)
    throw invalid_input("boundary data: grid size must be a power of two, >= 16");
  for (double& s : samples) {
    if (std::isnan(s)) throw invalid_input("boundary data: NaN sample");
    s = std::clamp(s, kLogFloor, kLogCeil);
  }
  BoundaryLogModulus g;
  g.samples_ = std::move(samples);
  g.finalize();
  return g;
}

BoundaryLogModulus BoundaryLogModulus::zero(std::size_t m) {
  return from_samples(std::vector<double>(m, 0.0));
}

BoundaryLogModulus BoundaryLogModulus::from_char_set(const std::vector<bool>& set, double log_on,
                                                     double log_off) {
  std::vector<double> s(set.size());
  for (std::size_t j = 0; j < set.size(); ++j) s[j] = set[j] ? log_on : log_off;
  return from_samples(std::move(s));
}

void BoundaryLogModulus::finalize() {
  const std::size_t m = samples_.size();
  min_raw_ = samples_[0];
  max_raw_ = samples_[0];
  for (double s : samples_) {
    min_raw_ = std::min(min_raw_, s);
    max_raw_ = std::max(max_raw_, s);
  }
  has_floor_ = min_raw_ <= kLogFloor;

  patched_ = samples_;
  if (has_floor_) {
    // Replace each floored run by linear interpolation between the flanking
    // unfloored samples (circularly).
    auto floored = [&](std::size_t j) { return samples_[j] <= kLogFloor; };
    bool all = true;
    for (std::size_t j = 0; j < m; ++j)
      if (!floored(j)) {
        all = false;
        break;
      }
    if (!all) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!floored(j)) continue;
        std::size_t left = j, right = j, dl = 0, dr = 0;
        while (floored(left)) {
          left = (left + m - 1) % m;
          ++dl;
        }
        while (floored(right)) {
          right = (right + 1) % m;
          ++dr;
        }
        double w = static_cast<double>(dl) / static_cast<double>(dl + dr);
        patched_[j] = (1.0 - w) * samples_[left] + w * samples_[right];
      }
    }
  }

  double acc = 0.0;
  for (double s : patched_) acc += s;
  mean_ = acc / static_cast<double>(m);
}

double BoundaryLogModulus::value_at(double theta) const {
  const auto m = static_cast<double>(samples_.size());
  auto idx = static_cast<std::size_t>(std::llround(wrap_angle(theta) / kTwoPi * m)) %
             samples_.size();
  return patched_[idx];
}

// ---------------------------------------------------------------------------
// Inner parts

int BlaschkeFactorSet::degree() const {
  int d = 0;
  for (const auto& z : zeros) d += z.multiplicity;
  return d;
}

void BlaschkeFactorSet::validate() const {
  for (const auto& z : zeros) {
    if (z.multiplicity < 1) throw invalid_input("Blaschke zero: multiplicity must be positive");
    if (std::abs(z.z) >= 1.0 - kBlaschkeEps)
      throw invalid_input("Blaschke zero: |z| must be < 1 - 1e-12");
  }
}

void SingularInnerAtoms::validate() const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].mass <= 0.0) throw invalid_input("singular atom: mass must be positive");
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (wrap_angle(atoms[i].theta) == wrap_angle(atoms[j].theta))
        throw invalid_input("singular atoms: angles must be pairwise distinct");
    }
  }
}

namespace {

complex blaschke_eval(const BlaschkeFactorSet& b, complex z) {
  complex acc(1.0, 0.0);
  for (const auto& zero : b.zeros) {
    complex f;
    if (zero.z == complex(0.0)) {
      f = z;
    } else {
      f = (std::abs(zero.z) / zero.z) * (zero.z - z) / (1.0 - std::conj(zero.z) * z);
    }
    for (int k = 0; k < zero.multiplicity; ++k) acc *= f;
  }
  return acc;
}

complex singular_eval(const SingularInnerAtoms& s, complex z) {
  complex expo(0.0);
  for (const auto& atom : s.atoms) {
    complex zeta = std::polar(1.0, atom.theta);
    expo -= atom.mass * (zeta + z) / (zeta - z);
  }
  return std::exp(expo);
}

}  // namespace

// ---------------------------------------------------------------------------
// HInfFunction

void HInfFunction::build_outer_cache() {
  const std::size_t m = outer_.grid_size();
  std::vector<complex> ghat = dft_coefficients(outer_.patched());
  log_v_.assign(m / 2, complex(0.0));
  log_v_[0] = complex(ghat[0].real(), 0.0);
  for (std::size_t k = 1; k < m / 2; ++k) log_v_[k] = 2.0 * ghat[k];
}

HInfFunction HInfFunction::outer_from_log_modulus(BoundaryLogModulus g) {
  HInfFunction h;
  h.outer_ = std::move(g);
  h.build_outer_cache();
  return h;
}

HInfFunction HInfFunction::from_components(BlaschkeFactorSet blaschke, SingularInnerAtoms singular,
                                           BoundaryLogModulus outer, complex unimodular_constant) {
  blaschke.validate();
  singular.validate();
  double mod = std::abs(unimodular_constant);
  if (std::abs(mod - 1.0) > 1e-14) throw invalid_input("constant must be unimodular");
  HInfFunction h;
  h.blaschke_ = std::move(blaschke);
  h.singular_ = std::move(singular);
  h.outer_ = std::move(outer);
  h.constant_ = unimodular_constant / mod;
  h.build_outer_cache();
  return h;
}

HInfFunction HInfFunction::constant_fn(complex c, std::size_t grid_m) {
  if (c == complex(0.0)) throw invalid_input("constant function must be nonzero");
  HInfFunction h;
  h.outer_ = BoundaryLogModulus::from_samples(
      std::vector<double>(grid_m, std::log(std::abs(c))));
  h.constant_ = c / std::abs(c);
  h.build_outer_cache();
  return h;
}

HInfFunction HInfFunction::factor(const std::vector<complex>& poly_coeffs, std::size_t grid_m) {
  std::vector<complex> roots = poly_roots(poly_coeffs);  // throws on zero polynomial

  HInfFunction h;
  for (const auto& r : roots) {
    double mod = std::abs(r);
    if (mod < 1.0 - kBlaschkeEps) {
      h.blaschke_.zeros.push_back({r, 1});
    } else if (mod <= 1.0 + kBlaschkeEps) {
      h.boundary_zeros_.push_back(wrap_angle(std::arg(r)));
    }
    // Roots outside the closed disk stay in the outer part.
  }

  // Blaschke factors are unimodular on the circle, so the outer boundary data
  // is log|p| itself.
  std::vector<complex> values = eval_on_circle_grid(poly_coeffs, grid_m);
  std::vector<double> samples(grid_m);
  for (std::size_t j = 0; j < grid_m; ++j) {
    double mod = std::abs(values[j]);
    samples[j] = mod > 0.0 ? std::log(mod) : kLogFloor;
  }
  h.outer_ = BoundaryLogModulus::from_samples(std::move(samples));
  h.build_outer_cache();

  // Constant chosen so the factored form reproduces p; probe away from zeros.
  const complex probes[] = {{0.31, 0.0}, {-0.27, 0.41}, {0.11, -0.53}, {-0.47, -0.13}, {0.05, 0.17}};
  double scale = 0.0;
  for (const auto& c : poly_coeffs) scale = std::max(scale, std::abs(c));
  for (const auto& z0 : probes) {
    complex p = poly_eval(poly_coeffs, z0);
    if (std::abs(p) < 1e-8 * scale) continue;
    complex f = h.inner_outer_eval(z0);
    if (std::abs(f) < 1e-300) continue;
    complex c = p / f;
    h.constant_ = c / std::abs(c);
    break;
  }
  return h;
}

complex HInfFunction::inner_outer_eval(complex z) const {
  complex acc = blaschke_eval(blaschke_, z) * singular_eval(singular_, z);
  complex logv(0.0);
  for (std::size_t k = log_v_.size(); k-- > 0;) logv = logv * z + log_v_[k];
  return acc * std::exp(logv);
}

complex HInfFunction::eval_unchecked(complex z) const {
  if (chain_) return chain_->base->eval_unchecked(chain_->u * mobius_involution(chain_->a, z));
  return constant_ * inner_outer_eval(z);
}

complex HInfFunction::eval(complex z) const {
  if (std::abs(z) > 1.0 - kEvalEps)
    throw eval_near_boundary("eval: |z| too close to 1; use boundary_log_modulus");
  return eval_unchecked(z);
}

double HInfFunction::boundary_log_modulus(double theta) const {
  if (chain_) {
    complex w = chain_->u * mobius_involution(chain_->a, std::polar(1.0, theta));
    return chain_->base->boundary_log_modulus(std::arg(w));
  }
  return outer_.value_at(theta);
}

double HInfFunction::ess_inf_boundary_modulus() const {
  if (!boundary_zeros_.empty() || outer_.has_floor_samples()) return 0.0;
  return std::exp(outer_.min_raw());
}

bool HInfFunction::zeros_on_shilov() const {
  return !boundary_zeros_.empty() || outer_.has_floor_samples();
}

HInfFunction HInfFunction::reciprocal() const {
  if (zeros_in_disk()) throw not_invertible("reciprocal: weight has zeros in the disk");
  if (zeros_on_shilov()) throw not_invertible("reciprocal: boundary modulus has essential infimum 0");
  if (singular_present()) throw not_invertible("reciprocal: singular inner factor present");
  if (chain_) {
    HInfFunction h = chain_->base->reciprocal();
    auto node = std::make_shared<Chain>();
    node->base = std::make_shared<HInfFunction>(std::move(h));
    node->u = chain_->u;
    node->a = chain_->a;
    HInfFunction out = *this;
    out.chain_ = node;
    // Metadata: negate the resampled outer data, conjugate the constant.
    std::vector<double> neg = outer_.raw();
    for (double& s : neg) s = -s;
    out.outer_ = BoundaryLogModulus::from_samples(std::move(neg));
    out.build_outer_cache();
    out.constant_ = std::conj(constant_);
    return out;
  }
  std::vector<double> neg = outer_.raw();
  for (double& s : neg) s = -s;
  HInfFunction h;
  h.outer_ = BoundaryLogModulus::from_samples(std::move(neg));
  h.constant_ = std::conj(constant_);
  h.build_outer_cache();
  return h;
}

HInfFunction HInfFunction::compose_mobius(complex a) const {
  if (std::abs(a) >= 1.0) throw invalid_input("compose_mobius: |a| must be < 1");
  return composed(complex(1.0, 0.0), a);
}

HInfFunction HInfFunction::compose_rotation(complex u) const {
  if (std::abs(std::abs(u) - 1.0) > 1e-12) throw invalid_input("compose_rotation: |u| must be 1");
  // u * phi_0(z) = -u z, so precomposing with z -> r z means u = -r.
  return composed(-u, complex(0.0, 0.0));
}

// Builds base(w(z)) for w(z) = u * phi_a(z).  The zero set of the composite is
// w^{-1}(zeros), with w^{-1}(y) = phi_a(y / u); atom angles map the same way;
// the outer grid is resampled through w; the classification flags carry over.
HInfFunction HInfFunction::composed(complex u, complex a) const {
  HInfFunction out;
  auto node = std::make_shared<Chain>();
  node->base = std::make_shared<HInfFunction>(*this);
  node->u = u;
  node->a = a;
  out.chain_ = node;

  auto pull_back = [&](complex y) { return mobius_involution(a, y / u); };

  for (const auto& zero : blaschke_.zeros) {
    out.blaschke_.zeros.push_back({pull_back(zero.z), zero.multiplicity});
  }
  // Atom masses are kept as position metadata only; evaluation goes through
  // the defining formula, so nothing is lost.
  for (const auto& atom : singular_.atoms) {
    complex mapped = pull_back(std::polar(1.0, atom.theta));
    out.singular_.atoms.push_back({wrap_angle(std::arg(mapped)), atom.mass});
  }
  for (double theta : boundary_zeros_) {
    complex mapped = pull_back(std::polar(1.0, theta));
    out.boundary_zeros_.push_back(wrap_angle(std::arg(mapped)));
  }

  const std::size_t m = outer_.grid_size();
  std::vector<double> resampled(m);
  for (std::size_t j = 0; j < m; ++j) {
    complex w = u * mobius_involution(a, std::polar(1.0, kTwoPi * static_cast<double>(j) /
                                                             static_cast<double>(m)));
    resampled[j] = boundary_raw_at(std::arg(w));  // floor markers carry over
  }
  out.outer_ = BoundaryLogModulus::from_samples(std::move(resampled));
  out.build_outer_cache();
  out.constant_ = constant_;
  return out;
}

double HInfFunction::outer_log_modulus_at(complex z) const {
  if (chain_) {
    return chain_->base->outer_log_modulus_at(chain_->u * mobius_involution(chain_->a, z));
  }
  complex acc(0.0);
  for (std::size_t k = log_v_.size(); k-- > 0;) acc = acc * z + log_v_[k];
  return acc.real();
}

double HInfFunction::boundary_raw_at(double theta) const {
  if (chain_) {
    complex w = chain_->u * mobius_involution(chain_->a, std::polar(1.0, theta));
    return chain_->base->boundary_raw_at(std::arg(w));
  }
  const auto& s = outer_.raw();
  const auto m = static_cast<double>(s.size());
  auto idx = static_cast<std::size_t>(std::llround(wrap_angle(theta) / kTwoPi * m)) % s.size();
  return s[idx];
}

HInfFunction HInfFunction::scaled(double factor) const {
  if (!(factor > 0.0)) throw invalid_input("scaled: factor must be positive");
  HInfFunction out = *this;
  std::vector<double> s = outer_.raw();
  const double shift = std::log(factor);
  for (double& x : s) {
    if (x > kLogFloor) x += shift;  // floor markers stay markers
  }
  out.outer_ = BoundaryLogModulus::from_samples(std::move(s));
  out.build_outer_cache();
  if (chain_) {
    HInfFunction base = chain_->base->scaled(factor);
    auto node = std::make_shared<Chain>(*chain_);
    node->base = std::make_shared<HInfFunction>(std::move(base));
    out.chain_ = node;
  }
  return out;
}

HInfFunction HInfFunction::outer_part() const {
  if (chain_) {
    HInfFunction base = chain_->base->outer_part();
    HInfFunction out;
    out.outer_ = outer_;
    out.boundary_zeros_ = boundary_zeros_;
    out.build_outer_cache();
    auto node = std::make_shared<Chain>(*chain_);
    node->base = std::make_shared<HInfFunction>(std::move(base));
    out.chain_ = node;
    return out;
  }
  HInfFunction out;
  out.outer_ = outer_;
  out.boundary_zeros_ = boundary_zeros_;
  out.build_outer_cache();
  return out;
}

std::vector<complex> HInfFunction::taylor(std::size_t n_out) const {
  if (chain_) {
    // base(u * phi_a(z)): Horner over the base series in the Mobius series
    //   u*phi_a(z) = u*a + u*(|a|^2 - 1) z * sum_k (conj(a) z)^k.
    std::vector<complex> base = chain_->base->taylor(n_out);
    const complex a = chain_->a, u = chain_->u;
    std::vector<complex> w(n_out + 1, complex(0.0));
    w[0] = u * a;
    const complex ab = std::conj(a);
    complex pw(1.0, 0.0);
    for (std::size_t k = 1; k <= n_out; ++k) {
      w[k] = u * (std::norm(a) - 1.0) * pw;
      pw *= ab;
    }
    std::vector<complex> acc(1, complex(0.0));
    for (std::size_t k = base.size(); k-- > 0;) {
      acc = series_multiply(acc, w, n_out);
      if (acc.size() < n_out + 1) acc.resize(n_out + 1, complex(0.0));
      acc[0] += base[k];
    }
    acc.resize(n_out + 1, complex(0.0));
    return acc;
  }

  // Outer part: exp of the cached log-v series.
  std::vector<complex> u(log_v_.begin(),
                         log_v_.begin() + static_cast<long>(std::min(log_v_.size(), n_out + 1)));
  std::vector<complex> acc = series_exp(u, n_out);

  // Singular factor: exp(-sum s_j (1 + 2 sum_k (z/zeta_j)^k)).
  if (!singular_.empty()) {
    std::vector<complex> expo(n_out + 1, complex(0.0));
    for (const auto& atom : singular_.atoms) {
      complex zeta = std::polar(1.0, atom.theta);
      expo[0] -= atom.mass;
      complex invz = 1.0 / zeta, p = invz;
      for (std::size_t k = 1; k <= n_out; ++k) {
        expo[k] -= 2.0 * atom.mass * p;
        p *= invz;
      }
    }
    acc = series_multiply(acc, series_exp(expo, n_out), n_out);
  }

  // Blaschke factors: (|a|/a)(a - z) * sum_k (conj(a) z)^k, or z for a = 0.
  for (const auto& zero : blaschke_.zeros) {
    std::vector<complex> f(n_out + 1, complex(0.0));
    if (zero.z == complex(0.0)) {
      if (n_out >= 1) f[1] = 1.0;
    } else {
      const complex a = zero.z;
      const complex ab = std::conj(a);
      const complex norm = std::abs(a) / a;
      f[0] = norm * a;
      complex pw(1.0, 0.0);
      for (std::size_t k = 1; k <= n_out; ++k) {
        f[k] = norm * (std::norm(a) - 1.0) * pw;
        pw *= ab;
      }
    }
    for (int rep = 0; rep < zero.multiplicity; ++rep) acc = series_multiply(acc, f, n_out);
  }

  for (auto& c : acc) c *= constant_;
  acc.resize(n_out + 1, complex(0.0));
  return acc;
}

}  // namespace wcospec
