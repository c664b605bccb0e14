#include "wcospec/verification.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "wcospec/fft.hpp"

namespace wcospec {

namespace {

std::size_t effective_degree(const std::vector<complex>& series) {
  double peak = 0.0;
  for (const auto& c : series) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return 0;
  std::size_t d = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (std::abs(series[i]) > 1e-15 * peak) d = i;
  }
  return d;
}

std::vector<complex> rotate_series(const std::vector<complex>& s, const EllipticAutomorphism& map,
                                   long power) {
  std::vector<complex> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = s[i] * map.eta_power(power * static_cast<long>(i));
  }
  return out;
}

double coeff_norm(const std::vector<complex>& s, double alpha) {
  AnalyticVector v;
  v.coeffs = s;
  return norm2_coefficient(v, alpha);
}

// psi_(j) series and the products T_j = psi_(j) * (g o phi_{j-k}).
struct TermTable {
  std::vector<std::vector<complex>> terms;  // T_j, j = 0..n_k-1
  std::vector<complex> psi_n;               // psi_(n_k)
};

TermTable build_terms(const WeightCocycle& cw, long k, long n_k, const AnalyticVector& g,
                      std::size_t n_out) {
  TermTable t;
  const std::vector<complex> psi = cw.weight.taylor(n_out);
  std::vector<complex> cocycle_series(1, complex(1.0));  // psi_(0)
  t.terms.reserve(static_cast<std::size_t>(n_k));
  for (long j = 0; j < n_k; ++j) {
    std::vector<complex> g_rot = rotate_series(g.coeffs, cw.map, j - k);
    t.terms.push_back(series_multiply(cocycle_series, g_rot, n_out));
    cocycle_series = series_multiply(cocycle_series, rotate_series(psi, cw.map, j), n_out);
  }
  t.psi_n = std::move(cocycle_series);
  return t;
}

struct LambdaWeights {
  std::vector<complex> w;  // lambda^{k-j-1}, globally scaled by e^{-shift}
  complex w_low;           // lambda^{k-n_k} e^{-shift}
  complex w_high;          // lambda^k e^{-shift}
  double shift = 0.0;
};

LambdaWeights lambda_weights(complex lambda, long k, long n_k) {
  if (lambda == complex(0.0)) throw invalid_input("approx_eigenfunction: lambda must be nonzero");
  const double lm = std::log(std::abs(lambda));
  const double max_e = std::max({(static_cast<double>(k) - 1.0) * lm,
                                 (static_cast<double>(k) - static_cast<double>(n_k)) * lm,
                                 static_cast<double>(k) * lm});
  LambdaWeights lw;
  lw.shift = max_e > 650.0 ? max_e - 650.0 : 0.0;
  auto power = [&](double e) {
    double mag = e * lm - lw.shift;
    if (mag > 700.0) throw evaluation_error("approx_eigenfunction: lambda powers overflow");
    return std::polar(std::exp(mag), std::arg(lambda) * e);
  };
  lw.w.resize(static_cast<std::size_t>(n_k));
  for (long j = 0; j < n_k; ++j) {
    lw.w[static_cast<std::size_t>(j)] = power(static_cast<double>(k - j - 1));
  }
  lw.w_low = power(static_cast<double>(k - n_k));
  lw.w_high = power(static_cast<double>(k));
  return lw;
}

std::vector<complex> assemble(const TermTable& t, const LambdaWeights& lw, std::size_t n_out) {
  std::vector<complex> f(n_out + 1, complex(0.0));
  for (std::size_t j = 0; j < t.terms.size(); ++j) {
    const auto& term = t.terms[j];
    const complex w = lw.w[j];
    for (std::size_t i = 0; i < term.size() && i <= n_out; ++i) f[i] += w * term[i];
  }
  return f;
}

// ||(C - lambda) f - [w_low psi_(n)(g o phi_{n-k}) - w_high (g o phi_{-k})]||,
// and optionally ||(C - lambda) f|| itself.
double telescoping_defect(const WeightCocycle& cw, const TermTable& t, const LambdaWeights& lw,
                          complex lambda, long k, long n_k, const AnalyticVector& g,
                          const std::vector<complex>& f, std::size_t n_out, double alpha,
                          double* residual_norm) {
  AnalyticVector fv;
  fv.coeffs = f;
  ApplyResult cf = apply_wco(cw, fv, n_out);
  std::vector<complex> lhs = cf.coeffs.coeffs;
  for (std::size_t i = 0; i < lhs.size() && i < f.size(); ++i) lhs[i] -= lambda * f[i];

  std::vector<complex> rhs =
      series_multiply(t.psi_n, rotate_series(g.coeffs, cw.map, n_k - k), n_out);
  std::vector<complex> g_back = rotate_series(g.coeffs, cw.map, -k);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    complex b = (i < g_back.size()) ? g_back[i] : complex(0.0);
    rhs[i] = lw.w_low * rhs[i] - lw.w_high * b;
  }

  std::vector<complex> diff(n_out + 1, complex(0.0));
  for (std::size_t i = 0; i <= n_out; ++i) {
    complex l = (i < lhs.size()) ? lhs[i] : complex(0.0);
    complex r = (i < rhs.size()) ? rhs[i] : complex(0.0);
    diff[i] = l - r;
  }
  if (residual_norm) *residual_norm = coeff_norm(lhs, alpha);
  return coeff_norm(diff, alpha);
}

}  // namespace

AnalyticVector approx_eigenfunction(const WeightCocycle& cw, complex lambda, long k, long n_k,
                                    const AnalyticVector& g, std::size_t n_out) {
  if (cw.map.fixed_point() != complex(0.0))
    throw invalid_input("approx_eigenfunction: map must be a rotation; conjugate first");
  if (!(n_k > k && k >= 1)) throw invalid_input("approx_eigenfunction: need n_k > k >= 1");

  TermTable t = build_terms(cw, k, n_k, g, n_out);
  LambdaWeights lw = lambda_weights(lambda, k, n_k);
  std::vector<complex> f = assemble(t, lw, n_out);

  double fnorm = coeff_norm(f, 0.0);
  double defect = telescoping_defect(cw, t, lw, lambda, k, n_k, g, f, n_out, 0.0, nullptr);
  if (!(defect <= 1e-8 * std::max(fnorm, 1e-300)))
    throw evaluation_error("approx_eigenfunction: telescoping self-check failed (truncation)");

  AnalyticVector out;
  out.coeffs = std::move(f);
  return out;
}

namespace {

// Smallest dist(n t, Z) over 2k < n <= cap: at a near-recurrence time the two
// telescoped boundary terms nearly align and a good lambda phase cancels them.
long near_recurrence_n(double t, long k, long cap) {
  long best = 2 * k + 1;
  double best_d = 2.0;
  for (long n = 2 * k + 1; n <= std::max(cap, 2 * k + 1); ++n) {
    double d = dist_to_integer(static_cast<double>(n) * t);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

// ((1 + conj(zeta) z)/2)^N with zeta = e^{i theta}: binomials via lgamma.
AnalyticVector peak_function(double theta, std::size_t n_peak) {
  AnalyticVector g;
  g.coeffs.resize(n_peak + 1);
  const double logn = std::lgamma(static_cast<double>(n_peak) + 1.0);
  for (std::size_t j = 0; j <= n_peak; ++j) {
    double lb = logn - std::lgamma(static_cast<double>(j) + 1.0) -
                std::lgamma(static_cast<double>(n_peak - j) + 1.0) -
                static_cast<double>(n_peak) * std::log(2.0);
    g.coeffs[j] = std::polar(std::exp(lb), -theta * static_cast<double>(j));
  }
  return g;
}

}  // namespace

namespace {

// One (k, radius) scan cell: f is assembled for all phase candidates in a
// single streamed pass over j, with the cocycle series kept magnitude-
// normalized as M_j = psi_(j) / R^j so deep near-recurrence times stay in
// range.  The returned f carries an overall scale R^{k-1}, which the residual
// ratio cancels.
ResidualRecord scan_cell(const WeightCocycle& cw, const BergmanParams& params, double big_r,
                         long k, long n_k, const AnalyticVector& g, double peak_theta,
                         int phase_count, std::size_t n_out) {
  ResidualRecord rec;
  rec.k = k;
  rec.n_k = n_k;
  rec.peak_angle = peak_theta;
  rec.peak_power = g.degree();
  rec.residual = std::numeric_limits<double>::infinity();

  const std::vector<complex> psi = cw.weight.taylor(n_out);
  std::vector<std::vector<complex>> f(static_cast<std::size_t>(phase_count),
                                      std::vector<complex>(n_out + 1, complex(0.0)));
  std::vector<complex> m_series(1, complex(1.0));  // psi_(j) / R^j
  for (long j = 0; j < n_k; ++j) {
    std::vector<complex> term =
        series_multiply(m_series, rotate_series(g.coeffs, cw.map, j - k), n_out);
    for (int s = 0; s < phase_count; ++s) {
      const double phase = kTwoPi * static_cast<double>(s) / static_cast<double>(phase_count);
      // lambda^{k-j-1} psi_(j) = R^{k-1} e^{i phase (k-j-1)} M_j: after
      // dropping the global R^{k-1}, the per-term weight is a pure phase.
      const complex w = std::polar(1.0, phase * static_cast<double>(k - j - 1));
      auto& acc = f[static_cast<std::size_t>(s)];
      for (std::size_t i = 0; i < term.size(); ++i) acc[i] += w * term[i];
    }
    std::vector<complex> next = series_multiply(m_series, rotate_series(psi, cw.map, j), n_out);
    const double inv_r = 1.0 / big_r;
    for (auto& c : next) c *= inv_r;
    m_series = std::move(next);
  }

  // Telescoped boundary terms at the same scale (f ~ f_true / R^{k-1}):
  //   rhs_s = R e^{i phase (k - n_k)} M_{n_k} (g o phi_{n_k - k})
  //           - R e^{i phase k} (g o phi_{-k}).
  std::vector<complex> tail =
      series_multiply(m_series, rotate_series(g.coeffs, cw.map, n_k - k), n_out);
  std::vector<complex> g_back = rotate_series(g.coeffs, cw.map, -k);

  bool any_ok = false;
  for (int s = 0; s < phase_count; ++s) {
    const double phase = kTwoPi * static_cast<double>(s) / static_cast<double>(phase_count);
    const complex lambda = std::polar(big_r, phase);
    const auto& fs = f[static_cast<std::size_t>(s)];
    double fnorm = coeff_norm(fs, params.alpha);
    if (!(fnorm > 1e-300)) continue;

    AnalyticVector fv;
    fv.coeffs = fs;
    ApplyResult cf = apply_wco(cw, fv, n_out);
    std::vector<complex> lhs = cf.coeffs.coeffs;
    for (std::size_t i = 0; i < lhs.size() && i < fs.size(); ++i) lhs[i] -= lambda * fs[i];
    double residual = coeff_norm(lhs, params.alpha) / fnorm;

    const complex w_low = big_r * std::polar(1.0, phase * static_cast<double>(k - n_k));
    const complex w_high = big_r * std::polar(1.0, phase * static_cast<double>(k));
    std::vector<complex> diff(n_out + 1, complex(0.0));
    for (std::size_t i = 0; i <= n_out; ++i) {
      complex l = (i < lhs.size()) ? lhs[i] : complex(0.0);
      complex r1 = (i < tail.size()) ? w_low * tail[i] : complex(0.0);
      complex r2 = (i < g_back.size()) ? w_high * g_back[i] : complex(0.0);
      diff[i] = l - (r1 - r2);
    }
    bool ok = coeff_norm(diff, params.alpha) <= 1e-8 * fnorm;
    any_ok = any_ok || ok;
    if (residual < rec.residual) {
      rec.residual = residual;
      rec.lambda = lambda;
      rec.inconclusive = !ok;
    }
  }
  if (!any_ok) rec.inconclusive = true;
  return rec;
}

}  // namespace

std::vector<ResidualRecord> residual_scan(const WeightCocycle& cw_in, const BergmanParams& params,
                                          const std::vector<double>& radii,
                                          const ResidualScanSettings& settings) {
  params.validate();
  if (radii.empty()) throw invalid_input("residual_scan: no radii");
  WeightCocycle cw = conjugate_to_rotation(cw_in);
  if (cw.map.order()) throw finite_order_out_of_scope("residual_scan: finite-order map");

  const double t = cw.map.angle01();
  std::vector<ResidualRecord> records;

  for (long k : settings.k_schedule) {
    if (k < 1) throw invalid_input("residual_scan: k must be >= 1");
    const long n_k = settings.fixed_n ? 2 * k + 1 : near_recurrence_n(t, k, settings.n_cap);
    const auto n_peak = std::min<std::size_t>(
        4 * static_cast<std::size_t>(k) * static_cast<std::size_t>(k), settings.peak_power_cap);

    // Peak point: grid maximizer of |psi_(k)|, i.e. of the Birkhoff sum of
    // the boundary log-modulus.
    const std::size_t m = settings.boundary_grid;
    std::vector<double> sums(m, 0.0);
    parallel_for(m, [&](std::size_t j) {
      double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
      double acc = 0.0;
      for (long i = 0; i < k; ++i) {
        acc += cw.weight.boundary_log_modulus(theta +
                                              kTwoPi * wrap_unit(static_cast<double>(i) * t));
      }
      sums[j] = acc;
    });
    std::size_t best_j = 0;
    for (std::size_t j = 1; j < m; ++j)
      if (sums[j] > sums[best_j]) best_j = j;
    const double best_theta = kTwoPi * static_cast<double>(best_j) / static_cast<double>(m);

    AnalyticVector g = peak_function(best_theta, n_peak);
    const std::size_t dpsi = effective_degree(cw.weight.taylor(256));
    const std::size_t n_out = n_peak + std::min<std::size_t>(
                                           static_cast<std::size_t>(n_k) *
                                               std::max<std::size_t>(dpsi, 1),
                                           4 * static_cast<std::size_t>(n_k) + 256);

    for (double big_r : radii) {
      records.push_back(scan_cell(cw, params, big_r, k, n_k, g, best_theta,
                                  settings.phase_count, n_out));
    }
  }
  return records;
}

double smallest_singular_value(const Eigen::MatrixXcd& mat, complex lambda) {
  const Eigen::Index n = mat.rows();
  Eigen::MatrixXcd shifted = mat;
  shifted.diagonal().array() -= lambda;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);

  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = complex(1.0 + 0.01 * static_cast<double>(i % 7), 0.003 * static_cast<double>(i % 5));
  v.normalize();

  double est = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    Eigen::VectorXcd w = lu.adjoint().solve(v);
    w = lu.solve(w);
    double growth = w.norm();
    if (!std::isfinite(growth)) return 0.0;
    if (growth == 0.0) return 0.0;
    double next = 1.0 / std::sqrt(growth);
    v = w / growth;
    if (iter > 2 && std::abs(next - est) <= 1e-13 * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

double operator_norm_2(const Eigen::MatrixXcd& mat) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat);
  return svd.singularValues()(0);
}

PseudospectrumField pseudospectrum(const Eigen::MatrixXcd& mat, const std::vector<double>& radii,
                                   const std::vector<double>& angles) {
  if (mat.rows() > 513) throw invalid_input("pseudospectrum: matrix too large (max 513)");
  PseudospectrumField field;
  field.radii = radii;
  field.angles = angles;
  field.sigma_min.resize(static_cast<Eigen::Index>(radii.size()),
                         static_cast<Eigen::Index>(angles.size()));
  const std::size_t total = radii.size() * angles.size();
  std::vector<double> values(total);
  parallel_for(total, [&](std::size_t idx) {
    std::size_t ri = idx / angles.size();
    std::size_t ai = idx % angles.size();
    values[idx] = smallest_singular_value(mat, std::polar(radii[ri], angles[ai]));
  });
  for (std::size_t idx = 0; idx < total; ++idx) {
    field.sigma_min(static_cast<Eigen::Index>(idx / angles.size()),
                    static_cast<Eigen::Index>(idx % angles.size())) = values[idx];
  }
  return field;
}

void gauss_legendre_01(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 2) throw invalid_input("gauss_legendre_01: order must be >= 2");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n - 1));
  for (std::size_t k = 1; k < n; ++k) {
    double kk = static_cast<double>(k);
    sub(static_cast<Eigen::Index>(k - 1)) = kk / std::sqrt(4.0 * kk * kk - 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub);
  nodes.resize(n);
  weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    nodes[k] = 0.5 * (solver.eigenvalues()(static_cast<Eigen::Index>(k)) + 1.0);
    weights[k] = solver.eigenvectors()(0, static_cast<Eigen::Index>(k)) *
                 solver.eigenvectors()(0, static_cast<Eigen::Index>(k));
  }
}

MassCheckResult annulus_mass_check(const AnalyticVector& f, double big_r,
                                   const BergmanParams& params) {
  params.validate();
  if (!(big_r > 0.0 && big_r < 1.0)) throw invalid_input("annulus_mass_check: R must be in (0,1)");
  double peak = 0.0;
  for (const auto& c : f.coeffs) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) throw invalid_input("annulus_mass_check: f must be nonzero");

  const double alpha = params.alpha;
  const double p = params.p;
  const std::size_t deg = f.degree();
  const std::size_t angular = std::max<std::size_t>(256, 2 * deg + 8);

  auto angular_mean_p = [&](double r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < angular; ++j) {
      double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(angular);
      acc += std::pow(std::abs(f.eval(std::polar(r, theta))), p);
    }
    return acc / static_cast<double>(angular);
  };

  // I1 over [0, R]: the weight is smooth there, plain Gauss-Legendre.
  const std::size_t order = std::max<std::size_t>(96, deg + 8);
  std::vector<double> gn, gw;
  gauss_legendre_01(order, gn, gw);
  double i1 = 0.0;
  for (std::size_t i = 0; i < order; ++i) {
    double r = big_r * gn[i];
    i1 += gw[i] * big_r * angular_mean_p(r) * std::pow(1.0 - r * r, alpha) * r;
  }
  i1 *= 2.0 * (1.0 + alpha);

  // I2 over [R, 1]: u = 1 - r^2 absorbs the edge weight into Gauss-Jacobi.
  //   int_R^1 F(r)(1-r^2)^a r dr = (1/2) int_0^{S} F(sqrt(1-u)) u^a du, S = 1-R^2.
  std::vector<double> jn, jw;
  gauss_jacobi_01(order, alpha, jn, jw);
  const double span = 1.0 - big_r * big_r;
  double i2 = 0.0;
  for (std::size_t i = 0; i < order; ++i) {
    double u = span * (1.0 - jn[i]);  // (1-t)^alpha on [0,1] -> u^alpha on [0,S]
    double r = std::sqrt(1.0 - u);
    i2 += jw[i] * angular_mean_p(r);
  }
  i2 *= std::pow(span, alpha + 1.0) * 0.5 * 2.0 * (1.0 + alpha);

  MassCheckResult res;
  res.i1 = i1;
  res.i2 = i2;
  const double rp = (big_r + 1.0) / 2.0;
  res.c_const = std::pow(1.0 - rp * rp, alpha) * (rp - big_r);
  const double fp = i1 + i2;
  res.ratio = res.i2 * (1.0 + res.c_const) / (res.c_const * fp);
  res.pass = res.ratio >= 1.0 - 1e-6;
  return res;
}

double lower_bound_sample(const WeightCocycle& cw, complex lambda, const BergmanParams& params,
                          int trials, std::uint64_t seed, std::size_t max_degree) {
  params.validate();
  if (trials < 1) throw invalid_input("lower_bound_sample: trials must be >= 1");
  Rng rng(seed);
  const std::size_t dpsi = effective_degree(cw.weight.taylor(256));
  const std::size_t n_out = max_degree + std::min<std::size_t>(dpsi + 8, 512);

  double best = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    AnalyticVector f;
    f.coeffs.resize(max_degree + 1);
    for (auto& c : f.coeffs) c = rng.gaussian();
    ApplyResult cf = apply_wco(cw, f, n_out);
    std::vector<complex> diff = cf.coeffs.coeffs;
    for (std::size_t i = 0; i < diff.size(); ++i) {
      complex fv = (i < f.coeffs.size()) ? f.coeffs[i] : complex(0.0);
      diff[i] -= lambda * fv;
    }
    double num, den;
    if (params.p == 2.0) {
      num = coeff_norm(diff, params.alpha);
      den = norm2_coefficient(f, params.alpha);
    } else {
      DiskQuadrature quad(128, std::max<std::size_t>(512, 2 * n_out + 8), params.alpha);
      AnalyticVector dv;
      dv.coeffs = diff;
      num = norm(dv, params, quad);
      den = norm(f, params, quad);
    }
    best = std::min(best, num / den);
  }
  return best;
}

}  // namespace wcospec
