#include "wcospec/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "wcospec/boundary_sets.hpp"
#include "wcospec/fft.hpp"
#include "wcospec/verification.hpp"

namespace wcospec {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[fail: " << what << "] ";
    }
  }
  void note(const std::string& s) { detail << s << " "; }
};

EllipticAutomorphism golden_rotation() {
  return EllipticAutomorphism::from_angle(complex(0.0), kGoldenAngle);
}

HInfFunction chi_weight(const std::vector<bool>& set) {
  return HInfFunction::outer_from_log_modulus(BoundaryLogModulus::from_char_set(set, 1.0, 0.0));
}

// C_{psi_(n), phi_n} f by direct sampling, oracle for the semigroup identity.
AnalyticVector direct_power_apply(const WeightCocycle& cw, long n, const AnalyticVector& f,
                                  std::size_t n_out, double r0) {
  std::size_t m = 4;
  while (m < 4 * (n_out + 1)) m <<= 1;
  std::vector<complex> samples(m);
  for (std::size_t j = 0; j < m; ++j) {
    complex z = std::polar(r0, kTwoPi * static_cast<double>(j) / static_cast<double>(m));
    samples[j] = cocycle_value(cw, n, z) * f.eval(cw.map.iterate(n, z));
  }
  fft_forward(samples);
  AnalyticVector out;
  out.coeffs.resize(n_out + 1);
  for (std::size_t k = 0; k <= n_out; ++k) {
    out.coeffs[k] = samples[k] / static_cast<double>(m) / std::pow(r0, static_cast<double>(k));
  }
  return out;
}

double vec_dist(const std::vector<complex>& a, const std::vector<complex>& b) {
  double acc = 0.0;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    complex x = i < a.size() ? a[i] : complex(0.0);
    complex y = i < b.size() ? b[i] : complex(0.0);
    acc += std::norm(x - y);
  }
  return std::sqrt(acc);
}

double vec_norm(const std::vector<complex>& a) {
  double acc = 0.0;
  for (const auto& c : a) acc += std::norm(c);
  return std::sqrt(acc);
}

CriterionResult a1_open_dense_annulus() {
  CriterionResult res{"A1",
                      "open dense chi_G weight: invertible annulus, inner in [e^.45, e^.55], "
                      "outer estimate >= e^.8, |v*(0)| = e within 1%, under 2 min",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;

  auto set = open_dense_rational_union(1u << 16, 0.5, kGoldenAngle, 64);
  WeightCocycle cw{chi_weight(set), golden_rotation()};
  ClassifySettings s;
  s.radius.grid_m = 1u << 16;
  s.radius.schedule = {8, 13, 21, 34, 55};  // Fibonacci times, all <= 64
  SpectrumReport rep = classify(cw, BergmanParams{2.0, 0.0}, s);

  c.expect(rep.case_tag == CaseTag::invertible_annulus, "case is invertible_annulus");
  const double r = rep.r_inner.value, rho = rep.rho.value;
  c.expect(r >= std::exp(0.45) && r <= std::exp(0.55), "inner radius in [e^.45, e^.55]");
  c.expect(rho >= std::exp(0.8), "outer radius estimate >= e^.8");
  const double vstar = rep.rho.bracket.hi;
  c.expect(std::abs(vstar - std::exp(1.0)) <= 0.01 * std::exp(1.0), "|v*(0)| within 1% of e");
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(res.seconds < 120.0, "runtime < 2 min");
  c.note("r=" + std::to_string(r) + " rho=" + std::to_string(rho) +
         " v*=" + std::to_string(vstar));
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a2_continuous_circle() {
  CriterionResult res{"A2", "psi = 2 + z: circle(2), both radii within 2% of 2, under 1 min",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  WeightCocycle cw{HInfFunction::factor({{2, 0}, {1, 0}}), golden_rotation()};
  SpectrumReport rep = classify(cw, BergmanParams{2.0, 0.0});
  c.expect(rep.case_tag == CaseTag::invertible_annulus, "case is invertible_annulus");
  c.expect(rep.sigma && rep.sigma->kind == Region::Kind::circle, "region merged to a circle");
  c.expect(std::abs(rep.rho.value - 2.0) <= 0.04, "rho within 2% of 2");
  c.expect(std::abs(rep.r_inner.value - 2.0) <= 0.04, "r within 2% of 2");
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(res.seconds < 60.0, "runtime < 1 min");
  c.note("rho=" + std::to_string(rep.rho.value) + " r=" + std::to_string(rep.r_inner.value));
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a3_shift_case() {
  CriterionResult res{"A3",
                      "psi = z (alpha in {0,1}): sigma_e = circle(1), sigma = disk(1) to 1e-6; "
                      "sigma_min(0.5) < 1e-6 and sigma_min(1.5) > 0.3 at N = 200",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  HInfFunction z_weight = HInfFunction::factor({{0, 0}, {1, 0}});
  WeightCocycle cw{z_weight, golden_rotation()};
  for (double alpha : {0.0, 1.0}) {
    SpectrumReport rep = classify(cw, BergmanParams{2.0, alpha});
    c.expect(rep.case_tag == CaseTag::disk_zero_mixed, "case is disk_zero_mixed");
    c.expect(rep.sigma_e && rep.sigma_e->kind == Region::Kind::circle, "sigma_e is circle");
    c.expect(rep.sigma && rep.sigma->kind == Region::Kind::disk, "sigma is disk");
    c.expect(std::abs(rep.rho.value - 1.0) <= 1e-6, "rho = 1 to 1e-6");
    c.expect(std::abs(rep.r_inner.value - 1.0) <= 1e-6, "r = 1 to 1e-6");
  }
  // Thresholds frozen after the recorded oracle run (see tests/acceptance
  // notes): measured sigma_min(0.5) ~ 4e-62, sigma_min(1.5) ~ 0.50 at N=200.
  Eigen::MatrixXcd mat = wco_matrix(z_weight, golden_rotation(), 200, 0.0);
  double s_inside = smallest_singular_value(mat, complex(0.5, 0.0));
  double s_outside = smallest_singular_value(mat, complex(1.5, 0.0));
  c.expect(s_inside < 1e-6, "sigma_min(0.5) < 1e-6");
  c.expect(s_outside > 0.3, "sigma_min(1.5) > 0.3");
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(res.seconds < 120.0, "runtime < 2 min");
  c.note("sigma_min(0.5)=" + std::to_string(s_inside) +
         " sigma_min(1.5)=" + std::to_string(s_outside));
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a4_boundary_zero_disk() {
  CriterionResult res{"A4", "psi = 1 - z: sigma = sigma_e = disk(1), radius bracket width < 2%",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  WeightCocycle cw{HInfFunction::factor({{1, 0}, {-1, 0}}), golden_rotation()};
  SpectrumReport rep = classify(cw, BergmanParams{2.0, 0.0});
  c.expect(rep.case_tag == CaseTag::shilov_zero_disk, "case is shilov_zero_disk");
  c.expect(rep.sigma && rep.sigma->kind == Region::Kind::disk, "sigma is disk");
  c.expect(rep.sigma_e && rep.sigma_e->kind == Region::Kind::disk, "sigma_e is disk");
  double width = (rep.rho.bracket.hi - rep.rho.bracket.lo) / rep.rho.value;
  c.expect(width < 0.02, "radius bracket width < 2%");
  c.note("rho=" + std::to_string(rep.rho.value) + " width=" + std::to_string(width));
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a5_monomial_norms() {
  CriterionResult res{"A5",
                      "monomial norms: coefficient formula vs quadrature, n <= 128, "
                      "alpha in {0, 1, 2.5}, relative error < 1e-8",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  double worst = 0.0;
  for (double alpha : {0.0, 1.0, 2.5}) {
    DiskQuadrature quad(160, 288, alpha);
    for (std::size_t n = 0; n <= 128; n += (n < 16 ? 1 : 7)) {
      double via_quad =
          norm([n](complex z) { return std::pow(z, static_cast<double>(n)); },
               BergmanParams{2.0, alpha}, quad);
      double via_formula = std::sqrt(monomial_norm_sq(n, alpha));
      double rel = std::abs(via_quad - via_formula) / via_formula;
      worst = std::max(worst, rel);
      c.expect(rel < 1e-8, "n=" + std::to_string(n) + " alpha=" + std::to_string(alpha));
    }
  }
  c.note("worst rel err=" + std::to_string(worst));
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a6_exact_identities(std::uint64_t seed) {
  CriterionResult res{"A6",
                      "exact identities at 1e-8: cocycle (100), telescoping (20), "
                      "phase averaging (10), semigroup (10), annulus mass (150)",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  Rng rng(seed);

  // Cocycle identity, 100 random (m, n, z) on two weights and two maps.
  {
    std::vector<HInfFunction> weights = {HInfFunction::factor({{2, 0}, {1, 0}}),
                                         HInfFunction::factor({{-1, 0}, {1.5, 0}, {1, 0}})};
    std::vector<EllipticAutomorphism> maps = {
        golden_rotation(), EllipticAutomorphism::from_angle(complex(0.2, -0.1), kGoldenAngle)};
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto& w = weights[trial % 2];
      const auto& mp = maps[(trial / 2) % 2];
      WeightCocycle cw{w, mp};
      long m = static_cast<long>(rng.next_u64() % 64);
      long n = static_cast<long>(rng.next_u64() % 64);
      complex z = rng.disk_point(0.9);
      CocycleValue lhs = cocycle(cw, m + n, z);
      CocycleValue rm = cocycle(cw, m, z);
      CocycleValue rn = cocycle(cw, n, mp.iterate(m, z));
      if (lhs.zero_hit || rm.zero_hit || rn.zero_hit) continue;
      if (std::abs(lhs.log_mag - rm.log_mag - rn.log_mag) > 1e-9) ++failures;
    }
    c.expect(failures == 0, "cocycle identity failures=" + std::to_string(failures));
  }

  // Telescoping identity, 20 random cases (defect check is built into
  // approx_eigenfunction; any violation throws).
  {
    int failures = 0;
    WeightCocycle cw{HInfFunction::factor({{2, 0}, {1, 0}}), golden_rotation()};
    for (int trial = 0; trial < 20; ++trial) {
      long k = 2 + static_cast<long>(rng.next_u64() % 6);
      long n_k = 2 * k + 1 + static_cast<long>(rng.next_u64() % 8);
      complex lambda = std::polar(0.7 + rng.uniform(), kTwoPi * rng.uniform());
      AnalyticVector g;
      g.coeffs.resize(1 + rng.next_u64() % 8);
      for (auto& cc : g.coeffs) cc = rng.gaussian();
      try {
        (void)approx_eigenfunction(cw, lambda, k, n_k, g,
                                   g.degree() + static_cast<std::size_t>(n_k) + 8);
      } catch (const evaluation_error&) {
        ++failures;
      }
    }
    c.expect(failures == 0, "telescoping failures=" + std::to_string(failures));
  }

  // Phase-averaging identity, 10 cases with n_k = 8.
  {
    int failures = 0;
    WeightCocycle cw{HInfFunction::factor({{2, 0}, {1, 0}}), golden_rotation()};
    for (int trial = 0; trial < 10; ++trial) {
      const long k = 3, n_k = 8;
      complex lambda = std::polar(0.8 + rng.uniform(), kTwoPi * rng.uniform());
      AnalyticVector g;
      g.coeffs.resize(1 + rng.next_u64() % 6);
      for (auto& cc : g.coeffs) cc = rng.gaussian();
      const std::size_t n_out = g.degree() + n_k + 8;
      std::vector<complex> acc(n_out + 1, complex(0.0));
      for (long s = 1; s <= n_k; ++s) {
        complex ls = lambda * std::polar(1.0, kTwoPi * static_cast<double>(s) /
                                                  static_cast<double>(n_k));
        AnalyticVector fs = approx_eigenfunction(cw, ls, k, n_k, g, n_out);
        for (std::size_t i = 0; i < fs.coeffs.size(); ++i) acc[i] += ls * fs.coeffs[i];
      }
      // n_k psi_(k) g
      std::vector<complex> psi = cw.weight.taylor(n_out);
      std::vector<complex> p(1, complex(1.0));
      for (long j = 0; j < k; ++j) {
        std::vector<complex> rot(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i)
          rot[i] = psi[i] * cw.map.eta_power(j * static_cast<long>(i));
        p = series_multiply(p, rot, n_out);
      }
      std::vector<complex> rhs = series_multiply(p, g.coeffs, n_out);
      for (auto& cc : rhs) cc *= static_cast<double>(n_k);
      if (vec_dist(acc, rhs) > 1e-8 * vec_norm(rhs)) ++failures;
    }
    c.expect(failures == 0, "phase-averaging failures=" + std::to_string(failures));
  }

  // Semigroup identity C^n = C_{psi_(n), phi_n}: 8 rotation cases in exact
  // arithmetic plus 2 elliptic cases through the sampling path.
  {
    int failures = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const bool elliptic = trial >= 8;
      complex a = elliptic ? complex(0.3, 0.1) : complex(0.0, 0.0);
      WeightCocycle cw{HInfFunction::factor({{2, 0}, {1, 0}}),
                       EllipticAutomorphism::from_angle(a, kGoldenAngle)};
      long n = 2 + static_cast<long>(rng.next_u64() % 4);
      AnalyticVector f;
      f.coeffs.resize(1 + rng.next_u64() % 12);
      for (auto& cc : f.coeffs) cc = rng.gaussian();
      const std::size_t n_out = 48;
      AnalyticVector lhs = f;
      for (long j = 0; j < n; ++j) lhs = apply_wco(cw, lhs, n_out).coeffs;
      AnalyticVector rhs = direct_power_apply(cw, n, f, n_out, 0.5);
      if (vec_dist(lhs.coeffs, rhs.coeffs) > 1e-8 * std::max(vec_norm(lhs.coeffs), 1e-300))
        ++failures;
    }
    c.expect(failures == 0, "semigroup failures=" + std::to_string(failures));
  }

  // Annulus mass inequality: 50 random polynomials x 3 radii, alpha in {0, 2}.
  {
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
      AnalyticVector f;
      f.coeffs.resize(1 + rng.next_u64() % 64);
      for (auto& cc : f.coeffs) cc = rng.gaussian();
      double alpha = (trial % 2 == 0) ? 0.0 : 2.0;
      for (double big_r : {0.3, 0.6, 0.9}) {
        MassCheckResult mc = annulus_mass_check(f, big_r, BergmanParams{2.0, alpha});
        if (!mc.pass) ++failures;
      }
    }
    c.expect(failures == 0, "mass-inequality failures=" + std::to_string(failures));
  }

  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a7_sandwich(std::uint64_t /*seed*/) {
  CriterionResult res{"A7",
                      "radius sandwich on the six-weight corpus: "
                      "max(|v(0)|,|v**(0)|) - 2% <= rho-hat <= |v*(0)| + 2%",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  auto corpus = six_weight_corpus(4096, kGoldenAngle);
  for (const auto& entry : corpus) {
    WeightCocycle cw{entry.weight, golden_rotation()};
    RadiusEstimate est = rho_estimate(cw, RadiusSettings{});
    bool lower_ok = est.value >= est.lower_bound() * 0.98;
    bool upper_ok = est.value <= est.upper_bound() * 1.02;
    c.expect(lower_ok && upper_ok,
             entry.name + ": value=" + std::to_string(est.value) + " in [" +
                 std::to_string(est.lower_bound()) + ", " + std::to_string(est.upper_bound()) +
                 "]");
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a8_conjugation_invariance() {
  CriterionResult res{"A8",
                      "conjugation invariance at a = 0.4 + 0.2i: radii and case of "
                      "(psi, elliptic) match (psi o phi_a, rotation) to 1e-9",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  const complex a(0.4, 0.2);
  for (const auto& coeffs :
       {std::vector<complex>{{2, 0}, {1, 0}}, std::vector<complex>{{0, 0}, {1, 0}}}) {
    HInfFunction psi = HInfFunction::factor(coeffs);
    WeightCocycle elliptic{psi, EllipticAutomorphism::from_angle(a, kGoldenAngle)};
    WeightCocycle rotated{psi.compose_mobius(a), golden_rotation()};
    SpectrumReport r1 = classify(elliptic, BergmanParams{2.0, 0.0});
    SpectrumReport r2 = classify(rotated, BergmanParams{2.0, 0.0});
    c.expect(r1.case_tag == r2.case_tag, "case tags match");
    c.expect(std::abs(r1.rho.value - r2.rho.value) <= 1e-9 * std::max(r1.rho.value, 1e-12),
             "rho matches to 1e-9");
    c.expect(std::abs(r1.r_inner.value - r2.r_inner.value) <=
                 1e-9 * std::max({r1.r_inner.value, 1.0}),
             "r matches to 1e-9");
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a9_open_case_honesty() {
  CriterionResult res{"A9",
                      "singular-atom weight: open flag set, sigma_e superset {0} U circle(1), "
                      "full disk never asserted",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  SingularInnerAtoms atoms;
  atoms.atoms.push_back({0.0, 1.0});
  HInfFunction psi = HInfFunction::from_components({}, atoms, BoundaryLogModulus::zero(4096),
                                                   complex(1.0, 0.0));
  WeightCocycle cw{psi, golden_rotation()};
  SpectrumReport rep = classify(cw, BergmanParams{2.0, 0.0});
  c.expect(rep.case_tag == CaseTag::open_case, "case is open_case");
  bool has_flag = false;
  for (const auto& f : rep.open_flags)
    if (f.find("open_case") != std::string::npos) has_flag = true;
  c.expect(has_flag, "open flag present");
  c.expect(rep.sigma_e && rep.sigma_e->kind == Region::Kind::partial,
           "sigma_e is a partial description (not a full disk)");
  if (rep.sigma_e) {
    c.expect(rep.sigma_e->contains_origin, "sigma_e contains 0");
    c.expect(std::abs(rep.sigma_e->inner - 1.0) <= 1e-6 &&
                 std::abs(rep.sigma_e->outer - 1.0) <= 1e-6,
             "certified annulus is the unit circle");
  }
  c.expect(rep.sigma && rep.sigma->kind == Region::Kind::partial, "sigma never asserts a disk");
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

CriterionResult a10_ergodic_sanity(std::uint64_t seed) {
  CriterionResult res{"A10",
                      "Birkhoff averages of log|2+e^{i theta}| at n = 1e5 within 1e-3 of log 2, "
                      "pointwise and as a 4096-grid sup",
                      false, "", 0.0};
  auto t0 = Clock::now();
  Checker c;
  auto f = [](double theta) { return std::log(std::abs(2.0 + std::polar(1.0, theta))); };
  Rng rng(seed);
  double theta0 = kTwoPi * rng.uniform();
  double avg = birkhoff_average(f, kGoldenAngle, 100000, theta0);
  c.expect(std::abs(avg - std::log(2.0)) <= 1e-3, "pointwise average within 1e-3 of log 2");
  BirkhoffGridResult grid = birkhoff_grid(f, kGoldenAngle, 100000, 4096);
  c.expect(std::abs(grid.sup - std::log(2.0)) <= 1e-3, "grid sup within 1e-3 of log 2");
  c.note("avg=" + std::to_string(avg) + " sup=" + std::to_string(grid.sup));
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.pass = c.ok;
  res.detail = c.detail.str();
  return res;
}

}  // namespace

std::vector<CorpusEntry> six_weight_corpus(std::size_t grid_m, double rotation_angle) {
  std::vector<CorpusEntry> corpus;
  corpus.push_back({"2+z", HInfFunction::factor({{2, 0}, {1, 0}}, grid_m),
                    CaseTag::invertible_annulus});
  corpus.push_back({"z", HInfFunction::factor({{0, 0}, {1, 0}}, grid_m),
                    CaseTag::disk_zero_mixed});
  corpus.push_back({"1-z", HInfFunction::factor({{1, 0}, {-1, 0}}, grid_m),
                    CaseTag::shilov_zero_disk});
  corpus.push_back({"chi_open_dense",
                    chi_weight(open_dense_rational_union(grid_m, 0.5, rotation_angle, 64)),
                    CaseTag::invertible_annulus});
  corpus.push_back({"chi_fat_cantor", chi_weight(fat_cantor_set(grid_m, 0.5)),
                    CaseTag::invertible_annulus});
  corpus.push_back({"(z-1/2)(z+2)",
                    HInfFunction::factor({{-1, 0}, {1.5, 0}, {1, 0}}, grid_m),
                    CaseTag::disk_zero_mixed});
  return corpus;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(a1_open_dense_annulus());
  out.push_back(a2_continuous_circle());
  out.push_back(a3_shift_case());
  out.push_back(a4_boundary_zero_disk());
  out.push_back(a5_monomial_norms());
  out.push_back(a6_exact_identities(seed));
  out.push_back(a7_sandwich(seed));
  out.push_back(a8_conjugation_invariance());
  out.push_back(a9_open_case_honesty());
  out.push_back(a10_ergodic_sanity(seed));
  return out;
}

}  // namespace wcospec
