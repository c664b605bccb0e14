#include "wcospec/cli_run.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "wcospec/acceptance.hpp"
#include "wcospec/verification.hpp"

namespace wcospec {

namespace {

namespace fs = std::filesystem;

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw evaluation_error("cannot write " + tmp.string());
    out << contents;
  }
  fs::rename(tmp, path);
}

void write_report(const JobConfig& cfg, nlohmann::json body) {
  body["schema"] = 1;
  body["task"] = to_string(cfg.task);
  body["timestamp"] = utc_timestamp();
  if (!cfg.weight_desc.is_null()) body["weight"] = cfg.weight_desc;
  if (cfg.map_desc) body["map"] = *cfg.map_desc;
  body["space"] = {{"p", cfg.space.p}, {"alpha", cfg.space.alpha}};
  fs::create_directories(cfg.output_dir);
  write_atomic(fs::path(cfg.output_dir) / "report.json", body.dump(2) + "\n");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const JobConfig& cfg, const std::string& name, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += num(row[i]);
    }
    out += "\n";
  }
  fs::create_directories(cfg.output_dir);
  write_atomic(fs::path(cfg.output_dir) / name, out);
}

RadiusSettings radius_settings(const Knobs& k) {
  RadiusSettings s;
  s.schedule = k.schedule;
  s.grid_m = k.boundary_grid;
  s.envelope_window = k.envelope_window;
  return s;
}

nlohmann::json radius_estimate_json(const RadiusEstimate& e) {
  nlohmann::json seq = nlohmann::json::array();
  for (const auto& [n, v] : e.sequence) seq.push_back({{"n", n}, {"estimate", v}});
  return {{"value", e.value},
          {"sequence", seq},
          {"lower_bounds", {{"v_at_a", e.v_at_a}, {"v_starstar_at_a", e.v_starstar_at_a}}},
          {"upper_bound", e.v_star_at_a},
          {"tolerance", e.tolerance},
          {"monotone_decreasing", e.monotone_decreasing},
          {"oscillating", e.oscillating},
          {"window_sensitive", e.window_sensitive}};
}

// Refusal report for non-elliptic maps; exit code 2.
int refuse_non_elliptic(const JobConfig& cfg, const NonEllipticReport& rep) {
  nlohmann::json j;
  j["refusal"] = rep.kind == NonEllipticReport::Kind::parabolic ? "not_elliptic_parabolic"
                                                                : "not_elliptic_hyperbolic";
  j["fixed_points"] = {{rep.fixed1.real(), rep.fixed1.imag()},
                       {rep.fixed2.real(), rep.fixed2.imag()}};
  write_report(cfg, j);
  return 2;
}

int run_factor(const JobConfig& cfg) {
  HInfFunction w = build_weight(cfg.weight_desc, cfg.knobs, kGoldenAngle);
  nlohmann::json j;
  nlohmann::json zeros = nlohmann::json::array();
  for (const auto& z : w.blaschke().zeros)
    zeros.push_back({z.z.real(), z.z.imag(), z.multiplicity});
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : w.singular().atoms) atoms.push_back({a.theta, a.mass});
  j["factorization"] = {
      {"blaschke_zeros", zeros},
      {"singular_atoms", atoms},
      {"boundary_zero_angles", w.boundary_zero_angles()},
      {"ess_inf_boundary_modulus", w.ess_inf_boundary_modulus()},
      {"outer_modulus_at_zero", w.outer_modulus_at_zero()},
      {"unimodular_constant",
       {w.unimodular_constant().real(), w.unimodular_constant().imag()}},
      {"zeros_in_disk", w.zeros_in_disk()},
      {"zeros_on_shilov", w.zeros_on_shilov()},
      {"singular_present", w.singular_present()},
  };
  write_report(cfg, j);
  return 0;
}

int run_radius(const JobConfig& cfg, const WeightCocycle& cw) {
  RadiusSettings s = radius_settings(cfg.knobs);
  RadiusEstimate rho = rho_estimate(cw, s);
  InnerRadiusEstimate rin = r_estimate(cw, s);

  nlohmann::json j;
  j["rho"] = radius_estimate_json(rho);
  nlohmann::json rseq = nlohmann::json::array();
  for (const auto& [n, v] : rin.sequence) rseq.push_back({{"n", n}, {"inf_estimate", v}});
  j["r"] = {{"value", rin.value},
            {"closed_form_used", rin.closed_form_used},
            {"shilov_zero", rin.shilov_zero},
            {"bracket", {rin.bracket_lo, rin.bracket_hi}},
            {"disk_inf_sequence", rseq}};
  write_report(cfg, j);

  std::vector<std::vector<double>> rows;
  for (const auto& [n, v] : rho.sequence) rows.push_back({static_cast<double>(n), v});
  write_csv(cfg, "radius_sequence.csv", "n,estimate", rows);
  rows.clear();
  for (const auto& [n, v] : rin.sequence) rows.push_back({static_cast<double>(n), v});
  write_csv(cfg, "r_sequence.csv", "n,inf_estimate", rows);
  return 0;
}

int run_spectrum(const JobConfig& cfg, const WeightCocycle& cw) {
  ClassifySettings s;
  s.radius = radius_settings(cfg.knobs);
  SpectrumReport rep = classify(cw, cfg.space, s);
  write_report(cfg, rep.to_json());
  return rep.case_tag == CaseTag::finite_order_refused ? 2 : 0;
}

int run_residual(const JobConfig& cfg, const WeightCocycle& cw) {
  std::vector<double> radii = cfg.knobs.radii;
  if (radii.empty()) {
    radii.push_back(rho_estimate(cw, radius_settings(cfg.knobs)).value);
  }
  ResidualScanSettings s;
  s.k_schedule = cfg.knobs.k_schedule;
  s.boundary_grid = cfg.knobs.boundary_grid;
  std::vector<ResidualRecord> records = residual_scan(cw, cfg.space, radii, s);

  nlohmann::json j;
  nlohmann::json recs = nlohmann::json::array();
  long largest_k = 0;
  double residual_at_largest = 0.0;
  bool any_inconclusive = false;
  for (const auto& r : records) {
    recs.push_back({{"lambda", {r.lambda.real(), r.lambda.imag()}},
                    {"k", r.k},
                    {"n_k", r.n_k},
                    {"residual", r.residual},
                    {"peak_angle", r.peak_angle},
                    {"peak_power", r.peak_power},
                    {"inconclusive", r.inconclusive}});
    if (r.k >= largest_k) {
      largest_k = r.k;
      residual_at_largest = std::max(residual_at_largest, r.residual);
    }
    any_inconclusive = any_inconclusive || r.inconclusive;
  }
  j["records"] = recs;
  j["gates"] = {{"largest_k", largest_k},
                {"worst_residual_at_largest_k", residual_at_largest},
                {"threshold", 0.25},
                {"pass", residual_at_largest < 0.25},
                {"inconclusive_runs", any_inconclusive}};
  write_report(cfg, j);

  std::vector<std::vector<double>> rows;
  for (const auto& r : records)
    rows.push_back({r.lambda.real(), r.lambda.imag(), r.residual});
  write_csv(cfg, "residuals.csv", "re,im,value", rows);
  return 0;
}

int run_pseudospec(const JobConfig& cfg, const WeightCocycle& cw_in) {
  WeightCocycle cw = conjugate_to_rotation(cw_in);
  const std::size_t n = std::min<std::size_t>(cfg.knobs.truncation, 512);
  Eigen::MatrixXcd mat = wco_matrix(cw.weight, cw.map, n, cfg.space.alpha);

  double r_max = cfg.knobs.pseudo_r_max;
  if (r_max <= 0.0) r_max = 1.25 * operator_norm_2(mat);
  std::vector<double> radii, angles;
  for (std::size_t i = 1; i <= cfg.knobs.pseudo_radii; ++i)
    radii.push_back(r_max * static_cast<double>(i) / static_cast<double>(cfg.knobs.pseudo_radii));
  for (std::size_t i = 0; i < cfg.knobs.pseudo_angles; ++i)
    angles.push_back(kTwoPi * static_cast<double>(i) /
                     static_cast<double>(cfg.knobs.pseudo_angles));

  PseudospectrumField field = pseudospectrum(mat, radii, angles);

  double smin = field.sigma_min.minCoeff(), smax = field.sigma_min.maxCoeff();
  nlohmann::json diag = nlohmann::json::array();
  for (std::size_t k = 0; k <= n; ++k) {
    complex d = mat(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    diag.push_back({d.real(), d.imag()});
  }
  nlohmann::json j;
  j["truncation"] = n;
  j["r_max"] = r_max;
  j["sigma_min_range"] = {smin, smax};
  // The triangular truncation's own eigenvalues; they do not fill the true
  // spectrum, which is why the sigma_min field is the diagnostic of record.
  j["finite_section_eigenvalues"] = diag;
  write_report(cfg, j);

  std::vector<std::vector<double>> rows;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    for (std::size_t ai = 0; ai < angles.size(); ++ai) {
      complex lambda = std::polar(radii[ri], angles[ai]);
      rows.push_back({lambda.real(), lambda.imag(),
                      field.sigma_min(static_cast<Eigen::Index>(ri),
                                      static_cast<Eigen::Index>(ai))});
    }
  }
  write_csv(cfg, "pseudospectrum.csv", "re,im,value", rows);
  return 0;
}

int run_birkhoff(const JobConfig& cfg, double map_angle) {
  auto f = build_observable(*cfg.observable, cfg.knobs, map_angle);
  const long n = cfg.knobs.birkhoff_n;
  double pointwise = birkhoff_average(f, map_angle, n, cfg.knobs.theta0);
  const std::size_t m = cfg.knobs.boundary_grid;
  BirkhoffGridResult grid = birkhoff_grid(f, map_angle, n, m);

  nlohmann::json j;
  j["n"] = n;
  j["theta0"] = cfg.knobs.theta0;
  j["pointwise_average"] = pointwise;
  j["grid_size"] = m;
  j["grid_sup"] = grid.sup;
  j["grid_inf"] = grid.inf;
  write_report(cfg, j);

  std::vector<std::vector<double>> rows;
  for (std::size_t jdx = 0; jdx < m; ++jdx) {
    double theta0 = kTwoPi * static_cast<double>(jdx) / static_cast<double>(m);
    rows.push_back({theta0, birkhoff_average(f, map_angle, n, theta0)});
  }
  write_csv(cfg, "birkhoff.csv", "theta0,average", rows);
  return 0;
}

int run_verify_all(const JobConfig& cfg) {
  std::vector<CriterionResult> results = run_acceptance(*cfg.knobs.seed);
  bool all_pass = true;
  nlohmann::json gates = nlohmann::json::array();
  std::printf("%-4s %-6s %-8s %s\n", "id", "status", "seconds", "description");
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%-4s %-6s %-8.2f %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                r.description.c_str());
    if (!r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
    gates.push_back({{"id", r.id},
                     {"description", r.description},
                     {"pass", r.pass},
                     {"detail", r.detail},
                     {"seconds", r.seconds}});
  }
  nlohmann::json j;
  j["gates"] = gates;
  j["all_pass"] = all_pass;
  write_report(cfg, j);
  return all_pass ? 0 : 4;
}

}  // namespace

int run_job(const JobConfig& cfg) {
  if (cfg.knobs.threads > 0) set_thread_count(cfg.knobs.threads);

  if (cfg.task == Task::verify_all) return run_verify_all(cfg);
  if (cfg.task == Task::factor) {
    if (cfg.weight_is_zero) throw config_error("weight: zero polynomial");
    return run_factor(cfg);
  }

  // All remaining tasks need the map.
  MapClassification mc = build_map(*cfg.map_desc);
  if (std::holds_alternative<NonEllipticReport>(mc)) {
    return refuse_non_elliptic(cfg, std::get<NonEllipticReport>(mc));
  }
  EllipticAutomorphism map = std::get<EllipticAutomorphism>(mc);

  if (cfg.task == Task::birkhoff) return run_birkhoff(cfg, map.angle01());

  if (cfg.weight_is_zero) {
    if (cfg.task == Task::spectrum) {
      write_report(cfg, degenerate_zero_weight_report().to_json());
      return 0;
    }
    throw config_error("weight: zero polynomial");
  }

  HInfFunction weight = build_weight(cfg.weight_desc, cfg.knobs, map.angle01());
  WeightCocycle cw{std::move(weight), map};

  try {
    switch (cfg.task) {
      case Task::radius: return run_radius(cfg, cw);
      case Task::spectrum: return run_spectrum(cfg, cw);
      case Task::residual: return run_residual(cfg, cw);
      case Task::pseudospec: return run_pseudospec(cfg, cw);
      default: break;
    }
  } catch (const finite_order_out_of_scope& e) {
    nlohmann::json j;
    j["refusal"] = "finite_order";
    j["message"] = e.what();
    if (auto q = map.order()) j["order"] = *q;
    write_report(cfg, j);
    return 2;
  }
  throw config_error("unhandled task");
}

}  // namespace wcospec
