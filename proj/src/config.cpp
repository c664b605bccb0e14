#include "wcospec/config.hpp"

#include <fstream>
#include <set>

#include "wcospec/boundary_sets.hpp"
#include "wcospec/fft.hpp"

namespace wcospec {

std::string to_string(Task t) {
  switch (t) {
    case Task::factor: return "factor";
    case Task::radius: return "radius";
    case Task::spectrum: return "spectrum";
    case Task::residual: return "residual";
    case Task::pseudospec: return "pseudospec";
    case Task::birkhoff: return "birkhoff";
    case Task::verify_all: return "verify-all";
  }
  return "unknown";
}

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) throw config_error(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw config_error(where + ": unknown key \"" + key + "\"");
  }
}

complex parse_complex(const nlohmann::json& j, const std::string& where) {
  if (j.is_number()) return complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return complex(j[0].get<double>(), j[1].get<double>());
  throw config_error(where + ": expected a number or [re, im]");
}

std::vector<complex> parse_coeffs(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw config_error(where + ": expected a nonempty array");
  std::vector<complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(parse_complex(e, where));
  return out;
}

Task parse_task(const std::string& s) {
  if (s == "factor") return Task::factor;
  if (s == "radius") return Task::radius;
  if (s == "spectrum") return Task::spectrum;
  if (s == "residual") return Task::residual;
  if (s == "pseudospec") return Task::pseudospec;
  if (s == "birkhoff") return Task::birkhoff;
  if (s == "verify-all") return Task::verify_all;
  throw config_error("unknown task \"" + s + "\"");
}

Knobs parse_knobs(const nlohmann::json& j) {
  check_keys(j, {"M", "N", "Q", "schedule", "envelope_window", "seed", "radii", "k_schedule",
                 "lambda", "trials", "pseudo_radii", "pseudo_angles", "pseudo_r_max",
                 "birkhoff_n", "theta0", "threads"},
             "knobs");
  Knobs k;
  if (j.contains("M")) k.boundary_grid = j["M"].get<std::size_t>();
  if (j.contains("N")) k.truncation = j["N"].get<std::size_t>();
  if (j.contains("Q")) k.quadrature = j["Q"].get<std::size_t>();
  if (j.contains("schedule")) k.schedule = j["schedule"].get<std::vector<long>>();
  if (j.contains("envelope_window")) k.envelope_window = j["envelope_window"].get<std::size_t>();
  if (j.contains("seed")) k.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("radii")) k.radii = j["radii"].get<std::vector<double>>();
  if (j.contains("k_schedule")) k.k_schedule = j["k_schedule"].get<std::vector<long>>();
  if (j.contains("lambda")) k.lambda = parse_complex(j["lambda"], "knobs.lambda");
  if (j.contains("trials")) k.trials = j["trials"].get<int>();
  if (j.contains("pseudo_radii")) k.pseudo_radii = j["pseudo_radii"].get<std::size_t>();
  if (j.contains("pseudo_angles")) k.pseudo_angles = j["pseudo_angles"].get<std::size_t>();
  if (j.contains("pseudo_r_max")) k.pseudo_r_max = j["pseudo_r_max"].get<double>();
  if (j.contains("birkhoff_n")) k.birkhoff_n = j["birkhoff_n"].get<long>();
  if (j.contains("theta0")) k.theta0 = j["theta0"].get<double>();
  if (j.contains("threads")) k.threads = j["threads"].get<unsigned>();

  if (!is_power_of_two(k.boundary_grid) || k.boundary_grid < 16)
    throw config_error("knobs.M: must be a power of two, >= 16");
  if (k.truncation > AnalyticVector::kDefaultMaxDegree)
    throw config_error("knobs.N: exceeds the maximum truncation 4096");
  if (k.quadrature < 2 || k.quadrature > 4096) throw config_error("knobs.Q: out of range [2, 4096]");
  if (k.trials < 1 || k.trials > 100000) throw config_error("knobs.trials: out of range");
  for (long n : k.schedule)
    if (n < 1 || n > (1 << 20)) throw config_error("knobs.schedule: entries must be in [1, 2^20]");
  for (long kk : k.k_schedule)
    if (kk < 1 || kk > 4096) throw config_error("knobs.k_schedule: entries must be in [1, 4096]");
  return k;
}

void validate_weight_desc(const nlohmann::json& j) {
  check_keys(j, {"type", "coeffs", "blaschke_zeros", "singular_atoms", "outer_log_modulus",
                 "constant"},
             "weight");
  if (!j.contains("type")) throw config_error("weight: missing \"type\"");
  const std::string type = j["type"].get<std::string>();
  if (type == "polynomial") {
    if (!j.contains("coeffs")) throw config_error("weight: polynomial needs \"coeffs\"");
    for (const auto& key : {"blaschke_zeros", "singular_atoms", "outer_log_modulus", "constant"})
      if (j.contains(key)) throw config_error(std::string("weight: \"") + key +
                                              "\" is not a polynomial-weight key");
  } else if (type == "components") {
    if (j.contains("coeffs")) throw config_error("weight: \"coeffs\" is not a components key");
    if (j.contains("outer_log_modulus")) {
      const auto& o = j["outer_log_modulus"];
      check_keys(o, {"kind", "values", "set", "measure", "log_on", "log_off", "grid", "form",
                     "coeffs"},
                 "weight.outer_log_modulus");
      if (!o.contains("kind")) throw config_error("weight.outer_log_modulus: missing \"kind\"");
    }
  } else {
    throw config_error("weight: unknown type \"" + type + "\"");
  }
}

void validate_map_desc(const nlohmann::json& j) {
  check_keys(j, {"fixed_point", "eta", "mobius"}, "map");
  const bool direct = j.contains("eta");
  const bool mobius = j.contains("mobius");
  if (direct == mobius)
    throw config_error("map: give exactly one of {fixed_point, eta} or {mobius}");
  if (direct) {
    check_keys(j["eta"], {"rational", "angle"}, "map.eta");
    if (j["eta"].contains("rational") == j["eta"].contains("angle"))
      throw config_error("map.eta: give exactly one of \"rational\" or \"angle\"");
  } else {
    check_keys(j["mobius"], {"lambda_angle", "b"}, "map.mobius");
    if (!j["mobius"].contains("lambda_angle") || !j["mobius"].contains("b"))
      throw config_error("map.mobius: needs \"lambda_angle\" and \"b\"");
  }
}

}  // namespace

JobConfig parse_config(const nlohmann::json& j) {
  check_keys(j, {"schema", "task", "weight", "map", "space", "knobs", "output_dir", "observable"},
             "config");
  if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
    throw config_error("config: \"schema\" must be 1");
  if (!j.contains("task")) throw config_error("config: missing \"task\"");

  JobConfig cfg;
  cfg.task = parse_task(j["task"].get<std::string>());

  if (cfg.task != Task::verify_all && cfg.task != Task::birkhoff) {
    if (!j.contains("weight")) throw config_error("config: missing \"weight\"");
  }
  if (j.contains("weight")) {
    validate_weight_desc(j["weight"]);
    cfg.weight_desc = j["weight"];
    if (cfg.weight_desc["type"] == "polynomial") {
      bool all_zero = true;
      for (const auto& e : cfg.weight_desc["coeffs"]) {
        complex c = parse_complex(e, "weight.coeffs");
        if (c != complex(0.0)) all_zero = false;
      }
      cfg.weight_is_zero = all_zero;
    }
  }

  const bool needs_map = cfg.task != Task::factor && cfg.task != Task::verify_all;
  if (needs_map && !j.contains("map")) throw config_error("config: missing \"map\"");
  if (j.contains("map")) {
    validate_map_desc(j["map"]);
    cfg.map_desc = j["map"];
  }

  if (j.contains("space")) {
    check_keys(j["space"], {"p", "alpha"}, "space");
    if (j["space"].contains("p")) cfg.space.p = j["space"]["p"].get<double>();
    if (j["space"].contains("alpha")) cfg.space.alpha = j["space"]["alpha"].get<double>();
    cfg.space.validate();
  }

  if (j.contains("knobs")) cfg.knobs = parse_knobs(j["knobs"]);

  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();

  if (cfg.task == Task::birkhoff) {
    if (!j.contains("observable")) throw config_error("config: birkhoff task needs \"observable\"");
    check_keys(j["observable"], {"kind", "value", "weight", "coeffs"}, "observable");
    cfg.observable = j["observable"];
  } else if (j.contains("observable")) {
    throw config_error("config: \"observable\" is only valid for the birkhoff task");
  }

  // Sampled tasks must be reproducible.
  if (cfg.task == Task::verify_all && !cfg.knobs.seed)
    throw config_error("config: verify-all requires knobs.seed");
  return cfg;
}

JobConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

HInfFunction build_weight(const nlohmann::json& desc, const Knobs& knobs, double map_angle01) {
  const std::string type = desc["type"].get<std::string>();
  if (type == "polynomial") {
    return HInfFunction::factor(parse_coeffs(desc["coeffs"], "weight.coeffs"),
                                knobs.boundary_grid);
  }

  BlaschkeFactorSet blaschke;
  if (desc.contains("blaschke_zeros")) {
    for (const auto& e : desc["blaschke_zeros"]) {
      if (!e.is_array() || e.size() != 3)
        throw config_error("weight.blaschke_zeros: entries are [re, im, multiplicity]");
      blaschke.zeros.push_back(
          {complex(e[0].get<double>(), e[1].get<double>()), e[2].get<int>()});
    }
  }
  SingularInnerAtoms singular;
  if (desc.contains("singular_atoms")) {
    for (const auto& e : desc["singular_atoms"]) {
      if (!e.is_array() || e.size() != 2)
        throw config_error("weight.singular_atoms: entries are [theta, mass]");
      singular.atoms.push_back({e[0].get<double>(), e[1].get<double>()});
    }
  }

  BoundaryLogModulus outer = BoundaryLogModulus::zero(knobs.boundary_grid);
  if (desc.contains("outer_log_modulus")) {
    const auto& o = desc["outer_log_modulus"];
    const std::string kind = o["kind"].get<std::string>();
    const std::size_t m = o.contains("grid") ? o["grid"].get<std::size_t>() : knobs.boundary_grid;
    if (kind == "samples") {
      outer = BoundaryLogModulus::from_samples(o["values"].get<std::vector<double>>());
    } else if (kind == "char_fn") {
      const std::string set_name = o["set"].get<std::string>();
      const double measure = o.contains("measure") ? o["measure"].get<double>() : 0.5;
      const double on = o.contains("log_on") ? o["log_on"].get<double>() : 1.0;
      const double off = o.contains("log_off") ? o["log_off"].get<double>() : 0.0;
      std::vector<bool> set;
      if (set_name == "open_dense_rationals") {
        set = open_dense_rational_union(m, measure, map_angle01);
      } else if (set_name == "fat_cantor") {
        set = fat_cantor_set(m, measure);
      } else {
        throw config_error("weight.outer_log_modulus.set: unknown set \"" + set_name + "\"");
      }
      outer = BoundaryLogModulus::from_char_set(set, on, off);
    } else if (kind == "closed_form") {
      const std::string form = o["form"].get<std::string>();
      if (form != "log_abs_poly")
        throw config_error("weight.outer_log_modulus.form: unknown form \"" + form + "\"");
      std::vector<complex> coeffs = parse_coeffs(o["coeffs"], "weight.outer_log_modulus.coeffs");
      std::vector<complex> values = eval_on_circle_grid(coeffs, m);
      std::vector<double> samples(m);
      for (std::size_t j2 = 0; j2 < m; ++j2) {
        double mod = std::abs(values[j2]);
        samples[j2] = mod > 0.0 ? std::log(mod) : kLogFloor;
      }
      outer = BoundaryLogModulus::from_samples(std::move(samples));
    } else {
      throw config_error("weight.outer_log_modulus.kind: unknown kind \"" + kind + "\"");
    }
  }

  complex constant(1.0, 0.0);
  if (desc.contains("constant")) constant = parse_complex(desc["constant"], "weight.constant");
  return HInfFunction::from_components(std::move(blaschke), std::move(singular), std::move(outer),
                                       constant);
}

MapClassification build_map(const nlohmann::json& desc) {
  if (desc.contains("mobius")) {
    const auto& m = desc["mobius"];
    complex lambda = std::polar(1.0, kTwoPi * m["lambda_angle"].get<double>());
    complex b = parse_complex(m["b"], "map.mobius.b");
    return classify_mobius(lambda, b);
  }
  complex a(0.0, 0.0);
  if (desc.contains("fixed_point")) a = parse_complex(desc["fixed_point"], "map.fixed_point");
  const auto& eta = desc["eta"];
  if (eta.contains("rational")) {
    auto pq = eta["rational"].get<std::vector<long>>();
    if (pq.size() != 2) throw config_error("map.eta.rational: expected [p, q]");
    return EllipticAutomorphism::from_rational(a, pq[0], pq[1]);
  }
  return EllipticAutomorphism::from_angle(a, eta["angle"].get<double>());
}

std::function<double(double)> build_observable(const nlohmann::json& desc, const Knobs& knobs,
                                               double map_angle01) {
  const std::string kind = desc["kind"].get<std::string>();
  if (kind == "constant") {
    const double c = desc.contains("value") ? desc["value"].get<double>() : 1.0;
    return [c](double) { return c; };
  }
  if (kind == "cosine") {
    return [](double theta) { return std::cos(theta); };
  }
  if (kind == "log_modulus") {
    if (!desc.contains("weight")) throw config_error("observable: log_modulus needs \"weight\"");
    validate_weight_desc(desc["weight"]);
    auto weight = std::make_shared<HInfFunction>(
        build_weight(desc["weight"], knobs, map_angle01));
    return [weight](double theta) { return weight->boundary_log_modulus(theta); };
  }
  if (kind == "log_abs_poly") {
    if (!desc.contains("coeffs")) throw config_error("observable: log_abs_poly needs \"coeffs\"");
    auto coeffs = parse_coeffs(desc["coeffs"], "observable.coeffs");
    return [coeffs](double theta) {
      complex acc(0.0);
      complex z = std::polar(1.0, theta);
      for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
      double mod = std::abs(acc);
      return mod > 0.0 ? std::log(mod) : kLogFloor;
    };
  }
  throw config_error("observable: unknown kind \"" + kind + "\"");
}

}  // namespace wcospec
