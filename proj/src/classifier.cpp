#include "wcospec/classifier.hpp"

#include <cmath>
#include <sstream>

namespace wcospec {

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::invertible_annulus: return "invertible_annulus";
    case CaseTag::shilov_zero_disk: return "shilov_zero_disk";
    case CaseTag::disk_zero_mixed: return "disk_zero_mixed";
    case CaseTag::open_case: return "open_case";
    case CaseTag::finite_order_refused: return "finite_order_refused";
    case CaseTag::degenerate_zero_weight: return "degenerate_zero_weight";
  }
  return "unknown";
}

nlohmann::json Region::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::disk: j["kind"] = "disk"; break;
    case Kind::annulus: j["kind"] = "annulus"; break;
    case Kind::circle: j["kind"] = "circle"; break;
    case Kind::partial: j["kind"] = "partial"; break;
  }
  if (kind == Kind::partial) {
    j["contains_annulus"] = {{"inner", inner},
                             {"outer", outer},
                             {"inner_bracket", {inner_bracket.lo, inner_bracket.hi}},
                             {"outer_bracket", {outer_bracket.lo, outer_bracket.hi}}};
    j["contains_origin"] = contains_origin;
    if (within_disk) j["within_disk"] = *within_disk;
  } else {
    j["inner"] = inner;
    j["outer"] = outer;
    j["inner_bracket"] = {inner_bracket.lo, inner_bracket.hi};
    j["outer_bracket"] = {outer_bracket.lo, outer_bracket.hi};
  }
  return j;
}

nlohmann::json SpectrumReport::to_json() const {
  nlohmann::json j;
  j["case"] = to_string(case_tag);
  if (sigma) j["sigma"] = sigma->to_json();
  if (sigma_e) j["sigma_e"] = sigma_e->to_json();
  j["radii"] = {
      {"rho",
       {{"value", rho.value},
        {"bracket", {rho.bracket.lo, rho.bracket.hi}},
        {"provenance", rho.provenance}}},
      {"r",
       {{"value", r_inner.value},
        {"bracket", {r_inner.bracket.lo, r_inner.bracket.hi}},
        {"provenance", r_inner.provenance}}},
  };
  j["zero_profile"] = {{"zeros_in_disk", profile.zeros_in_d},
                       {"zeros_on_shilov", profile.zeros_on_shilov},
                       {"singular_present", profile.singular_present},
                       {"invertible", profile.invertible()}};
  j["facts"] = nlohmann::json::array();
  for (const auto& f : facts) {
    nlohmann::json jf = {{"statement", f.statement}, {"source", f.source}};
    if (f.derived_note) jf["derived"] = true;
    j["facts"].push_back(jf);
  }
  j["open_flags"] = open_flags;
  if (refused_order) j["refused_order"] = *refused_order;
  return j;
}

SpectrumReport degenerate_zero_weight_report() {
  SpectrumReport rep;
  rep.case_tag = CaseTag::degenerate_zero_weight;
  Region point;
  point.kind = Region::Kind::disk;
  point.inner = 0.0;
  point.outer = 0.0;
  rep.sigma = point;
  rep.sigma_e = point;
  rep.rho = {0.0, {0.0, 0.0}, "zero weight"};
  rep.r_inner = {0.0, {0.0, 0.0}, "zero weight"};
  rep.facts.push_back({"sigma = sigma_e = {0}: the operator is 0", "definition", false});
  return rep;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

SpectrumReport classify(const WeightCocycle& cw, const BergmanParams& params,
                        const ClassifySettings& settings) {
  params.validate();

  SpectrumReport rep;
  if (auto q = cw.map.order()) {
    rep.case_tag = CaseTag::finite_order_refused;
    rep.refused_order = *q;
    rep.facts.push_back(
        {"map has finite order " + std::to_string(*q) +
             "; C^" + std::to_string(*q) + " is the analytic multiplication by the order-" +
             std::to_string(*q) + " cocycle weight, so the spectrum follows from the "
             "multiplication-operator case",
         "Sec. 4", false});
    return rep;
  }

  rep.profile = ZeroProfile::of(cw.weight);

  RadiusEstimate rho = rho_estimate(cw, settings.radius);
  rep.rho.value = rho.value;
  rep.rho.bracket = {rho.lower_bound(), rho.upper_bound()};
  rep.rho.provenance =
      "grid sup estimate (Birkhoff averages of the outer boundary data); bracket "
      "[max(|v(a)|,|v**(a)|), |v*(a)|] = [" +
      fmt(rho.lower_bound()) + ", " + fmt(rho.upper_bound()) + "]";

  InnerRadiusEstimate rin = r_estimate(cw, settings.radius);
  rep.r_inner.value = rin.value;
  if (rin.shilov_zero) {
    rep.r_inner.bracket = {0.0, 0.0};
    rep.r_inner.provenance = "exact: boundary zeros force r = 0";
  } else {
    rep.r_inner.bracket = {rin.bracket_lo, rin.bracket_hi};
    rep.r_inner.provenance = "closed form r = 1/rho(1/v) from the grid sup estimate";
  }

  if (rho.window_sensitive) rep.open_flags.push_back("envelope_window_sensitive");
  if (cw.map.numeric_angle_caveat())
    rep.open_flags.push_back("numeric_angle_treated_as_irrational");

  // Always-present structural facts.
  rep.facts.push_back(
      {"sigma and sigma_e are invariant under rotations about the origin", "Lemma 5.1", false});
  double psi_at_a = 0.0;
  {
    complex val = cw.weight.eval(cw.map.fixed_point());
    psi_at_a = std::abs(val);
  }
  rep.facts.push_back({"any eigenvalue has modulus |psi(a)| = " + fmt(psi_at_a),
                       "Thm. 5.4", false});
  rep.facts.push_back({"eigenvalue candidates are psi(a) eta^k, k = 0, 1, 2, ... (from the "
                       "derivative computation in the rotation model)",
                       "Thm. 5.4", true});

  const double merge_gap = std::abs(rep.rho.value - rep.r_inner.value);
  const double merge_scale = std::max(rep.rho.value, rep.r_inner.value);
  const bool merged = merge_gap <= settings.merge_tolerance * std::max(merge_scale, 1e-300);
  const bool brackets_overlap = rep.r_inner.bracket.hi >= rep.rho.bracket.lo;
  if (!merged && brackets_overlap) rep.open_flags.push_back("indeterminate_thickness");

  auto certified_annulus = [&]() {
    Region reg;
    reg.kind = merged ? Region::Kind::circle : Region::Kind::annulus;
    reg.inner = merged ? rep.rho.value : rep.r_inner.value;
    reg.outer = rep.rho.value;
    reg.inner_bracket = merged ? rep.rho.bracket : rep.r_inner.bracket;
    reg.outer_bracket = rep.rho.bracket;
    return reg;
  };

  auto disk_of_rho = [&]() {
    Region reg;
    reg.kind = Region::Kind::disk;
    reg.inner = 0.0;
    reg.outer = rep.rho.value;
    reg.inner_bracket = {0.0, 0.0};
    reg.outer_bracket = rep.rho.bracket;
    return reg;
  };

  if (rep.profile.invertible()) {
    rep.case_tag = CaseTag::invertible_annulus;
    Region reg = certified_annulus();
    rep.sigma = reg;
    rep.sigma_e = reg;
    rep.facts.push_back({"sigma = sigma_e = {lambda : 1/rho(1/psi) <= |lambda| <= rho(psi)}",
                         "Cor. 5.5", false});
  } else if (rep.profile.zeros_on_shilov) {
    rep.case_tag = CaseTag::shilov_zero_disk;
    Region reg = disk_of_rho();
    rep.sigma = reg;
    rep.sigma_e = reg;
    rep.facts.push_back(
        {"weight has zeros on the Shilov boundary: sigma = sigma_e = disk of radius rho",
         "Cor. 6.3", false});
  } else if (rep.profile.singular_present) {
    rep.case_tag = CaseTag::open_case;
    Region se = certified_annulus();
    se.kind = Region::Kind::partial;
    se.contains_origin = true;
    se.within_disk = rep.rho.bracket.hi;
    rep.sigma_e = se;
    Region sg = se;
    rep.sigma = sg;
    rep.open_flags.push_back("open_case_full_disk_equality_not_asserted");
    rep.facts.push_back({"sigma_e contains the annulus 1/rho(1/v) <= |lambda| <= rho",
                         "Thm. 5.4 + Thm. 6.2", false});
    rep.facts.push_back({"0 belongs to sigma_e (the operator is not Fredholm)",
                         "Sec. 6 final remarks", false});
    rep.facts.push_back(
        {"whether sigma_e equals the full disk of radius rho is open", "Problem 6.5", false});
  } else {
    rep.case_tag = CaseTag::disk_zero_mixed;
    rep.sigma_e = certified_annulus();
    rep.sigma = disk_of_rho();
    rep.facts.push_back({"sigma_e = {lambda : 1/rho(1/v) <= |lambda| <= rho}, sigma = disk(rho)",
                         "Thm. 6.4", false});
    rep.facts.push_back({"C - lambda is Fredholm of nonzero index for |lambda| < 1/rho(1/v)",
                         "Thm. 6.4", false});
  }
  return rep;
}

}  // namespace wcospec
