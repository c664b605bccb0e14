#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wcospec/bergman.hpp"
#include "wcospec/radius.hpp"

namespace wcospec {

// Location of the weight's zeros, read off the declared factorization (never
// from numerics): inside the disk (Blaschke part), on the Shilov boundary
// surrogate (essential infimum 0), or at the singular inner factor.
struct ZeroProfile {
  bool zeros_in_d = false;
  bool zeros_on_shilov = false;
  bool singular_present = false;

  bool invertible() const { return !(zeros_in_d || zeros_on_shilov || singular_present); }

  static ZeroProfile of(const HInfFunction& w) {
    return {w.zeros_in_disk(), w.zeros_on_shilov(), w.singular_present()};
  }
};

enum class CaseTag {
  invertible_annulus,
  shilov_zero_disk,
  disk_zero_mixed,
  open_case,
  finite_order_refused,
  degenerate_zero_weight,
};

std::string to_string(CaseTag tag);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct RadiusReport {
  double value = 0.0;
  Bracket bracket;
  std::string provenance;
};

// Rotation-invariant region description (disks, annuli, circles centered at
// 0; `partial` carries only certified containments and never asserts more).
struct Region {
  enum class Kind { disk, annulus, circle, partial };
  Kind kind = Kind::disk;
  double inner = 0.0;
  double outer = 0.0;
  Bracket inner_bracket;
  Bracket outer_bracket;
  bool contains_origin = false;            // partial only
  std::optional<double> within_disk;       // partial only: certified superset disk

  nlohmann::json to_json() const;
};

struct Fact {
  std::string statement;
  std::string source;  // result tag the claim traces to, e.g. "Cor. 5.5"
  bool derived_note = false;
};

struct SpectrumReport {
  CaseTag case_tag = CaseTag::invertible_annulus;
  std::optional<Region> sigma;
  std::optional<Region> sigma_e;
  RadiusReport rho;
  RadiusReport r_inner;
  ZeroProfile profile;
  std::vector<Fact> facts;
  std::vector<std::string> open_flags;
  std::optional<long> refused_order;

  nlohmann::json to_json() const;
};

struct ClassifySettings {
  RadiusSettings radius;
  double merge_tolerance = 0.02;  // relative radii gap below which an annulus is a circle
};

// The full case analysis: emits the certified description of sigma and
// sigma_e for C_{psi,phi} on A^p_alpha.
SpectrumReport classify(const WeightCocycle& cw, const BergmanParams& params,
                        const ClassifySettings& settings = {});

// psi identically zero: sigma = sigma_e = {0}.
SpectrumReport degenerate_zero_weight_report();

}  // namespace wcospec
