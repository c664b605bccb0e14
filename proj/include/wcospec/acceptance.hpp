#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wcospec/classifier.hpp"

namespace wcospec {

struct CriterionResult {
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The ten verification gates run by the acceptance suite and the verify-all
// task.  Every tolerance is pinned here.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

// The six-weight corpus at the given boundary grid, with expected case tags.
struct CorpusEntry {
  std::string name;
  HInfFunction weight;
  CaseTag expected_case;
};
std::vector<CorpusEntry> six_weight_corpus(std::size_t grid_m, double rotation_angle);

}  // namespace wcospec
