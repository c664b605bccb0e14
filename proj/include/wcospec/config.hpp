#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wcospec/classifier.hpp"
#include "wcospec/verification.hpp"

namespace wcospec {

struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Task { factor, radius, spectrum, residual, pseudospec, birkhoff, verify_all };

std::string to_string(Task t);

// Numeric knobs with the documented defaults.
struct Knobs {
  std::size_t boundary_grid = 4096;  // M
  std::size_t truncation = 256;      // N
  std::size_t quadrature = 128;      // Q
  std::vector<long> schedule{16, 64, 256, 1024, 4096};
  std::size_t envelope_window = 0;  // 0 -> M/1024 + 1
  std::optional<std::uint64_t> seed;
  std::vector<double> radii;          // residual scan circles
  std::vector<long> k_schedule{8, 16, 32, 64};
  std::optional<complex> lambda;      // lower-bound probe
  int trials = 200;
  std::size_t pseudo_radii = 48;
  std::size_t pseudo_angles = 64;
  double pseudo_r_max = 0.0;  // 0 -> 1.25 * ||M||_2 estimate from rho
  long birkhoff_n = 100000;
  double theta0 = 0.0;
  unsigned threads = 0;  // 0 -> default
};

struct JobConfig {
  Task task = Task::spectrum;
  nlohmann::json weight_desc;              // echoed into the report
  std::optional<nlohmann::json> map_desc;  // absent only for factor
  BergmanParams space;
  Knobs knobs;
  std::string output_dir = ".";
  std::optional<nlohmann::json> observable;  // birkhoff task
  bool weight_is_zero = false;               // zero polynomial descriptor
};

// Strict parsing: any unrecognized key anywhere raises config_error naming it.
JobConfig parse_config(const nlohmann::json& j);
JobConfig parse_config_file(const std::string& path);

// Weight/map construction from the validated descriptors.
HInfFunction build_weight(const nlohmann::json& desc, const Knobs& knobs, double map_angle01);
MapClassification build_map(const nlohmann::json& desc);

// Observable for the birkhoff task: {"kind":"constant"|"cosine"|"log_modulus"}.
std::function<double(double)> build_observable(const nlohmann::json& desc, const Knobs& knobs,
                                               double map_angle01);

}  // namespace wcospec
