#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "zyg/fields.hpp"
#include "zyg/geometry.hpp"

namespace zyg::cli {

struct ExperimentConfig {
  std::string kernel = "nagel-wainger";
  double theta = 1.0;
  std::string symbol = "linear-x3";
  Box domain{{Interval{0.0, 1.0}, Interval{0.0, 1.0}, Interval{0.0, 1.0}}};
  int depth_min = 0;
  int depth_max = 1;
  Resolution resolution{16, 16, 16};
  std::optional<double> amplitude;  // unset means "auto"
  double alpha = 0.5;
  std::optional<double> p;
  std::optional<double> q;
  std::uint64_t seed = 1;
  std::string out = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
void validate(ExperimentConfig& c);

nlohmann::json to_json(const ExperimentConfig& c);
/// Strict: unknown keys and wrong types are ConfigErrors. Missing keys keep defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// to_json without the output location: two runs that differ only in `out`
/// describe the same experiment.
nlohmann::json experiment_json(const ExperimentConfig& c);
/// SHA-256 (hex) of the canonical dump of experiment_json.
std::string config_hash(const ExperimentConfig& c);

/// "MIN..MAX"
std::pair<int, int> parse_depths(const std::string& s);
/// "N1xN2xN3" or "N"
Resolution parse_resolution(const std::string& s);

}  // namespace zyg::cli
