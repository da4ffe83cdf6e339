#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unruh/response.hpp"

namespace unruh::cli {

/// Every violated key, one message each.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct CavityParams {
  bool free_space = true;
  double one_minus_r = 0.0;
  // omega0 L; set from epsilon as pi + epsilon when given that way.
  double omega0_l = 3.141592653589793;

  cavity::CavitySpec spec() const;
};

struct SweepAxis {
  std::string name;
  std::vector<double> grid;
};

struct RunConfig {
  response::Scenario scenario;
  CavityParams cavity;
  std::vector<SweepAxis> sweep;
  std::string out_dir;
  std::vector<std::string> datasets{"rates"};
  int workers = 1;
  double profile_tau_max = 0.0;  // 0 picks a span from the burst times
  int profile_points = 2001;
  std::optional<double> measured_tau_d;
  std::string oracle_matrix = "scenario";
  double oracle_tau_max = 5.0;
  int oracle_points = 2001;
  // Flattened key/value pairs as read, for the manifest.
  std::map<std::string, std::string> raw;
};

/// Names a sweep axis may take.
const std::vector<std::string>& sweepable_fields();

RunConfig load_config(const std::string& path);

/// Scenario for one sweep point; `values` follows cfg.sweep order.
response::Scenario scenario_at(const RunConfig& cfg, const std::vector<double>& values);

/// Cartesian product of the sweep axes in declaration order, last axis
/// fastest. One empty point when there is no sweep.
std::vector<std::vector<double>> sweep_points(const RunConfig& cfg);

}  // namespace unruh::cli
