#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace unruh::cli {

inline constexpr const char* kSchemaVersion = "unruh-dataset/1";
inline constexpr const char* kUnits = "rates in gamma_fr, times in 1/gamma_fr, lengths in lambda0";

/// A numerical step failed; carries the module and the parameters.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(std::string module, nlohmann::json params, const std::string& what);
  const std::string& module() const { return module_; }
  const nlohmann::json& params() const { return params_; }

 private:
  std::string module_;
  nlohmann::json params_;
};

/// Runs f, rewrapping any exception as a NumericalFailure.
template <class F>
auto guarded(const std::string& module, const nlohmann::json& params, F&& f) {
  try {
    return f();
  } catch (const NumericalFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalFailure(module, params, e.what());
  }
}

class Table {
 public:
  Table(std::string name, std::vector<std::string> columns);

  void meta(const std::string& key, const std::string& value);
  /// Numbers are written at 17 significant digits; NaN or Inf aborts.
  void row(const std::vector<double>& values);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }
  double max_abs(const std::string& column) const;

  std::filesystem::path write(const std::filesystem::path& dir) const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<double>> rows_;
};

std::string format_number(double v);

/// Manifest for one command invocation, merged into <dir>/manifest.json
/// under `key`.
struct Manifest {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<const Table*> tables;
  double wall_time_s = 0.0;

  void write(const std::filesystem::path& dir, const std::string& key) const;
};

std::filesystem::path resolve_out_dir(const std::string& flag, const std::string& from_config);

}  // namespace unruh::cli
