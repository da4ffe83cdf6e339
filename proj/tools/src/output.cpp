#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

#ifndef UNRUH_VERSION
#define UNRUH_VERSION "unknown"
#endif

namespace unruh::cli {

NumericalFailure::NumericalFailure(std::string module, nlohmann::json params, const std::string& what)
    : std::runtime_error(what), module_(std::move(module)), params_(std::move(params)) {}

Table::Table(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void Table::meta(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }

void Table::row(const std::vector<double>& values) {
  if (values.size() != columns_.size())
    throw std::logic_error(fmt::format("{}: row has {} values for {} columns", name_, values.size(), columns_.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw NumericalFailure("cli", {{"dataset", name_}, {"column", columns_[i]}, {"row", rows_.size()}},
                             "non-finite value in output");
  rows_.push_back(values);
}

double Table::max_abs(const std::string& column) const {
  const auto it = std::find(columns_.begin(), columns_.end(), column);
  if (it == columns_.end()) return 0.0;
  const auto c = static_cast<std::size_t>(it - columns_.begin());
  double m = 0.0;
  for (const auto& r : rows_) m = std::max(m, std::abs(r[c]));
  return m;
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::filesystem::path Table::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const auto path = dir / (name_ + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# schema: " << kSchemaVersion << "\n";
  out << "# dataset: " << name_ << "\n";
  out << "# units: " << kUnits << "\n";
  for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_number(r[i]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return path;
}

void Manifest::write(const std::filesystem::path& dir, const std::string& key) const {
  std::filesystem::create_directories(dir);
  const auto path = dir / "manifest.json";
  nlohmann::json doc = nlohmann::json::object();
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) doc = nlohmann::json::object();
  }
  doc["schema_version"] = kSchemaVersion;
  doc["code_version"] = UNRUH_VERSION;
  nlohmann::json entry;
  entry["command"] = command;
  entry["inputs"] = inputs;
  entry["tolerances"] = tolerances;
  entry["results"] = results;
  entry["wall_time_s"] = wall_time_s;
  nlohmann::json sets = nlohmann::json::object();
  for (const Table* t : tables) {
    nlohmann::json s;
    s["file"] = t->name() + ".csv";
    s["columns"] = t->columns();
    s["rows"] = t->rows();
    s["units"] = kUnits;
    nlohmann::json errs = nlohmann::json::object();
    for (const auto& c : t->columns())
      if (c.size() > 4 && c.compare(c.size() - 4, 4, "_err") == 0) errs[c] = t->max_abs(c);
    s["max_error_estimates"] = errs;
    sets[t->name()] = s;
  }
  entry["datasets"] = sets;
  doc["entries"][key] = entry;
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
}

std::filesystem::path resolve_out_dir(const std::string& flag, const std::string& from_config) {
  if (!flag.empty()) return flag;
  if (!from_config.empty()) return from_config;
  if (const char* env = std::getenv("UNRUH_OUT_DIR"); env && *env) return env;
  return "unruh-out";
}

}  // namespace unruh::cli
