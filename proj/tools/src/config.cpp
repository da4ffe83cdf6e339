#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

namespace unruh::cli {

namespace {

const std::set<std::string> kKeys = {
    "scenario.alpha",         "scenario.cavity",        "scenario.one_minus_r",
    "scenario.epsilon",       "scenario.omega0_l",      "scenario.spacing",
    "scenario.n_atoms",       "scenario.theta0",        "scenario.phi0",
    "scenario.x_offset",      "quadrature.abs_tol",     "quadrature.rel_tol",
    "quadrature.max_subdivisions", "quadrature.truncation_threshold",
    "output.dir",             "output.datasets",        "run.workers",
    "profile.tau_max",        "profile.points",         "benchmark.measured_tau_d",
    "oracle.matrix",          "oracle.tau_max",         "oracle.points",
};

const std::set<std::string> kDatasets = {"rates", "summary", "profile", "lamb_shift"};

std::optional<double> parse_number(std::string s) {
  boost::algorithm::trim(s);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, s, boost::algorithm::is_any_of(","));
  for (auto& p : parts) boost::algorithm::trim(p);
  parts.erase(std::remove(parts.begin(), parts.end(), std::string()), parts.end());
  return parts;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  template <class T>
  void number(const std::string& key, T& out, double lo, double hi) {
    if (!has(key)) return;
    const auto v = parse_number(kv_.at(key));
    if (!v) return fail(key, "not a finite number: '" + kv_.at(key) + "'");
    if (*v < lo || *v > hi) return fail(key, fmt::format("value {} outside [{}, {}]", *v, lo, hi));
    if constexpr (std::is_integral_v<T>) {
      if (std::floor(*v) != *v) return fail(key, "expected an integer");
    }
    out = static_cast<T>(*v);
  }

  void fail(const std::string& key, const std::string& msg) { problems.push_back(key + ": " + msg); }

  const std::string& str(const std::string& key) const { return kv_.at(key); }

  std::vector<std::string> problems;

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(fmt::format("invalid configuration: {}", fmt::join(problems, "; "))),
      problems_(std::move(problems)) {}

cavity::CavitySpec CavityParams::spec() const {
  if (free_space) return cavity::CavitySpec::free_space();
  return cavity::CavitySpec::from_loss(one_minus_r, omega0_l);
}

const std::vector<std::string>& sweepable_fields() {
  static const std::vector<std::string> f = {"alpha",   "one_minus_r", "epsilon", "omega0_l",
                                             "spacing", "n_atoms",     "theta0",  "x_offset"};
  return f;
}

RunConfig load_config(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError({fmt::format("{}: {}", path, e.message())});
  }

  RunConfig cfg;
  std::map<std::string, std::string> kv;
  std::vector<std::string> problems;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      problems.push_back(section + ": keys must sit inside a [section]");
      continue;
    }
    for (const auto& [key, value] : body) kv[section + "." + key] = value.data();
  }
  cfg.raw = kv;

  const auto& fields = sweepable_fields();
  for (const auto& [key, value] : kv) {
    if (boost::algorithm::starts_with(key, "sweep.")) {
      const auto name = key.substr(6);
      if (std::find(fields.begin(), fields.end(), name) == fields.end()) {
        problems.push_back(key + ": sweep axis does not name a scenario field");
        continue;
      }
      SweepAxis axis{name, {}};
      for (const auto& item : split_list(value)) {
        const auto v = parse_number(item);
        if (!v) {
          problems.push_back(key + ": not a finite number: '" + item + "'");
          continue;
        }
        axis.grid.push_back(*v);
      }
      if (axis.grid.empty()) problems.push_back(key + ": empty sweep grid for axis '" + name + "'");
      if (!std::is_sorted(axis.grid.begin(), axis.grid.end()) ||
          std::adjacent_find(axis.grid.begin(), axis.grid.end()) != axis.grid.end())
        problems.push_back(key + ": sweep grid must be strictly increasing");
      cfg.sweep.push_back(std::move(axis));
    } else if (!kKeys.count(key)) {
      problems.push_back(key + ": unknown key");
    }
  }

  Reader r(kv);
  auto& sc = cfg.scenario;
  r.number("scenario.alpha", sc.alpha, 0.0, 10.0);
  if (r.has("scenario.cavity")) {
    const auto kind = r.str("scenario.cavity");
    if (kind == "planar") {
      cfg.cavity.free_space = false;
    } else if (kind != "free") {
      r.fail("scenario.cavity", "expected 'free' or 'planar', got '" + kind + "'");
    }
  }
  r.number("scenario.one_minus_r", cfg.cavity.one_minus_r, 0.0, 1.0);
  if (r.has("scenario.epsilon") && r.has("scenario.omega0_l"))
    r.fail("scenario.epsilon", "give either epsilon or omega0_l, not both");
  double eps = 0.0;
  r.number("scenario.epsilon", eps, -M_PI, 1e6);
  if (r.has("scenario.epsilon")) cfg.cavity.omega0_l = M_PI + eps;
  r.number("scenario.omega0_l", cfg.cavity.omega0_l, 0.0, 1e6);
  if (cfg.cavity.free_space) {
    for (const char* k : {"scenario.one_minus_r", "scenario.epsilon", "scenario.omega0_l"})
      if (r.has(k)) r.fail(k, "only valid with scenario.cavity = planar");
  } else if (!r.has("scenario.one_minus_r")) {
    r.fail("scenario.one_minus_r", "required for a planar cavity");
  }
  r.number("scenario.spacing", sc.spacing_d_over_lambda0, 0.0, 1e6);
  r.number("scenario.n_atoms", sc.n_atoms, 1, 10000);
  r.number("scenario.theta0", sc.theta0, 0.0, M_PI);
  r.number("scenario.phi0", sc.phi0, -2 * M_PI, 2 * M_PI);
  r.number("scenario.x_offset", sc.x_offset_over_lambda0, -1e6, 1e6);
  r.number("quadrature.abs_tol", sc.quad.abs_tol, 0.0, 1.0);
  r.number("quadrature.rel_tol", sc.quad.rel_tol, 0.0, 1.0);
  r.number("quadrature.max_subdivisions", sc.quad.max_subdivisions, 1, 1e7);
  r.number("quadrature.truncation_threshold", sc.quad.truncation_threshold, 0.0, 1.0);
  r.number("run.workers", cfg.workers, 1, 1024);
  sc.workers = cfg.workers;
  r.number("profile.tau_max", cfg.profile_tau_max, 0.0, 1e300);
  r.number("profile.points", cfg.profile_points, 2, 1e7);
  if (r.has("benchmark.measured_tau_d")) {
    double v = 0.0;
    r.number("benchmark.measured_tau_d", v, 0.0, 1e300);
    cfg.measured_tau_d = v;
  }
  if (r.has("oracle.matrix")) {
    cfg.oracle_matrix = r.str("oracle.matrix");
    if (cfg.oracle_matrix != "scenario" && cfg.oracle_matrix != "dicke")
      r.fail("oracle.matrix", "expected 'scenario' or 'dicke'");
  }
  r.number("oracle.tau_max", cfg.oracle_tau_max, 0.0, 1e300);
  r.number("oracle.points", cfg.oracle_points, 2, 1e7);
  if (r.has("output.dir")) cfg.out_dir = r.str("output.dir");
  if (r.has("output.datasets")) {
    cfg.datasets = split_list(r.str("output.datasets"));
    if (cfg.datasets.empty()) r.fail("output.datasets", "empty dataset list");
    for (const auto& d : cfg.datasets)
      if (!kDatasets.count(d)) r.fail("output.datasets", "unknown dataset '" + d + "'");
  }
  for (const auto& axis : cfg.sweep) {
    const bool cav = axis.name == "one_minus_r" || axis.name == "epsilon" || axis.name == "omega0_l";
    if (cav && cfg.cavity.free_space) r.problems.push_back("sweep." + axis.name + ": needs scenario.cavity = planar");
  }

  problems.insert(problems.end(), r.problems.begin(), r.problems.end());
  if (!problems.empty()) throw ConfigError(std::move(problems));
  try {
    sc.cavity = cfg.cavity.spec();
    sc.validate();
  } catch (const std::exception& e) {
    throw ConfigError({std::string("scenario: ") + e.what()});
  }
  return cfg;
}

response::Scenario scenario_at(const RunConfig& cfg, const std::vector<double>& values) {
  response::Scenario sc = cfg.scenario;
  CavityParams cav = cfg.cavity;
  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
    const auto& name = cfg.sweep[i].name;
    const double v = values.at(i);
    if (name == "alpha") sc.alpha = v;
    else if (name == "one_minus_r") cav.one_minus_r = v;
    else if (name == "epsilon") cav.omega0_l = M_PI + v;
    else if (name == "omega0_l") cav.omega0_l = v;
    else if (name == "spacing") sc.spacing_d_over_lambda0 = v;
    else if (name == "n_atoms") sc.n_atoms = static_cast<int>(v);
    else if (name == "theta0") sc.theta0 = v;
    else if (name == "x_offset") sc.x_offset_over_lambda0 = v;
  }
  sc.cavity = cav.spec();
  sc.validate();
  return sc;
}

std::vector<std::vector<double>> sweep_points(const RunConfig& cfg) {
  std::vector<std::vector<double>> pts{{}};
  for (const auto& axis : cfg.sweep) {
    std::vector<std::vector<double>> next;
    for (const auto& p : pts)
      for (double v : axis.grid) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace unruh::cli
