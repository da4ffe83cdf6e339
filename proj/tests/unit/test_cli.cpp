#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "config.hpp"
#include "output.hpp"

using namespace unruh::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "unruh_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_ini(const std::string& name, const std::string& body) {
  const auto p = scratch() / name;
  std::ofstream(p) << body;
  return p;
}

std::vector<std::string> problems_of(const fs::path& p) {
  try {
    load_config(p.string());
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

}  // namespace

TEST_CASE("valid config with a sweep") {
  const auto p = write_ini("ok.ini",
                           "[scenario]\nalpha = 1e-9\ncavity = planar\none_minus_r = 1e-8\nepsilon = -1e-6\n"
                           "n_atoms = 3\n[sweep]\nepsilon = -2e-6, -1e-6\nspacing = 0.5, 1, 2\n");
  const auto cfg = load_config(p.string());
  CHECK(cfg.scenario.alpha == 1e-9);
  CHECK(cfg.scenario.n_atoms == 3);
  REQUIRE(cfg.sweep.size() == 2);
  const auto pts = sweep_points(cfg);
  CHECK(pts.size() == 6);
  const auto s = scenario_at(cfg, pts[5]);
  CHECK(s.spacing_d_over_lambda0 == 2.0);
  CHECK(s.cavity.detuning() == doctest::Approx(-1e-6).epsilon(1e-6));
}

TEST_CASE("unknown keys and bad grids are all reported") {
  const auto p = write_ini("bad.ini", "[scenario]\nalpha = -1\ncolour = red\n[sweep]\nspacing = 2, 1\nalpha =\n");
  const auto probs = problems_of(p);
  CHECK(probs.size() >= 3);
  bool saw_unknown = false;
  for (const auto& s : probs) saw_unknown |= s.find("colour") != std::string::npos;
  CHECK(saw_unknown);
}

TEST_CASE("missing file is a config error") { CHECK_FALSE(problems_of(scratch() / "absent.ini").empty()); }

TEST_CASE("table formatting and non-finite rejection") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  Table t("demo", {"x", "y"});
  t.row({1.0, 2.5});
  CHECK_THROWS(t.row({1.0, NAN}));
  CHECK_THROWS(t.row({1.0}));
  const auto path = t.write(scratch());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto text = ss.str();
  CHECK(text.find("# schema: unruh-dataset/1") != std::string::npos);
  CHECK(text.find("x,y\n1,2.5\n") != std::string::npos);
}

TEST_CASE("output directory precedence") {
  CHECK(resolve_out_dir("flag", "cfg") == "flag");
  CHECK(resolve_out_dir("", "cfg") == "cfg");
}
