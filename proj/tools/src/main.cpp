#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "unruh/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int report(const nlohmann::json& record, int code) {
  std::cerr << record.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace unruh::cli;
  spdlog::set_default_logger(spdlog::stderr_color_st("unruh"));
  spdlog::set_pattern("[%H:%M:%S] %^%l%$ %v");

  CLI::App app{"Cavity-modified Unruh emission rates and superradiant burst datasets"};
  app.require_subcommand(1);
  std::string out_flag;
  int workers = 1;
  bool quiet = false;
  app.add_option("--out-dir", out_flag, "Output directory (default: $UNRUH_OUT_DIR, else ./unruh-out)");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_flag("-q,--quiet", quiet, "Only log warnings and errors");

  std::string config_path, figure_id;
  bool fast = false;
  auto* run = app.add_subcommand("run", "Evaluate a configured scenario sweep");
  run->add_option("config", config_path, "Config file")->required();
  auto* figure = app.add_subcommand("figure", "Write the dataset behind one figure (or 'all')");
  figure->add_option("id", figure_id, "Figure id")->required();
  figure->add_flag("--fast", fast, "Coarser grids for a quick look");
  auto* table = app.add_subcommand("table1", "Reproduce the quality-factor table");
  auto* bench = app.add_subcommand("benchmark-inertial", "Inertial baseline for delay-time comparisons");
  bench->add_option("config", config_path, "Config file")->required();
  auto* oracle = app.add_subcommand("oracle", "Exact small-N master-equation evolution");
  oracle->add_option("config", config_path, "Config file")->required();
  for (auto* sub : {run, figure, table, bench, oracle}) sub->add_option("--out-dir", out_flag, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return report({{"error", "usage"}, {"message", e.what()}}, kExitConfig);
  }
  if (quiet) spdlog::set_level(spdlog::level::warn);

  try {
    CommandContext ctx{{}, fast, workers};
    if (*run || *bench || *oracle) {
      const auto cfg = load_config(config_path);
      ctx.out_dir = resolve_out_dir(out_flag, cfg.out_dir);
      if (workers == 1) ctx.workers = cfg.workers;
      if (*run) cmd_run(cfg, ctx);
      if (*bench) cmd_benchmark_inertial(cfg, ctx);
      if (*oracle) cmd_oracle(cfg, ctx);
    } else if (*figure) {
      ctx.out_dir = resolve_out_dir(out_flag, "");
      if (figure_id == "all") {
        for (const auto& id : figure_ids()) cmd_figure(id, ctx);
      } else if (is_figure_id(figure_id)) {
        cmd_figure(figure_id, ctx);
      } else {
        throw ConfigError({"figure: unknown id '" + figure_id + "'"});
      }
    } else if (*table) {
      ctx.out_dir = resolve_out_dir(out_flag, "");
      cmd_table1(ctx);
    }
  } catch (const ConfigError& e) {
    return report({{"error", "config"}, {"problems", e.problems()}}, kExitConfig);
  } catch (const NumericalFailure& e) {
    return report({{"error", "numerical"}, {"module", e.module()}, {"parameters", e.params()}, {"message", e.what()}},
                  kExitNumerical);
  } catch (const unruh::ConvergenceError& e) {
    return report({{"error", "numerical"}, {"module", "core"}, {"message", e.what()}}, kExitNumerical);
  } catch (const unruh::DomainError& e) {
    return report({{"error", "numerical"}, {"module", "core"}, {"message", e.what()}}, kExitNumerical);
  } catch (const std::exception& e) {
    return report({{"error", "internal"}, {"message", e.what()}}, 1);
  }
  return 0;
}
