#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"
#include "figures.hpp"

namespace unruh::cli {

struct CommandContext {
  std::filesystem::path out_dir;
  bool fast = false;
  int workers = 1;
};

void cmd_run(const RunConfig& cfg, const CommandContext& ctx);
void cmd_benchmark_inertial(const RunConfig& cfg, const CommandContext& ctx);
void cmd_oracle(const RunConfig& cfg, const CommandContext& ctx);
void cmd_figure(const std::string& id, const CommandContext& ctx);
void cmd_table1(const CommandContext& ctx);

}  // namespace unruh::cli
