#pragma once

#include "xiforge/precision.hpp"
#include "xiforge/real.hpp"

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace xiforge {

enum class OutputFormat { json, csv, plain };

/// Settings shared by every subcommand. Resolution order, later wins:
/// defaults, --config file, XIFORGE_* environment, command-line flags.
struct CliConfig {
  PrecisionConfig precision;
  OutputFormat format = OutputFormat::plain;
  std::filesystem::path cache_dir = ".xiforge-cache";
  int threads = 1;
};

/// Applies flat key=value settings (keys: precision_digits, abs_tol, rel_tol,
/// format, cache_dir, threads, max_subdivisions, series_trunc_max).
/// Throws UsageError on unknown keys or bad values.
void apply_settings(CliConfig& cfg, const std::map<std::string, std::string>& settings);

/// Parses a config file: key=value per line, '#' comments, blank lines ignored.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// XIFORGE_PRECISION_DIGITS, XIFORGE_ABS_TOL, ... mapped onto setting keys.
std::map<std::string, std::string> environment_settings();

/// Grid from "start:stop:step"; throws UsageError when empty or malformed.
std::vector<Real> parse_range(const std::string& range);

/// Entry point of the command-line tool. Exit status: 0 success, 1
/// mathematical or domain failure (including failed identities), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xiforge
