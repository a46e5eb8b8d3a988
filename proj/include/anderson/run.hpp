#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "anderson/config.hpp"

namespace anderson {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitRowFailures = 1, kExitConfigError = 2 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int threads = 0;  // > 0 overrides run.threads
  bool verbose = false;
};

struct RowStatus {
  std::string label;
  bool ok = true;
  std::string error;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;  // data files, manifest last
  std::vector<RowStatus> rows;
  std::vector<std::string> notes;
  std::size_t failed_rows() const;
};

/// Runs a validated config and writes <name>.csv (plus kind-specific extra CSVs),
/// <name>.meta.json and manifest.json into out_dir. `config_text` is the source the
/// config was parsed from; its hash is stamped into every JSON output and the text is
/// embedded in the manifest so the run can be repeated from it.
RunOutcome run(const RunConfig& config, std::string_view config_text, const RunOptions& options,
               std::ostream& log);

/// parse_config + run. Config errors are printed to `log` and give kExitConfigError.
/// A manifest.json may be passed instead of a config: its embedded config is used.
int run_text(std::string_view text, const RunOptions& options, std::ostream& log);

/// The config text embedded in a manifest; throws ConfigError if `text` is not one.
std::string config_from_manifest(std::string_view text);

/// Writes via a temporary file in the same directory and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace anderson
