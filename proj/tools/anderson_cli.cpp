#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "anderson/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume Anderson models with decaying or weakly coupled disorder"};
  std::string config_path;
  anderson::RunOptions options;
  std::string out_dir = ".";
  app.add_option("--config", config_path, "Run configuration (INI) or a manifest.json to repeat")->required();
  app.add_option("--out-dir", out_dir, "Directory for CSV, metadata and manifest output");
  app.add_option("--threads", options.threads, "OpenMP threads (overrides run.threads)")->check(CLI::NonNegativeNumber);
  app.add_flag("--verbose", options.verbose, "Progress on stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : anderson::kExitConfigError;
  }
  options.out_dir = out_dir;

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "config error: cannot read " << config_path << "\n";
    return anderson::kExitConfigError;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return anderson::run_text(text.str(), options, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return anderson::kExitRowFailures;
  }
}
