#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anderson/asymptotics.hpp"
#include "anderson/disorder.hpp"
#include "anderson/measure.hpp"
#include "anderson/potential.hpp"
#include "anderson/test_function.hpp"

namespace anderson {

enum class ExperimentKind {
  free_measure,
  random_measure,
  compare,
  martingale,
  weak_coupling,
  lemma2,
  positivity,
  dos,
  conjecture,
};

std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

/// Everything a run needs. Fields irrelevant to the chosen kind keep their defaults.
struct RunConfig {
  ExperimentKind kind = ExperimentKind::free_measure;
  std::string name = "run";  // stem of the output files
  int threads = 0;           // 0: OpenMP default
  bool record_timing = false;

  int d = 1;
  int L = 1;
  std::vector<int> Ls;
  double energy = 0.0;
  double K = 1.0;

  PotentialProfile profile = Decaying{};
  DisorderLaw law = UniformSym{1.0};
  ScaleFunction scale;
  std::vector<double> etas;
  TestFunction f = TestFunction(Bump{});
  bool test_function_given = false;  // lemma2 otherwise defaults to Bump{0, K}

  std::uint64_t master_seed = 1;
  int seed_count = 1;

  MeasureMethod method = MeasureMethod::dense;
  RandomMeasureOptions measure;
  double counting_budget = 1e-3;

  double epsilon = 0.5;  // martingale
  int L_max = 50;

  std::vector<double> gammas;  // lemma2
  std::vector<int> gamma_Ls;
  bool allow_outside_regime = false;

  double delta = 0.5;  // positivity

  int r = 1;  // dos
  std::size_t grid_size = 400;
  std::vector<double> t_grid;

  int k_max = 0;  // conjecture
  double theta_tolerance = 1e-10;
};

struct ConfigParse {
  std::optional<RunConfig> config;  // set iff errors is empty
  std::vector<std::string> errors;  // every problem found, "section.key: message"
  std::vector<std::string> notes;   // non-fatal regime warnings
};

/// Parses the INI-style run description:
///   [section] headers, key = value lines, '#' or ';' comments, lists comma separated.
/// Sections: run, model, profile, law, scale, test_function, seeds, method, martingale,
/// lemma2, positivity, dos, conjecture. Unknown sections or keys, duplicates, malformed
/// values and missing required keys are all reported.
ConfigParse parse_config(std::string_view text);

/// 64-bit FNV-1a of the text, as 16 lowercase hex digits.
std::string config_hash(std::string_view text);

}  // namespace anderson
