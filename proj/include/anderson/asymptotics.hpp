#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "anderson/disorder.hpp"
#include "anderson/measure.hpp"
#include "anderson/parallel.hpp"
#include "anderson/potential.hpp"
#include "anderson/test_function.hpp"

namespace anderson {

/// E|q| under the law, closed form.
double gamma_of(const DisorderLaw& law);

struct MartingaleTrace {
  int d = 1;
  double epsilon = 0.0;
  DisorderLaw law;
  std::uint64_t seed = 0;
  double gamma = 0.0;
  std::vector<double> M;           // M[L], L = 0..L_max; Lambda_0 = {0}
  std::vector<double> normalized;  // L^(-eps/2) M[L]; normalized[0] = M[0]
};

/// M_L = sum_{n in Lambda_L} (1+|n|)^(-d-eps/2) (|q_n| - gamma), accumulated one sup-norm
/// shell at a time without storing the cube. q_n is the same draw sample_site gives.
MartingaleTrace martingale_trace(int d, double epsilon, const DisorderLaw& law, std::uint64_t seed, int L_max);

/// Calls visit(site) for every n with max_i |n_i| == L.
void for_each_shell_site(int d, int L, const auto& visit);

/// eps(eta) = floor(eta^-a), 0 < a < 1/2.
struct ScaleFunction {
  double exponent = 1.0 / 3.0;

  /// Throws ConfigError unless 0 < a < 1/2 (which makes eps^2 eta -> 0).
  void validate() const;
  /// Clamped to >= 1; eta must be > 0. Values within 1e-9 relative of an integer round to it.
  int operator()(double eta) const;
};

struct ExperimentRow {
  std::string experiment;
  int d = 0;
  int L = 0;
  double parameter = 0.0;  // L for decay rows, eta for weak-coupling rows
  std::uint64_t seed = 0;
  double energy = 0.0;
  double half_width = 0.0;
  double X = 0.0;
  double bound = 0.0;
  double aux_bound = std::numeric_limits<double>::quiet_NaN();
  MeasureMethod method = MeasureMethod::dense;
  double wall_ms = 0.0;
  bool ok = true;
  std::string error;
};

struct ParameterSummary {
  double parameter = 0.0;
  double median_abs_X = 0.0;
  std::size_t rows = 0;
};

struct ExperimentRecord {
  std::vector<ExperimentRow> rows;  // parameter-major, then seed, in declared order
  std::vector<ParameterSummary> summary;
  std::vector<std::string> notes;

  bool all_ok() const;
};

struct ExperimentOptions {
  std::uint64_t master_seed = 1;
  int seed_count = 1;  // seeds master_seed + i
  MeasureMethod method = MeasureMethod::dense;
  RandomMeasureOptions measure;
  Exec exec = Exec::parallel;
};

struct DecayConfig {
  int d = 3;
  std::vector<int> Ls;
  double energy = 0.0;
  Decaying profile;
  DisorderLaw law = UniformSym{1.0};
  TestFunction f = TestFunction(Bump{});
  ExperimentOptions options;
};

/// Per (L, seed): X_L and bound_rhs. Failures are recorded per row.
ExperimentRecord decay_experiment(const DecayConfig& config);

struct WeakCouplingConfig {
  int d = 2;
  std::vector<double> etas;
  ScaleFunction scale;
  double energy = 0.0;
  DisorderLaw law = UniformSym{1.0};
  TestFunction f = TestFunction(Bump{});
  ExperimentOptions options;
};

/// Per (eta, seed): L = eps(eta), constant profile eta; aux_bound holds
/// norm * eps^2 eta * (eps^-d sum |q_n|).
ExperimentRecord weak_coupling_experiment(const WeakCouplingConfig& config);

/// (2L+1)^-1 sum over k = 1..2L+1 with gamma > cos(k pi / (2(L+1))) of (gamma - cos)^(-1/2).
double lemma2_gamma_sum(double gamma, int L);

struct Lemma2Config {
  int d = 3;
  double energy = 5.0;
  double K = 2.0;  // window half width; the test function must fit inside
  std::vector<int> Ls;
  TestFunction f = TestFunction(Bump{0.0, 2.0});
  std::vector<double> gammas;
  std::vector<int> gamma_Ls;
  bool allow_outside_regime = false;
  Exec exec = Exec::parallel;
};

struct Lemma2Table {
  std::vector<std::pair<int, double>> integrals;           // (L, int f dmu0)
  std::vector<std::tuple<double, int, double>> gamma_sums;  // (gamma, L, I(gamma))
  std::vector<std::string> notes;
};

/// Throws ConfigError outside 2d-2 < |E| < 2d unless allow_outside_regime, and for |gamma| >= 1.
Lemma2Table lemma2_diagnostic(const Lemma2Config& config);

struct PositivityResult {
  double integral = 0.0;   // int Plateau{K, delta} dmu0
  double reference = 0.0;  // K/(pi sqrt 2) N_{d-1}((E-2+delta, E+2-delta))
  double ratio = 0.0;      // integral / reference
};

/// Throws ConfigError outside 2d-2 < |E| < 2d, for delta outside (0, 1), or when
/// (E-2+delta, E+2-delta) misses (-2d+2, 2d-2).
PositivityResult positivity_check(int d, double E, double K, double delta, int L, Exec exec = Exec::parallel);

template <typename Visit>
void shell_recurse(int d, int L, std::vector<int>& site, int i, bool hit, const Visit& visit) {
  if (i == d) {
    if (hit) visit(static_cast<const std::vector<int>&>(site));
    return;
  }
  if (!hit && i == d - 1) {
    site[static_cast<std::size_t>(i)] = -L;
    visit(static_cast<const std::vector<int>&>(site));
    if (L > 0) {
      site[static_cast<std::size_t>(i)] = L;
      visit(static_cast<const std::vector<int>&>(site));
    }
    return;
  }
  for (int x = -L; x <= L; ++x) {
    site[static_cast<std::size_t>(i)] = x;
    shell_recurse(d, L, site, i + 1, hit || x == L || x == -L, visit);
  }
}

void for_each_shell_site(int d, int L, const auto& visit) {
  std::vector<int> site(static_cast<std::size_t>(d), 0);
  shell_recurse(d, L, site, 0, false, visit);
}

}  // namespace anderson
