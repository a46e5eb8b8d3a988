// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anderson/asymptotics.hpp"
#include "anderson/conjecture.hpp"
#include "anderson/cube.hpp"
#include "anderson/disorder.hpp"
#include "anderson/dos.hpp"
#include "anderson/eigensolve.hpp"
#include "anderson/format.hpp"
#include "anderson/free_spectrum.hpp"
#include "anderson/hamiltonian.hpp"
#include "anderson/measure.hpp"
#include "anderson/run.hpp"
#include "anderson/test_function.hpp"

namespace fs = std::filesystem;
using namespace anderson;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Verdict a1_free_oracle() {
  const auto t0 = Clock::now();
  struct Case {
    int d;
    std::vector<int> Ls;
  };
  std::vector<int> d2;
  for (int L = 1; L <= 14; ++L) d2.push_back(L);
  for (int L : {20, 24, 28}) d2.push_back(L);
  const std::vector<Case> cases{{1, {1, 2, 5, 50, 200, 800, 1687}}, {2, d2}, {3, {1, 2, 3, 4, 5, 6, 7}}};
  double worst = 0.0;
  int checked = 0;
  for (const auto& c : cases) {
    for (int L : c.Ls) {
      const auto dense = full_spectrum(tridiagonalize(assemble_hamiltonian(CubeSpec(c.d, L))));
      const auto closed = free_spectrum_values(c.d, L);
      if (dense.size() != closed.size()) return {false, "size mismatch at d=" + std::to_string(c.d) + " L=" + std::to_string(L)};
      for (std::size_t i = 0; i < dense.size(); ++i) worst = std::max(worst, std::abs(dense[i] - closed[i]));
      ++checked;
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-10 && secs <= 60.0,
          std::to_string(checked) + " cubes up to N=3375, max |dense - closed| = " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Verdict a2_multiplicity() {
  std::ostringstream os;
  bool pass = true;
  for (int d : {2, 3}) {
    for (int L = 1; L <= 5; ++L) {
      const auto audit = multiplicity_audit(d, L);
      pass = pass && audit.pass && audit.max_multiplicity <= audit.bound;
      if (L == 5) os << "d=" << d << " L=5 max " << audit.max_multiplicity << " <= " << audit.bound << "; ";
    }
  }
  return {pass, os.str() + "all d in {2,3}, L <= 5 audited"};
}

Verdict a3_lattice() {
  std::ostringstream os;
  bool pass = true;
  for (int L : {100, 1000}) {
    const auto m = free_measure(1, L, 0.0, 10.0);
    const double allowed = 1000.0 / (24.0 * (L + 1.0) * (L + 1.0));
    double worst = 0.0;
    for (const auto& atom : m.atoms) {
      const double k = std::round(atom.position / std::numbers::pi);
      worst = std::max(worst, std::abs(atom.position - k * std::numbers::pi));
    }
    pass = pass && worst <= allowed && !m.atoms.empty();
    os << "L=" << L << ": " << m.atoms.size() << " atoms, max dist " << fmt(worst) << " <= " << fmt(allowed) << "; ";
  }
  return {pass, os.str()};
}

Verdict a4_inequality() {
  const auto t0 = Clock::now();
  const std::vector<TestFunction> fs{TestFunction(Bump{0.0, 1.0}), TestFunction(Bump{0.0, 2.0}),
                                     TestFunction(Bump{0.5, 1.5}), TestFunction(Bump{0.0, 4.0})};
  const double amplitudes[] = {0.5, 1.0, 2.0};
  const double epsilons[] = {0.5, 1.0};
  const double etas[] = {0.05, 0.2};
  int violations = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int d = 2 + i % 2;
    const int L = 1 + (i / 2) % 6;
    PotentialProfile profile = (i / 12) % 2 == 0
                                   ? PotentialProfile(Decaying{amplitudes[(i / 3) % 3], epsilons[(i / 5) % 2]})
                                   : PotentialProfile(Constant{etas[(i / 7) % 2]});
    const DisorderLaw law = (i / 4) % 2 == 0 ? DisorderLaw(UniformSym{1.0}) : DisorderLaw(Bernoulli{0.5});
    const double energies[] = {0.0, 1.5, d + 0.7, 2.0 * d - 0.5};
    const double E = energies[(i / 11) % 4];
    const auto& f = fs[static_cast<std::size_t>((i / 13) % 4)];
    const double K = f.support_radius();
    const CubeSpec cube(d, L);
    const auto field = make_field(cube, law, profile, 7000 + static_cast<std::uint64_t>(i));
    const auto free = free_measure(d, L, E, K);
    const auto random = random_measure(field, E, K);
    const double X = x_statistic(free, random, f);
    const double bound = bound_rhs(f, field);
    if (!(std::abs(X) <= bound + 1e-6 * (1.0 + bound))) ++violations;
    if (bound > 0.0) worst_ratio = std::max(worst_ratio, std::abs(X) / bound);
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs <= 600.0, "200 instances, " + std::to_string(violations) +
                                                 " violations, max |X|/bound = " + fmt(worst_ratio) + ", " +
                                                 fmt(secs) + " s"};
}

// Medians from the first verified run.
const double kA5Pinned[] = {0.00048131670872568477, 6.454005220221659e-05, 3.296028421488628e-05,
                            4.1416317889508836e-05};
const double kA6Pinned[] = {0.01340938320707119, 0.0008245192259740408, 0.00037816333943552216};
constexpr double kPinTolerance = 1e-6;

bool matches_pin(double value, double pin) {
  return std::abs(value - pin) <= kPinTolerance * std::max(std::abs(pin), 1e-12);
}

bool nonincreasing_with_slack(const std::vector<double>& m) {
  int inversions = 0;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] > m[i - 1]) {
      ++inversions;
      if (m[i] > 1.10 * m[i - 1]) return false;
    }
  }
  return inversions <= 1;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + format_double(x);
  return "[" + s + "]";
}

Verdict a5_decay_trend() {
  const auto t0 = Clock::now();
  DecayConfig c;
  c.d = 3;
  c.Ls = {3, 4, 5, 6};
  c.energy = 5.0;
  c.profile = Decaying{1.0, 0.5};
  c.law = UniformSym{1.0};
  c.f = TestFunction(Bump{0.0, 4.0});
  c.options.master_seed = 1;
  c.options.seed_count = 20;
  const auto record = decay_experiment(c);
  std::vector<double> medians;
  for (const auto& s : record.summary) medians.push_back(s.median_abs_X);
  bool pinned = medians.size() == 4;
  for (std::size_t i = 0; pinned && i < 4; ++i) pinned = matches_pin(medians[i], kA5Pinned[i]);
  const double secs = seconds_since(t0);
  return {record.all_ok() && nonincreasing_with_slack(medians) && pinned && secs <= 1800.0,
          "medians " + list(medians) + (pinned ? " match pins" : " differ from pins") + ", " + fmt(secs) + " s"};
}

Verdict a6_aux_trend() {
  const auto t0 = Clock::now();
  WeakCouplingConfig c;
  c.d = 2;
  c.etas = {0.1, 0.03, 0.01};
  c.scale.exponent = 1.0 / 3.0;
  c.energy = 1.0;
  c.law = UniformSym{1.0};
  c.f = TestFunction(Bump{0.0, 4.0});
  c.options.master_seed = 1;
  c.options.seed_count = 20;
  const auto record = weak_coupling_experiment(c);
  std::vector<double> medians;
  for (const auto& s : record.summary) medians.push_back(s.median_abs_X);
  bool decreasing = medians.size() == 3;
  for (std::size_t i = 1; decreasing && i < medians.size(); ++i) decreasing = medians[i] < medians[i - 1];
  bool pinned = medians.size() == 3;
  for (std::size_t i = 0; pinned && i < 3; ++i) pinned = matches_pin(medians[i], kA6Pinned[i]);
  const double secs = seconds_since(t0);
  return {record.all_ok() && decreasing && pinned && secs <= 600.0,
          "medians " + list(medians) + (pinned ? " match pins" : " differ from pins") + ", " + fmt(secs) + " s"};
}

Verdict a7_martingale() {
  const auto t0 = Clock::now();
  bool zero = true;
  for (int d : {1, 2, 3}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto trace = martingale_trace(d, 0.5, Bernoulli{0.5}, seed, 20);
      for (double m : trace.M) zero = zero && m == 0.0;
    }
  }

  std::vector<double> finals;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    finals.push_back(martingale_trace(1, 1.0, UniformSym{1.0}, seed, 2000).M.back());
  }
  double mean = 0.0;
  for (double x : finals) mean += x;
  mean /= static_cast<double>(finals.size());
  double var = 0.0;
  for (double x : finals) var += (x - mean) * (x - mean);
  var /= static_cast<double>(finals.size() - 1);
  const double zeta3 = 1.2020569031595942;
  const double analytic = (2.0 * zeta3 - 1.0) / 12.0;
  const double rel = std::abs(var - analytic) / analytic;

  int smaller = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto trace = martingale_trace(3, 0.5, UniformSym{1.0}, seed, 50);
    if (std::abs(trace.normalized[50]) < std::abs(trace.normalized[25])) ++smaller;
  }
  const double secs = seconds_since(t0);
  return {zero && rel <= 0.25 && smaller >= 80 && secs <= 120.0,
          std::string("Bernoulli M==0: ") + (zero ? "yes" : "no") + "; Var " + fmt(var) + " vs " + fmt(analytic) +
              " (rel " + fmt(rel) + "); |norm[50]| < |norm[25]| for " + std::to_string(smaller) + "/100; " +
              fmt(secs) + " s"};
}

Verdict a8_lemma2() {
  const auto t0 = Clock::now();
  Lemma2Config c;
  c.d = 3;
  c.energy = 5.0;
  c.K = 2.0;
  c.Ls = {20, 40, 80, 160, 320};
  c.f = TestFunction(Bump{0.0, 2.0});
  c.gammas = {-0.999, -0.9, -0.7, -0.5, -0.3, -0.1};
  c.gamma_Ls = {1000, 2000};
  const auto table = lemma2_diagnostic(c);
  std::vector<double> values;
  for (const auto& [L, v] : table.integrals) values.push_back(std::abs(v));
  const double ratio = *std::max_element(values.begin(), values.end()) / median(values);
  double worst = 0.0;
  for (double g : c.gammas) {
    double i1 = 0.0;
    double i2 = 0.0;
    for (const auto& [gamma, L, I] : table.gamma_sums) {
      if (gamma != g) continue;
      (L == 1000 ? i1 : i2) = I;
    }
    worst = std::max(worst, std::abs(i2 - i1) / std::abs(i2));
  }
  const double secs = seconds_since(t0);
  return {ratio <= 3.0 && worst <= 0.10 && secs <= 300.0,
          "integrals " + list(values) + ", max/median " + fmt(ratio) + "; I(gamma) L=1000 vs 2000 max rel " +
              fmt(worst) + "; " + fmt(secs) + " s"};
}

Verdict a9_positivity() {
  const auto t0 = Clock::now();
  const auto r = positivity_check(3, 5.0, 2.0, 0.5, 320);
  const double secs = seconds_since(t0);
  return {r.integral >= 0.5 * r.reference && secs <= 300.0,
          "integral " + fmt(r.integral) + ", reference " + fmt(r.reference) + ", ratio " + fmt(r.ratio) + "; " +
              fmt(secs) + " s"};
}

BandedSymmetricMatrix random_banded(std::size_t n, std::size_t b, std::mt19937_64& rng) {
  BandedSymmetricMatrix m(n, b);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < std::min(n, j + b + 1); ++i) m.lower(i, j) = u();
  return m;
}

Verdict a10_eigensolve() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<BandedSymmetricMatrix> matrices;
  const std::size_t sizes[] = {40, 97, 150, 256, 400, 600, 900, 1200, 1600, 2000};
  const std::size_t bands[] = {1, 3, 8, 2, 17, 5, 30, 4, 12, 6};
  for (int i = 0; i < 10; ++i) matrices.push_back(random_banded(sizes[i], bands[i], rng));
  const std::pair<int, int> cubes[] = {{1, 30}, {2, 5}, {2, 12}, {3, 3}, {3, 4}, {2, 20}, {3, 5}, {1, 900}, {2, 7}, {3, 2}};
  int idx = 0;
  for (const auto& [d, L] : cubes) {
    const CubeSpec cube(d, L);
    const auto field = make_field(cube, UniformSym{1.0}, Decaying{1.0, 0.5}, 300 + static_cast<std::uint64_t>(idx++));
    matrices.push_back(assemble_hamiltonian(cube, field));
  }

  int pairs = 0;
  int inertia_mismatch = 0;
  int window_mismatch = 0;
  for (const auto& m : matrices) {
    const auto t = tridiagonalize(m);
    const double norm = m.norm_inf();
    for (int s = 0; s < 10; ++s) {
      const double shift = (2.0 * u() - 1.0) * norm;
      ++pairs;
      if (banded_inertia(m, shift).count != sturm_count(t, shift).count) ++inertia_mismatch;
    }
    const double a = (2.0 * u() - 1.0) * norm;
    const double b = a + u() * norm;
    const auto window = eigs_in_window(t, a, b, 1e-12);
    const std::size_t expected =
        banded_inertia(m, b).count - banded_inertia(m, std::nextafter(a, -INFINITY)).count;
    if (window.values.size() != expected) ++window_mismatch;
  }

  double worst = 0.0;
  for (const auto& [d, L] : {std::pair{1, 40}, std::pair{2, 9}, std::pair{3, 4}, std::pair{3, 5}}) {
    const auto values = full_spectrum(tridiagonalize(assemble_hamiltonian(CubeSpec(d, L))));
    const auto closed = free_spectrum_values(d, L);
    for (std::size_t i = 0; i < values.size(); ++i) worst = std::max(worst, std::abs(values[i] - closed[i]));
  }
  const double secs = seconds_since(t0);
  return {inertia_mismatch == 0 && window_mismatch == 0 && worst <= 1e-10 && secs <= 600.0,
          std::to_string(pairs) + " (matrix, shift) pairs, " + std::to_string(inertia_mismatch) +
              " inertia mismatches, " + std::to_string(window_mismatch) + "/20 window count mismatches, " +
              "free spectra max err " + fmt(worst) + "; " + fmt(secs) + " s"};
}

Verdict a11_dos() {
  const auto t0 = Clock::now();
  const auto g1 = dos_grid(1, 4000);
  double pointwise = 0.0;
  for (std::size_t i = 0; i < g1.energy.size(); ++i) {
    const double E = g1.energy[i];
    if (std::abs(E) > 1.95) continue;
    pointwise = std::max(pointwise, std::abs(g1.density[i] - 1.0 / (std::numbers::pi * std::sqrt(4.0 - E * E))));
  }

  double norm_err = 0.0;
  for (int r = 1; r <= 6; ++r) norm_err = std::max(norm_err, std::abs(dos_grid(r, 400).normalization - 1.0));

  const auto values = free_spectrum_values(3, 6);
  const double total = static_cast<double>(values.size());
  double ids_err = 0.0;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] - values[i] <= kEigenGroupTolerance) ++j;
    const double x = values[i];
    const double n = ids(3, -6.0, x);
    ids_err = std::max(ids_err, std::abs(n - static_cast<double>(i) / total));
    ids_err = std::max(ids_err, std::abs(n - static_cast<double>(j) / total));
    i = j;
  }

  bool bounded = true;
  std::ostringstream sups;
  for (int r = 1; r <= 4; ++r) {
    std::vector<double> coarse;
    std::vector<double> fine;
    for (int k = 1; k <= 400; ++k) coarse.push_back(0.25 * k);
    for (int k = 1; k <= 3200; ++k) fine.push_back(0.0625 * k);
    const double s1 = fourier_decay_check(r, coarse).sup_scaled;
    const double s2 = fourier_decay_check(r, fine).sup_scaled;
    bounded = bounded && std::isfinite(s2) && s2 <= 1.05 * s1 + 1e-12 && s2 < 10.0;
    sups << "r=" << r << " sup " << fmt(s2) << "; ";
  }
  const double secs = seconds_since(t0);
  return {pointwise <= 1e-8 && norm_err <= 1e-6 && ids_err <= 0.02 && bounded && secs <= 300.0,
          "n_1 err " + fmt(pointwise) + ", max |int n_r - 1| (r<=6) " + fmt(norm_err) + ", ids(3) vs L=6 sup " +
              fmt(ids_err) + ", " + sups.str() + fmt(secs) + " s"};
}

const char* kConjectureConfig = R"([run]
kind = conjecture
name = conjecture_d4

[model]
d = 4
E = 0
Ls = 24, 48, 96

[test_function]
shape = bump
center = 0
half_width = 1
)";

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(read_file(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Verdict a12_conjecture(const fs::path& work) {
  const auto t0 = Clock::now();
  const auto dir = work / "a12";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream log;
  const int code = run_text(kConjectureConfig, RunOptions{dir, 0, false}, log);
  const double secs = seconds_since(t0);
  if (code != kExitOk) return {false, "run exited " + std::to_string(code) + ": " + log.str()};
  const auto rows = read_csv(dir / "conjecture_d4.csv");
  if (rows.size() != 5) return {false, "expected header + 4 rows, got " + std::to_string(rows.size())};
  const double sc = std::stod(rows[4][2]);
  std::string table;
  for (std::size_t i = 1; i < rows.size(); ++i) table += rows[i][0] + "=" + rows[i][1] + " ";
  return {rows[4][0] == "limit" && sc <= 1e-3 && secs <= 1200.0,
          table + "self-convergence " + rows[4][2] + "; " + fmt(secs) + " s"};
}

struct ReproCase {
  std::string name;
  std::string text;
};

std::vector<ReproCase> repro_cases() {
  return {
      {"free", "[run]\nkind = free-measure\nname = free\n[model]\nd = 3\nL = 12\nE = 1.5\nK = 3\n"},
      {"random", "[run]\nkind = random-measure\nname = random\n[model]\nd = 2\nL = 6\nE = 1\nK = 3\n"
                 "[profile]\nkind = decaying\namplitude = 1\nepsilon = 0.5\n[law]\nkind = gaussian\nsigma = 1\n"
                 "[seeds]\nmaster = 4\n"},
      {"compare", "[run]\nkind = compare\nname = compare\n[model]\nd = 3\nLs = 2, 3\nE = 5\n"
                  "[profile]\nkind = decaying\namplitude = 1\nepsilon = 0.5\n[test_function]\nshape = bump\n"
                  "half_width = 4\n[seeds]\nmaster = 1\ncount = 3\n"},
      {"weak", "[run]\nkind = weak-coupling\nname = weak\n[model]\nd = 2\nE = 1\n[profile]\nkind = constant\n"
               "[scale]\nexponent = 0.3333333333333333\netas = 0.1, 0.03\n[test_function]\nshape = bump\n"
               "half_width = 4\n[seeds]\ncount = 3\n"},
      {"martingale", "[run]\nkind = martingale\nname = mart\n[model]\nd = 2\n[law]\nkind = uniform01\n"
                     "[martingale]\nepsilon = 1\nL_max = 30\n[seeds]\ncount = 4\n"},
      {"lemma2", "[run]\nkind = lemma2\nname = lemma2\n[model]\nd = 3\nE = 5\nK = 2\nLs = 20, 40\n"
                 "[lemma2]\ngammas = -0.9, -0.5\ngamma_Ls = 100, 200\n"},
      {"positivity", "[run]\nkind = positivity\nname = pos\n[model]\nd = 3\nE = 5\nK = 2\nL = 40\n"
                     "[positivity]\ndelta = 0.5\n"},
      {"dos", "[run]\nkind = dos\nname = dos3\n[dos]\nr = 3\ngrid_size = 200\nt_grid = 1, 5, 25\n"},
      {"conjecture", kConjectureConfig},
  };
}

Verdict a13_reproducible(const fs::path& work) {
  const auto t0 = Clock::now();
  int compared = 0;
  std::vector<std::string> bad;
  for (const auto& c : repro_cases()) {
    const auto first = work / "a13" / c.name / "first";
    const auto second = work / "a13" / c.name / "second";
    fs::remove_all(work / "a13" / c.name);
    fs::create_directories(first);
    fs::create_directories(second);
    std::ostringstream log;
    if (run_text(c.text, RunOptions{first, 0, false}, log) != kExitOk) {
      bad.push_back(c.name + " (first run failed: " + log.str() + ")");
      continue;
    }
    if (run_text(read_file(first / "manifest.json"), RunOptions{second, 0, false}, log) != kExitOk) {
      bad.push_back(c.name + " (rerun failed: " + log.str() + ")");
      continue;
    }
    int csvs = 0;
    for (const auto& entry : fs::directory_iterator(first)) {
      if (entry.path().extension() != ".csv") continue;
      ++csvs;
      ++compared;
      const auto other = second / entry.path().filename();
      if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
        bad.push_back(c.name + "/" + entry.path().filename().string());
      }
    }
    if (csvs == 0) bad.push_back(c.name + " (no CSV written)");
  }
  const double secs = seconds_since(t0);
  std::string detail = std::to_string(compared) + " CSVs across " + std::to_string(repro_cases().size()) +
                       " experiment kinds rerun from their manifests";
  if (!bad.empty()) {
    detail += "; differing:";
    for (const auto& b : bad) detail += " " + b;
  } else {
    detail += ", all byte-identical";
  }
  return {bad.empty(), detail + "; " + fmt(secs) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria A1-A13"};
  std::string work_dir = "acceptance_runs";
  std::vector<int> only;
  std::vector<int> known;
  app.add_option("--work-dir", work_dir, "directory for run outputs");
  app.add_option("--only", only, "criterion numbers to run (default all)");
  app.add_option("--known-failure", known, "criteria whose FAIL does not change the exit status");
  CLI11_PARSE(app, argc, argv);

  const fs::path work(work_dir);
  fs::create_directories(work);
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, a1_free_oracle},
      {2, a2_multiplicity},
      {3, a3_lattice},
      {4, a4_inequality},
      {5, a5_decay_trend},
      {6, a6_aux_trend},
      {7, a7_martingale},
      {8, a8_lemma2},
      {9, a9_positivity},
      {10, a10_eigensolve},
      {11, a11_dos},
      {12, [&] { return a12_conjecture(work); }},
      {13, [&] { return a13_reproducible(work); }},
  };
  const std::set<int> selected(only.begin(), only.end());
  const std::set<int> known_failures(known.begin(), known.end());
  int failures = 0;
  for (const auto& [id, check] : criteria) {
    if (!selected.empty() && !selected.count(id)) continue;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const bool known_failure = !v.pass && known_failures.count(id);
    if (!v.pass && !known_failure) ++failures;
    std::cout << "A" << id << " " << (v.pass ? "PASS" : "FAIL") << " " << v.detail
              << (known_failure ? " [known failure]" : "") << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
