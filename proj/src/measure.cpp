#include "anderson/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "anderson/eigensolve.hpp"
#include "anderson/error.hpp"
#include "anderson/hamiltonian.hpp"

namespace anderson {

namespace {

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

void check_window(double E, double K) {
  if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("window half width K must be finite and > 0");
  if (!std::isfinite(E)) throw std::invalid_argument("energy must be finite");
}

void check_match(const MeasureInfo& a, const MeasureInfo& b) {
  if (a.d != b.d || a.L != b.L || a.energy != b.energy) {
    throw std::invalid_argument("x_statistic: measures disagree on (d, L, E)");
  }
}

}  // namespace

std::string to_string(MeasureSource s) { return s == MeasureSource::free ? "free" : "random"; }

std::string to_string(MeasureMethod m) { return m == MeasureMethod::dense ? "dense" : "counting"; }

double AtomicMeasure::total_mass() const {
  std::vector<double> w;
  w.reserve(atoms.size());
  for (const auto& a : atoms) w.push_back(a.weight);
  return pairwise_sum(w.data(), w.size());
}

double volume_weight(int d, int L) { return std::pow(2.0 * L + 1.0, -(d - 1)); }

AtomicMeasure free_measure(int d, int L, double E, double K, const EnumerationOptions& options) {
  check_window(E, K);
  const FreeAtomList list = enumerate_window(d, L, E, K, options);
  const double v = volume_weight(d, L);
  AtomicMeasure m{{d, L, E, K, MeasureSource::free}, {}};
  m.atoms.reserve(list.atoms.size());
  for (const auto& a : list.atoms) m.atoms.push_back({a.position, static_cast<double>(a.multiplicity) * v});
  return m;
}

AtomicMeasure random_measure_dense(const SiteField& field, double E, double K, const RandomMeasureOptions& options) {
  check_window(E, K);
  const CubeSpec& cube = field.cube;
  if (cube.size() > options.dense_cap) {
    throw ResourceError("dense path: N = " + std::to_string(cube.size()) + " exceeds dense_cap " +
                        std::to_string(options.dense_cap));
  }
  const int d = cube.dimension();
  const int L = cube.half_side();
  const double scale = L + 1.0;
  const auto t = tridiagonalize(assemble_hamiltonian(cube, field), options.exec);
  const auto window = eigs_in_window(t, E - K / scale, E + K / scale, options.eigen_tolerance);
  const auto groups = group_sorted_values(window.values, kEigenGroupTolerance);
  const double v = volume_weight(d, L);
  AtomicMeasure m{{d, L, E, K, MeasureSource::random}, {}};
  m.atoms.reserve(groups.size());
  for (const auto& g : groups) m.atoms.push_back({scale * (g.value - E), static_cast<double>(g.count) * v});
  return m;
}

AtomicMeasure random_measure(const SiteField& field, double E, double K, const RandomMeasureOptions& options) {
  if (field.is_zero()) {
    AtomicMeasure m = free_measure(field.cube.dimension(), field.cube.half_side(), E, K, {100'000'000, options.exec});
    m.info.source = MeasureSource::random;
    return m;
  }
  return random_measure_dense(field, E, K, options);
}

CountingFunction random_measure_counting(const SiteField& field, double E, double lower, double upper,
                                         const RandomMeasureOptions& options) {
  if (!(lower < upper)) throw std::invalid_argument("counting grid needs lower < upper");
  if (options.counting_nodes < 2) throw std::invalid_argument("counting grid needs at least 2 nodes");
  const CubeSpec& cube = field.cube;
  const int d = cube.dimension();
  const int L = cube.half_side();
  const double scale = L + 1.0;
  const double v = volume_weight(d, L);
  const auto H = assemble_hamiltonian(cube, field);

  CountingFunction c;
  c.info = {d, L, E, std::max(std::abs(lower), std::abs(upper)), MeasureSource::random};
  c.lower = lower;
  c.upper = upper;
  const std::size_t n = options.counting_nodes;
  const double h = (upper - lower) / static_cast<double>(n - 1);
  c.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.nodes[i] = lower + h * static_cast<double>(i);
  c.nodes.back() = upper;

  // shifts: cell midpoints, then just below lower, then upper
  std::vector<double> shifts(n + 1);
  for (std::size_t i = 0; i + 1 < n; ++i) shifts[i] = E + 0.5 * (c.nodes[i] + c.nodes[i + 1]) / scale;
  shifts[n - 1] = std::nextafter(E + lower / scale, -std::numeric_limits<double>::infinity());
  shifts[n] = E + upper / scale;
  std::vector<std::size_t> counts(shifts.size());
  const auto m = static_cast<std::int64_t>(shifts.size());
#pragma omp parallel for schedule(dynamic) if (is_parallel(options.exec))
  for (std::int64_t i = 0; i < m; ++i) {
    counts[static_cast<std::size_t>(i)] = banded_inertia(H, shifts[static_cast<std::size_t>(i)]).count;
  }
  c.midpoint.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) c.midpoint[i] = v * static_cast<double>(counts[i]);
  c.below_lower = v * static_cast<double>(counts[n - 1]);
  c.at_upper = v * static_cast<double>(counts[n]);
  return c;
}

double integrate(const AtomicMeasure& measure, const TestFunction& f) {
  std::vector<double> terms;
  terms.reserve(measure.atoms.size());
  for (const auto& a : measure.atoms) terms.push_back(a.weight * f(a.position));
  return pairwise_sum(terms.data(), terms.size());
}

CountingIntegral integrate_counting(const CountingFunction& counting, const TestFunction& f, double error_budget) {
  CountingIntegral out;
  if (f.is_zero()) return out;
  const auto [lo, hi] = f.support();
  if (lo < counting.lower || hi > counting.upper) {
    throw std::invalid_argument("integrate_counting: grid [" + std::to_string(counting.lower) + ", " +
                                std::to_string(counting.upper) + "] does not cover supp f");
  }
  const std::size_t n = counting.nodes.size();
  std::vector<double> terms(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    terms[i] = -counting.midpoint[i] * (f(counting.nodes[i + 1]) - f(counting.nodes[i]));
  }
  out.value = pairwise_sum(terms.data(), terms.size());
  out.error_bound = counting.mass() * f.derivative_sup(1) * 0.5 * counting.step();
  out.coarse = out.error_bound > error_budget;
  return out;
}

double x_statistic(const AtomicMeasure& free, const AtomicMeasure& random, const TestFunction& f) {
  check_match(free.info, random.info);
  return integrate(random, f) - integrate(free, f);
}

CountingIntegral x_statistic(const AtomicMeasure& free, const CountingFunction& random, const TestFunction& f) {
  check_match(free.info, random.info);
  CountingIntegral r = integrate_counting(random, f);
  r.value -= integrate(free, f);
  return r;
}

double bound_rhs(const TestFunction& f, const SiteField& field) {
  const int d = field.cube.dimension();
  const int L = field.cube.half_side();
  const double sum = field.absolute_potential_sum();
  if (sum == 0.0 || f.is_zero()) return 0.0;
  return f.fourier_norm().value * std::pow(2.0 * L + 1.0, -(d - 2)) * sum;
}

}  // namespace anderson
