#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "anderson/disorder.hpp"
#include "anderson/free_spectrum.hpp"
#include "anderson/parallel.hpp"
#include "anderson/test_function.hpp"

namespace anderson {

enum class MeasureSource { free, random };

std::string to_string(MeasureSource s);

struct MeasureInfo {
  int d = 1;
  int L = 1;
  double energy = 0.0;
  double half_width = 0.0;  // window [-K, K] in rescaled units
  MeasureSource source = MeasureSource::free;
};

struct Atom {
  double position;  // (L+1)(lambda - E)
  double weight;    // multiplicity (2L+1)^-(d-1)
};

/// Rescaled local spectral measure restricted to a closed window [-K, K].
struct AtomicMeasure {
  MeasureInfo info;
  std::vector<Atom> atoms;  // sorted by position

  double total_mass() const;
};

/// (2L+1)^-(d-1).
double volume_weight(int d, int L);

/// Closed-form free measure; enumerate_window with weights scaled by volume_weight.
AtomicMeasure free_measure(int d, int L, double E, double K, const EnumerationOptions& options = {});

enum class MeasureMethod { dense, counting };

std::string to_string(MeasureMethod m);

struct RandomMeasureOptions {
  std::size_t dense_cap = 4096;  // largest N for the dense path
  double eigen_tolerance = 1e-12;
  std::size_t counting_nodes = 512;
  Exec exec = Exec::parallel;
};

/// Dense path: Householder + Sturm bisection on [E - K/(L+1), E + K/(L+1)],
/// values grouped within kEigenGroupTolerance. No zero-field shortcut.
/// Throws ResourceError when N exceeds dense_cap.
AtomicMeasure random_measure_dense(const SiteField& field, double E, double K, const RandomMeasureOptions& options = {});

/// As random_measure_dense, but a zero field returns free_measure (so the two agree exactly).
AtomicMeasure random_measure(const SiteField& field, double E, double K, const RandomMeasureOptions& options = {});

/// Normalized counting function x -> (2L+1)^-(d-1) #{lambda <= E + x/(L+1)} on a uniform grid over
/// [lower, upper]: the value at each cell midpoint, just below lower, and at upper.
struct CountingFunction {
  MeasureInfo info;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> nodes;      // grid points, nodes.front() == lower, nodes.back() == upper
  std::vector<double> midpoint;   // C at cell midpoints, size nodes.size() - 1
  double below_lower = 0.0;       // C just below lower (so the window is closed)
  double at_upper = 0.0;

  double step() const { return nodes.size() > 1 ? nodes[1] - nodes[0] : 0.0; }
  /// Mass of the closed window [lower, upper].
  double mass() const { return at_upper - below_lower; }
};

/// Counting path: banded LDL^T inertia of H at each shift, shifts evaluated in parallel.
CountingFunction random_measure_counting(const SiteField& field, double E, double lower, double upper,
                                         const RandomMeasureOptions& options = {});

/// Sum of weight * f(position), pairwise summation.
double integrate(const AtomicMeasure& measure, const TestFunction& f);

struct CountingIntegral {
  double value = 0.0;
  double error_bound = 0.0;  // mass * sup|f'| * h / 2
  bool coarse = false;       // error_bound above the requested budget
};

/// -int f'(x) C(x) dx with C taken at cell midpoints. f must vanish outside
/// [lower, upper]; throws std::invalid_argument otherwise.
CountingIntegral integrate_counting(const CountingFunction& counting, const TestFunction& f, double error_budget = 1e-3);

/// int f d(random) - int f d(free). Throws std::invalid_argument on a (d, L, E) mismatch.
double x_statistic(const AtomicMeasure& free, const AtomicMeasure& random, const TestFunction& f);
CountingIntegral x_statistic(const AtomicMeasure& free, const CountingFunction& random, const TestFunction& f);

/// ||(i+xi) fhat||_1 (2L+1)^-(d-2) sum_n |v_n|.
double bound_rhs(const TestFunction& f, const SiteField& field);

}  // namespace anderson
