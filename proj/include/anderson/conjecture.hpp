#pragma once

#include <string>
#include <vector>

#include "anderson/parallel.hpp"
#include "anderson/test_function.hpp"

namespace anderson {

/// sum_k int_0^pi sin(theta) n_{d-1}(E - 2cos theta) f(pi k sin theta) dtheta.
struct ConjectureSpec {
  int d = 4;
  double energy = 0.0;
  /// Largest |k| summed explicitly; 0 picks max(64, 8 * support radius).
  int k_max = 0;
  /// Relative tolerance of the adaptive Gauss-Kronrod theta quadrature per term. n_3 and
  /// n_4 are themselves only good to about 1e-10, so tighter values do not help.
  double theta_tolerance = 1e-10;
  /// 61-point instead of 31-point Gauss-Kronrod rule.
  bool high_order = false;
  /// Doublings of k_max (61-point rule) tried before giving up.
  int max_refinements = 3;
  double self_convergence_target = 1e-3;
  Exec exec = Exec::parallel;
};

struct ConjectureValue {
  double value = 0.0;
  double k0_term = 0.0;     // f(0) N_{d-1}((E-2, E+2)) / 2
  double tail = 0.0;        // asymptotic sum of the |k| > k_max terms
  int k_max = 0;
  bool high_order = false;
};

struct ConjectureResult {
  ConjectureValue coarse;
  ConjectureValue refined;   // 2 k_max, 61-point rule
  double value = 0.0;        // refined.value
  double self_convergence = 0.0;  // |refined - coarse| / max(|refined|, tiny)
  std::vector<std::string> notes;
};

/// One evaluation at fixed truncation. Throws std::invalid_argument for d < 2 or
/// |E| >= 2d, NumericalError when n_{d-1} is infinite at E - 2 or E + 2 (the k-sum
/// then diverges).
ConjectureValue conjecture_value(const ConjectureSpec& spec, const TestFunction& f);

/// Refines until the relative change is below the target; throws NumericalError with
/// the last two values when max_refinements is exhausted.
ConjectureResult conjecture_integral(const ConjectureSpec& spec, const TestFunction& f);

struct ConjectureComparisonRow {
  std::string label;  // "L=24", ..., "limit"
  int L = 0;          // 0 for the limit row
  double value = 0.0;
  double self_convergence = 0.0;  // 0 for finite-L rows (exact enumeration)
};

struct ConjectureComparison {
  ConjectureResult limit;
  std::vector<ConjectureComparisonRow> rows;
};

/// int f d(mu^0_{L,E}) at each L next to the conjectured limit.
ConjectureComparison conjecture_comparison(const ConjectureSpec& spec, const TestFunction& f, const std::vector<int>& Ls);

}  // namespace anderson
