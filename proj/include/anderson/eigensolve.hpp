#pragma once

#include <cstddef>
#include <vector>

#include "anderson/hamiltonian.hpp"
#include "anderson/parallel.hpp"

namespace anderson {

/// Symmetric tridiagonal matrix: diagonal alpha[0..N), off-diagonal beta[0..N-1).
struct TridiagonalForm {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;

  std::size_t order() const { return diagonal.size(); }
  /// Max absolute row sum.
  double norm_inf() const;
  double trace() const;
};

enum class InertiaMethod { sturm, banded_ldl };

/// Number of eigenvalues <= shift. Every counting routine here uses "<=".
struct InertiaCount {
  double shift;
  std::size_t count;
  InertiaMethod method;
};

/// Householder reduction to tridiagonal form (dense, O(N^3)). Matrices with
/// bandwidth <= 1 are copied through unchanged. Throws std::invalid_argument on
/// an empty or non-finite input.
TridiagonalForm tridiagonalize(const BandedSymmetricMatrix& m, Exec exec = Exec::parallel);
TridiagonalForm tridiagonalize(DenseSymmetric a, Exec exec = Exec::parallel);

namespace reference {
/// Plain serial Householder reduction working on the lower triangle only.
/// Kept as the independent baseline for tests and benchmarks.
TridiagonalForm tridiagonalize(const DenseSymmetric& a);
}  // namespace reference

/// Sturm sequence count of eigenvalues <= shift. Zero pivots are replaced by
/// -pivmin, which counts an exact eigenvalue at the shift.
InertiaCount sturm_count(const TridiagonalForm& t, double shift);

struct WindowEigenvalues {
  std::vector<double> values;   // ascending, repeated by multiplicity
  double resolution;            // bisection stopping width actually used
  bool tolerance_clamped;       // tol was below 4 ulp ||T||
};

/// Eigenvalues in the closed window [a, b] by bisection on sturm_count.
/// Each value is within max(tol, 4 ulp ||T||) of a true eigenvalue.
WindowEigenvalues eigs_in_window(const TridiagonalForm& t, double a, double b, double tol);

/// All eigenvalues, ascending, by implicit QL with Wilkinson shifts. Throws
/// NumericalError naming the index after 30 sweeps without convergence.
std::vector<double> full_spectrum(const TridiagonalForm& t);

/// Residual check for a computed spectrum: every value lambda_i is bracketed by
/// Sturm counts, count(lambda_i - tol) <= i < count(lambda_i + tol).
bool spectrum_brackets_hold(const TridiagonalForm& t, const std::vector<double>& ascending, double tol);

/// Inertia from a banded LDL^T of M - shift*I (no pivoting, O(N b^2)). A pivot
/// below 16 ulp ||M|| is taken as an exact eigenvalue at the shift: the shift is
/// nudged up by 64 ulp ||M|| and the factorization retried, so the count follows
/// the "<=" convention. A second breakdown throws NumericalError.
InertiaCount banded_inertia(const BandedSymmetricMatrix& m, double shift);

}  // namespace anderson
