#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anderson/parallel.hpp"

namespace anderson {

/// Grouping tolerance for equal eigenvalues of the free operator (absolute, in
/// energy units). Closed-form cosine sums that are equal in exact arithmetic
/// differ by a few ulps; distinct ones at audited sizes are far apart.
inline constexpr double kEigenGroupTolerance = 1e-9;

/// j*pi / (2(L+1)), 1 <= j <= 2L+1.
double free_angle(int j, int L);

/// 2 cos(free_angle(j, L)); strictly decreasing in j.
double free_eigenvalue_1d(int j, int L);

/// Eigenpair of the 1-d cube Laplacian on {-L..L}.
struct Eigen1d {
  int j;
  int L;
  double value;
  /// cos(theta m) for odd j, sin(theta m) for even j (unnormalized).
  double operator()(int m) const;
};

/// Throws std::out_of_range unless 1 <= j <= 2L+1.
Eigen1d eigen_1d(int j, int L);

/// Contiguous run of 1-d indices; empty when last < first.
struct IndexRange {
  int first = 1;
  int last = 0;
  int count() const { return last >= first ? last - first + 1 : 0; }
};

/// Indices j with 2cos(theta_{j,L}) in the closed interval [a, b]. The arccos
/// estimate is corrected by direct comparison at the two boundary indices.
IndexRange window_indices_1d(int L, double a, double b);

/// window_indices_1d(L, a, b).count(); 0 when a > b.
int count_1d_window(int L, double a, double b);

struct FreeAtom {
  double position;          // (L+1)(lambda - E)
  std::int64_t multiplicity;
};

/// Free eigenvalues with (L+1)|lambda - E| <= K, grouped and sorted by position.
struct FreeAtomList {
  int d = 1;
  int L = 1;
  double energy = 0.0;
  double half_width = 0.0;
  std::vector<FreeAtom> atoms;

  std::int64_t total_multiplicity() const;
};

struct EnumerationOptions {
  /// Upper limit on raw eigenvalues (tuples) collected before grouping.
  std::size_t atom_cap = 100'000'000;
  Exec exec = Exec::parallel;
};

/// All closed-form eigenvalues lambda = sum_l 2cos(theta_{j_l}) in
/// [E - K/(L+1), E + K/(L+1)], unsorted; recursion over the first d-1 indices
/// with range pruning, last index by window_indices_1d. Throws ResourceError
/// naming the cap when more than options.atom_cap values would be produced.
std::vector<double> window_eigenvalues(int d, int L, double E, double K, const EnumerationOptions& options = {});

/// window_eigenvalues grouped into atoms (equal within kEigenGroupTolerance).
/// Requires d >= 1, K > 0, |E| <= 2d; throws std::invalid_argument otherwise.
FreeAtomList enumerate_window(int d, int L, double E, double K, const EnumerationOptions& options = {});

/// Every closed-form eigenvalue of the d-dimensional cube Laplacian, sorted.
std::vector<double> free_spectrum_values(int d, int L, std::size_t cap = 50'000'000);

struct ValueGroup {
  double value;
  std::int64_t count;
};

/// Groups a sorted list: a run stays in one group while it is within `tolerance`
/// of the run's first element. Group value is the run mean.
std::vector<ValueGroup> group_sorted_values(const std::vector<double>& sorted, double tolerance);

struct MultiplicityAudit {
  int d;
  int L;
  std::int64_t max_multiplicity;
  double at_value;
  std::int64_t bound;  // d (2L+1)^(d-1)
  bool pass;
};

/// Largest eigenvalue multiplicity of the free cube Laplacian against d(2L+1)^(d-1).
MultiplicityAudit multiplicity_audit(int d, int L, std::size_t cap = 50'000'000);

}  // namespace anderson
