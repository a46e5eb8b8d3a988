#include "anderson/free_spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "anderson/error.hpp"

namespace anderson {

double free_angle(int j, int L) { return (static_cast<double>(j) * std::numbers::pi) / (2.0 * (L + 1)); }

double free_eigenvalue_1d(int j, int L) { return 2.0 * std::cos(free_angle(j, L)); }

double Eigen1d::operator()(int m) const {
  const double theta = free_angle(j, L);
  return (j % 2 == 1) ? std::cos(theta * m) : std::sin(theta * m);
}

Eigen1d eigen_1d(int j, int L) {
  if (L < 1 || j < 1 || j > 2 * L + 1) {
    throw std::out_of_range("eigen_1d: index j=" + std::to_string(j) + " outside [1, 2L+1] for L=" +
                            std::to_string(L));
  }
  return {j, L, free_eigenvalue_1d(j, L)};
}

namespace {

// Indices j in [1, 2L+1] with offset + vals[j] in [a, b]; vals is decreasing.
IndexRange offset_range(int L, const double* vals, double offset, double a, double b) {
  const int jmax = 2 * L + 1;
  const double scale = 2.0 * (L + 1) / std::numbers::pi;
  auto estimate = [&](double x) {
    const double c = std::clamp((x - offset) / 2.0, -1.0, 1.0);
    return scale * std::acos(c);
  };
  auto in_upper = [&](int j) { return offset + vals[j] <= b; };
  auto in_lower = [&](int j) { return offset + vals[j] >= a; };

  IndexRange r;
  if (!(a <= b)) return r;

  // first index with value <= b
  int first = static_cast<int>(std::clamp(std::ceil(estimate(b)), 1.0, static_cast<double>(jmax + 1)));
  while (first > 1 && in_upper(first - 1)) --first;
  while (first <= jmax && !in_upper(first)) ++first;

  // last index with value >= a
  int last = static_cast<int>(std::clamp(std::floor(estimate(a)), 0.0, static_cast<double>(jmax)));
  while (last < jmax && in_lower(last + 1)) ++last;
  while (last >= 1 && !in_lower(last)) --last;

  r.first = first;
  r.last = last;
  return r;
}

std::vector<double> value_table(int L) {
  std::vector<double> vals(static_cast<std::size_t>(2 * L + 2), 0.0);
  for (int j = 1; j <= 2 * L + 1; ++j) vals[static_cast<std::size_t>(j)] = free_eigenvalue_1d(j, L);
  return vals;
}

struct WindowWalk {
  int d;
  int L;
  double lo;
  double hi;
  double vmax;
  const double* vals;
  std::size_t cap;
  std::atomic<std::size_t>* produced;
  std::atomic<bool>* overflow;

  void descend(int level, double partial, std::vector<double>& out) const {
    if (overflow->load(std::memory_order_relaxed)) return;
    const int remaining = d - 1 - level;
    if (remaining == 0) {
      const IndexRange r = offset_range(L, vals, partial, lo, hi);
      if (r.count() == 0) return;
      if (produced->fetch_add(static_cast<std::size_t>(r.count())) + static_cast<std::size_t>(r.count()) > cap) {
        overflow->store(true);
        return;
      }
      for (int j = r.first; j <= r.last; ++j) out.push_back(partial + vals[j]);
      return;
    }
    const double reach = remaining * vmax;
    const double slack = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
    const IndexRange r = offset_range(L, vals, partial, lo - reach - slack, hi + reach + slack);
    for (int j = r.first; j <= r.last; ++j) descend(level + 1, partial + vals[j], out);
  }
};

}  // namespace

IndexRange window_indices_1d(int L, double a, double b) {
  const auto vals = value_table(L);
  return offset_range(L, vals.data(), 0.0, a, b);
}

int count_1d_window(int L, double a, double b) { return window_indices_1d(L, a, b).count(); }

std::int64_t FreeAtomList::total_multiplicity() const {
  std::int64_t s = 0;
  for (const auto& a : atoms) s += a.multiplicity;
  return s;
}

std::vector<double> window_eigenvalues(int d, int L, double E, double K, const EnumerationOptions& options) {
  if (d < 1) throw std::invalid_argument("window enumeration needs d >= 1");
  if (L < 1) throw std::invalid_argument("window enumeration needs L >= 1");
  if (!(K > 0.0)) throw std::invalid_argument("window half width K must be > 0");

  const auto vals = value_table(L);
  const double w = K / (L + 1);
  std::atomic<std::size_t> produced{0};
  std::atomic<bool> overflow{false};
  const WindowWalk walk{d, L, E - w, E + w, vals[1], vals.data(), options.atom_cap, &produced, &overflow};

  std::vector<double> out;
  if (d == 1) {
    walk.descend(0, 0.0, out);
  } else {
    const double reach = (d - 1) * vals[1];
    const double slack = 1e-12 * (1.0 + std::abs(E) + w);
    const IndexRange outer = offset_range(L, vals.data(), 0.0, E - w - reach - slack, E + w + reach + slack);
    std::vector<std::vector<double>> per_index(static_cast<std::size_t>(outer.count()));
#pragma omp parallel for schedule(dynamic) if (is_parallel(options.exec))
    for (int k = 0; k < outer.count(); ++k) {
      const int j = outer.first + k;
      walk.descend(1, vals[static_cast<std::size_t>(j)], per_index[static_cast<std::size_t>(k)]);
    }
    std::size_t total = 0;
    for (const auto& v : per_index) total += v.size();
    if (!overflow.load()) {
      out.reserve(total);
      for (const auto& v : per_index) out.insert(out.end(), v.begin(), v.end());
    }
  }
  if (overflow.load()) {
    throw ResourceError("free window enumeration exceeded atom_cap=" + std::to_string(options.atom_cap) +
                        " (d=" + std::to_string(d) + ", L=" + std::to_string(L) + ")");
  }
  return out;
}

std::vector<ValueGroup> group_sorted_values(const std::vector<double>& sorted, double tolerance) {
  std::vector<ValueGroup> groups;
  std::size_t start = 0;
  while (start < sorted.size()) {
    std::size_t end = start + 1;
    double sum = sorted[start];
    while (end < sorted.size() && sorted[end] - sorted[start] <= tolerance) sum += sorted[end++];
    const auto count = static_cast<std::int64_t>(end - start);
    groups.push_back({sum / static_cast<double>(count), count});
    start = end;
  }
  return groups;
}

FreeAtomList enumerate_window(int d, int L, double E, double K, const EnumerationOptions& options) {
  if (!(std::abs(E) <= 2.0 * d)) {
    throw std::invalid_argument("reference energy E must satisfy |E| <= 2d");
  }
  auto values = window_eigenvalues(d, L, E, K, options);
  std::sort(values.begin(), values.end());
  FreeAtomList list{d, L, E, K, {}};
  const auto groups = group_sorted_values(values, kEigenGroupTolerance);
  list.atoms.reserve(groups.size());
  for (const auto& g : groups) list.atoms.push_back({(L + 1) * (g.value - E), g.count});
  return list;
}

std::vector<double> free_spectrum_values(int d, int L, std::size_t cap) {
  if (d < 1 || L < 1) throw std::invalid_argument("free spectrum needs d >= 1 and L >= 1");
  const std::size_t side = static_cast<std::size_t>(2 * L + 1);
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > cap / side) {
      throw ResourceError("free spectrum (2L+1)^d exceeds enumeration cap " + std::to_string(cap));
    }
    total *= side;
  }
  const auto vals = value_table(L);
  std::vector<double> out;
  out.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(d), 1);
  for (std::size_t n = 0; n < total; ++n) {
    double s = 0.0;
    for (int j : idx) s += vals[static_cast<std::size_t>(j)];
    out.push_back(s);
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] <= 2 * L + 1) break;
      idx[k] = 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MultiplicityAudit multiplicity_audit(int d, int L, std::size_t cap) {
  const auto values = free_spectrum_values(d, L, cap);
  const auto groups = group_sorted_values(values, kEigenGroupTolerance);
  MultiplicityAudit audit{d, L, 0, 0.0, 1, true};
  for (const auto& g : groups) {
    if (g.count > audit.max_multiplicity) {
      audit.max_multiplicity = g.count;
      audit.at_value = g.value;
    }
  }
  std::int64_t bound = d;
  for (int i = 0; i < d - 1; ++i) bound *= 2 * L + 1;
  audit.bound = bound;
  audit.pass = audit.max_multiplicity <= bound;
  return audit;
}

}  // namespace anderson
