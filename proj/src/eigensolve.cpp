#include "anderson/eigensolve.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "anderson/error.hpp"

namespace anderson {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

TridiagonalForm copy_tridiagonal(const BandedSymmetricMatrix& m) {
  const std::size_t n = m.order();
  TridiagonalForm t;
  t.diagonal.resize(n);
  t.offdiagonal.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) t.diagonal[i] = m.lower(i, i);
  if (m.bandwidth() >= 1) {
    for (std::size_t i = 0; i + 1 < n; ++i) t.offdiagonal[i] = m.lower(i + 1, i);
  }
  return t;
}

}  // namespace

double TridiagonalForm::norm_inf() const {
  double best = 0.0;
  const std::size_t n = order();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(offdiagonal[i - 1]);
    if (i + 1 < n) row += std::abs(offdiagonal[i]);
    best = std::max(best, row);
  }
  return best;
}

double TridiagonalForm::trace() const {
  double s = 0.0;
  for (double x : diagonal) s += x;
  return s;
}

TridiagonalForm tridiagonalize(const BandedSymmetricMatrix& m, Exec exec) {
  if (m.order() == 0) throw std::invalid_argument("tridiagonalize: empty matrix");
  if (!m.all_finite()) throw std::invalid_argument("tridiagonalize: non-finite matrix entry");
  if (m.bandwidth() <= 1) return copy_tridiagonal(m);
  return tridiagonalize(to_dense(m), exec);
}

TridiagonalForm tridiagonalize(DenseSymmetric a, Exec exec) {
  const std::size_t n = a.n;
  if (n == 0) throw std::invalid_argument("tridiagonalize: empty matrix");
  for (double x : a.a)
    if (!std::isfinite(x)) throw std::invalid_argument("tridiagonalize: non-finite matrix entry");

  TridiagonalForm t;
  t.diagonal.assign(n, 0.0);
  t.offdiagonal.assign(n - 1, 0.0);
  std::vector<double> v(n), p(n), w(n), v_next(n), p_next(n);
  double tau = 0.0;
  double tau_next = 0.0;

  // Householder vector for column k; false when it is already reduced
  auto reflector = [&](std::size_t k, std::vector<double>& out, double& out_tau) {
    const std::size_t m = n - k - 1;
    const double* x = &a(k, k + 1);  // row k right of the diagonal == column k below it
    const double alpha = x[0];
    double tail = 0.0;
    for (std::size_t i = 1; i < m; ++i) tail += x[i] * x[i];
    if (tail == 0.0) {
      t.offdiagonal[k] = alpha;
      return false;
    }
    const double beta = -std::copysign(std::sqrt(alpha * alpha + tail), alpha);
    out_tau = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    out[0] = 1.0;
    for (std::size_t i = 1; i < m; ++i) out[i] = x[i] * scale;
    t.offdiagonal[k] = beta;
    return true;
  };
  // Only the upper triangle is read and updated. Rows [i0, m) of the trailing block at
  // `first` get A -= v w^T + w v^T when `vu` is set; with `vn` set, out = tau_n * B vn for the
  // block B starting at local index o. Scatter partials are kept per fixed row chunk.
  constexpr std::ptrdiff_t kChunks = 16;
  std::vector<double> scatter(static_cast<std::size_t>(kChunks) * n);
  auto sweep = [&](std::size_t first, std::size_t m, std::size_t i0, const double* vu, const double* wu,
                   std::size_t o, const double* vn, double tau_n, double* out) {
    const std::size_t mp = vn ? m - o : 0;
    if (vn) std::fill(scatter.begin(), scatter.begin() + static_cast<std::ptrdiff_t>(kChunks * mp), 0.0);
    const std::size_t rows = m - i0;
#pragma omp parallel for schedule(static) if (is_parallel(exec))
    for (std::ptrdiff_t c = 0; c < kChunks; ++c) {
      const std::size_t lo = i0 + rows * static_cast<std::size_t>(c) / kChunks;
      const std::size_t hi = i0 + rows * static_cast<std::size_t>(c + 1) / kChunks;
      double* q = vn ? scatter.data() + static_cast<std::size_t>(c) * mp : nullptr;
      for (std::size_t i = lo; i < hi; ++i) {
        double* row = &a(first + i, first);
        if (vu) {
          const double vi = vu[i];
          const double wi = wu[i];
#pragma omp simd
          for (std::size_t j = i; j < m; ++j) row[j] -= vi * wu[j] + wi * vu[j];
        }
        if (vn && i >= o) {
          const double* rb = row + o;
          const double* vb = vn;
          const std::size_t ib = i - o;
          const double vi = vb[ib];
          double s = rb[ib] * vi;
#pragma omp simd reduction(+ : s)
          for (std::size_t j = ib + 1; j < mp; ++j) {
            s += rb[j] * vb[j];
            q[j] += rb[j] * vi;
          }
          out[ib] = s;
        }
      }
    }
    if (vn) {
      for (std::size_t i = 0; i < mp; ++i) {
        double s = out[i];
        for (std::ptrdiff_t c = 0; c < kChunks; ++c) s += scatter[static_cast<std::size_t>(c) * mp + i];
        out[i] = tau_n * s;
      }
    }
  };
  auto product = [&](std::size_t k, const std::vector<double>& vk, double tk, std::vector<double>& out) {
    sweep(k + 1, n - k - 1, 0, nullptr, nullptr, 0, vk.data(), tk, out.data());
  };

  bool active = n > 2 && reflector(0, v, tau);
  if (active) product(0, v, tau, p);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    t.diagonal[k] = a(k, k);
    if (!active) {
      active = k + 3 < n && reflector(k + 1, v, tau);
      if (active) product(k + 1, v, tau, p);
      continue;
    }
    double pv = 0.0;
    for (std::size_t i = 0; i < m; ++i) pv += p[i] * v[i];
    const double c = 0.5 * tau * pv;
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - c * v[i];

    {
      double* row = &a(k + 1, k + 1);
      for (std::size_t j = 0; j < m; ++j) row[j] -= v[0] * w[j] + w[0] * v[j];
    }
    const bool next = k + 3 < n && reflector(k + 1, v_next, tau_next);
    sweep(k + 1, m, 1, v.data(), w.data(), 1, next ? v_next.data() : nullptr, tau_next, p_next.data());
    active = next;
    if (next) {
      std::swap(v, v_next);
      std::swap(p, p_next);
      tau = tau_next;
    }
  }
  if (n >= 2) {
    t.diagonal[n - 2] = a(n - 2, n - 2);
    t.offdiagonal[n - 2] = a(n - 2, n - 1);
  }
  t.diagonal[n - 1] = a(n - 1, n - 1);
  return t;
}

InertiaCount sturm_count(const TridiagonalForm& t, double shift) {
  const std::size_t n = t.order();
  double max_beta2 = 1.0;
  for (double b : t.offdiagonal) max_beta2 = std::max(max_beta2, b * b);
  const double pivmin = DBL_MIN * max_beta2;

  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    q = (t.diagonal[i] - shift) - (i > 0 ? (t.offdiagonal[i - 1] * t.offdiagonal[i - 1]) / q : 0.0);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return {shift, count, InertiaMethod::sturm};
}

namespace {

struct Bisector {
  const TridiagonalForm& t;
  double a;
  double b;
  double width;
  std::vector<double>& out;

  void split(double lo, double hi, std::size_t nlo, std::size_t nhi) {
    if (nhi <= nlo) return;
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= width || mid <= lo || mid >= hi) {
      const double value = std::clamp(mid, a, b);
      out.insert(out.end(), nhi - nlo, value);
      return;
    }
    const std::size_t nmid = sturm_count(t, mid).count;
    split(lo, mid, nlo, nmid);
    split(mid, hi, nmid, nhi);
  }
};

}  // namespace

WindowEigenvalues eigs_in_window(const TridiagonalForm& t, double a, double b, double tol) {
  if (!(a <= b)) throw std::invalid_argument("eigs_in_window: need a <= b");
  if (!(tol > 0.0)) throw std::invalid_argument("eigs_in_window: tol must be > 0");
  const double floor_width = 4.0 * kEps * std::max(t.norm_inf(), DBL_MIN);
  WindowEigenvalues result{{}, std::max(tol, floor_width), tol < floor_width};

  const double lo = std::nextafter(a, -std::numeric_limits<double>::infinity());
  const std::size_t nlo = sturm_count(t, lo).count;
  const std::size_t nhi = sturm_count(t, b).count;
  result.values.reserve(nhi > nlo ? nhi - nlo : 0);
  Bisector{t, a, b, result.resolution, result.values}.split(lo, b, nlo, nhi);
  return result;
}

std::vector<double> full_spectrum(const TridiagonalForm& t) {
  const std::size_t n = t.order();
  std::vector<double> d = t.diagonal;
  std::vector<double> e(n, 0.0);
  std::copy(t.offdiagonal.begin(), t.offdiagonal.end(), e.begin());
  const double floor = kEps * t.norm_inf();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd || std::abs(e[m]) <= floor) break;
      }
      if (m != l) {
        if (iter++ == 30) {
          throw NumericalError("full_spectrum: no convergence after 30 sweeps for eigenvalue index " +
                               std::to_string(l));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double bb = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * bb;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - bb;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

bool spectrum_brackets_hold(const TridiagonalForm& t, const std::vector<double>& ascending, double tol) {
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    if (sturm_count(t, ascending[i] - tol).count > i) return false;
    if (sturm_count(t, ascending[i] + tol).count <= i) return false;
  }
  return true;
}

namespace {

// Returns false on a pivot breakdown.
bool banded_ldl_count(const BandedSymmetricMatrix& m, double shift, double breakdown, std::size_t& count) {
  const std::size_t n = m.order();
  const std::size_t b = m.bandwidth();
  const std::size_t ring = b + 1;
  // Row i keeps L(i, i-b .. i-1) and W(i, k) = L(i, k) D(k) at offset k - (i - b).
  std::vector<double> lrows(ring * std::max<std::size_t>(b, 1), 0.0);
  std::vector<double> wrow(std::max<std::size_t>(b, 1), 0.0);
  std::vector<double> diag(n, 0.0);

  count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = i > b ? i - b : 0;
    double* li = &lrows[(i % ring) * std::max<std::size_t>(b, 1)];
    const std::ptrdiff_t base_i = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(b);
    double di = m.lower(i, i) - shift;
    for (std::size_t j = j0; j < i; ++j) {
      const double* lj = &lrows[(j % ring) * std::max<std::size_t>(b, 1)];
      const std::ptrdiff_t base_j = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(b);
      double s = m.lower(i, j);
      for (std::size_t k = j0; k < j; ++k) {
        s -= wrow[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) - base_i)] *
             lj[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) - base_j)];
      }
      const double lij = s / diag[j];
      const auto off = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(j) - base_i);
      wrow[off] = s;
      li[off] = lij;
      di -= lij * s;
    }
    if (std::abs(di) < breakdown || !std::isfinite(di)) return false;
    diag[i] = di;
    if (di < 0.0) ++count;
  }
  return true;
}

}  // namespace

InertiaCount banded_inertia(const BandedSymmetricMatrix& m, double shift) {
  const double scale = std::max(m.norm_inf() + std::abs(shift), DBL_MIN);
  const double breakdown = 16.0 * kEps * scale;
  std::size_t count = 0;
  if (banded_ldl_count(m, shift, breakdown, count)) return {shift, count, InertiaMethod::banded_ldl};
  const double nudged = shift + 64.0 * kEps * scale;
  if (banded_ldl_count(m, nudged, breakdown, count)) return {shift, count, InertiaMethod::banded_ldl};
  throw NumericalError("banded_inertia: LDL^T pivot breakdown at shift and at the nudged shift");
}

}  // namespace anderson
