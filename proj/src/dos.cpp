#include "anderson/dos.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>

#include "anderson/error.hpp"

namespace anderson {

namespace {

constexpr double kPi = std::numbers::pi;

// One integrator per nesting level: an integrand may itself integrate.
thread_local int nesting = 0;

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local std::vector<std::unique_ptr<boost::math::quadrature::tanh_sinh<double>>> pool;
  const auto level = static_cast<std::size_t>(nesting);
  while (pool.size() <= level) pool.push_back(std::make_unique<boost::math::quadrature::tanh_sinh<double>>(10));
  return *pool[level];
}

struct Nested {
  Nested() { ++nesting; }
  ~Nested() { --nesting; }
  Nested(const Nested&) = delete;
  Nested& operator=(const Nested&) = delete;
};

// tanh-sinh with exact distances to the ends: h(x, dl, dr), dl = x - a, dr = b - x,
// one of which is exact near its end.
template <typename H>
double ts_integrate(const H& h, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  auto& ts = integrator();
  const Nested guard;
  return ts.integrate(
      [&](double, double xc) {
        double dl, dr, x;
        if (xc < 0.0) {
          dl = -xc;
          dr = (b - a) - dl;
          x = a + dl;
        } else {
          dr = xc;
          dl = (b - a) - dr;
          x = b - dr;
        }
        const double v = h(x, dl, dr);
        return std::isfinite(v) ? v : 0.0;
      },
      a, b, tol);
}

// Values y = E - 2cos(theta) on one angle piece, with the gaps to the values at both
// ends computed without cancellation.
struct AnglePoint {
  double y;
  double yl;  // value at the left end
  double gl;  // y - yl >= 0
  double yr;  // value at the right end
  double gr;  // yr - y >= 0
};

// (1/pi) int over [0, pi] of g(E - 2cos theta), restricted to E - 2cos theta in (lo, hi)
// and cut where it passes a singular value.
template <typename G>
double angle_average(const G& g, double E, double lo, double hi, const std::vector<double>& singular, double tol) {
  // E - 2cos theta increases with theta
  struct Cut {
    double theta;
    double value;
  };
  auto cut_at = [E](double v) { return Cut{std::acos(std::clamp((E - v) / 2.0, -1.0, 1.0)), v}; };
  Cut a = cut_at(lo);
  Cut b = cut_at(hi);
  if (a.theta == 0.0) a.value = E - 2.0;
  if (b.theta == std::numbers::pi) b.value = E + 2.0;
  if (!(b.theta > a.theta)) return 0.0;
  std::vector<Cut> cuts{a, b};
  for (double v : singular) {
    if (v > a.value && v < b.value) cuts.push_back(cut_at(v));
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) { return x.theta < y.theta; });
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Cut l = cuts[i];
    const Cut r = cuts[i + 1];
    total += ts_integrate(
        [&](double, double dl, double dr) {
          AnglePoint p;
          p.yl = l.value;
          p.yr = r.value;
          p.gl = 4.0 * std::sin(l.theta + 0.5 * dl) * std::sin(0.5 * dl);
          p.gr = 4.0 * std::sin(r.theta - 0.5 * dr) * std::sin(0.5 * dr);
          p.y = dl < dr ? p.yl + p.gl : p.yr - p.gr;
          return g(p);
        },
        l.theta, r.theta, tol);
  }
  return total / kPi;
}

double n1(double x) {
  const double s = (2.0 - x) * (2.0 + x);
  if (!(s > 0.0)) return 0.0;
  return 1.0 / (kPi * std::sqrt(s));
}

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return 0.5 * (a + b);
}

// K(k) = pi / (2 agm(1, k')), k' = |E|/4 exact near the centre
double n2(double E) {
  if (!(std::abs(E) < 4.0)) return 0.0;
  if (E == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (4.0 * kPi * agm(1.0, std::abs(E) / 4.0));
}

double n3(double E) {
  if (!(std::abs(E) < 6.0)) return 0.0;
  return angle_average([](const AnglePoint& p) { return n2(p.y); }, E, -4.0, 4.0, {0.0}, 1e-9);
}

double n4(double E) {
  if (!(std::abs(E) < 8.0)) return 0.0;
  const double lo = std::max(-4.0, E - 4.0);
  const double hi = std::min(4.0, E + 4.0);
  std::vector<double> cuts{lo, hi};
  for (double c : {0.0, E}) if (c > lo && c < hi) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    total += ts_integrate(
        [&](double, double dl, double dr) {
          const double x = dl < dr ? a + dl : b - dr;
          double y = E - x;
          if (dl < dr && a == E) y = -dl;
          if (dr <= dl && b == E) y = dr;
          return n2(x) * n2(y);
        },
        a, b, 1e-10);
  }
  return total;
}

// n_{r-1} tabulated on a fine uniform grid, linear interpolation (r >= 5).
class TableCache {
 public:
  static const std::vector<double>& table(int r) {
    static std::recursive_mutex mu;
    static std::map<int, std::unique_ptr<std::vector<double>>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[r];
    if (!slot) {
      auto t = std::make_unique<std::vector<double>>(kNodes + 1);
      const double h = 4.0 * r / kNodes;
      for (int i = 0; i <= kNodes; ++i) (*t)[static_cast<std::size_t>(i)] = dos_density(r, -2.0 * r + i * h);
      for (auto& v : *t)
        if (!std::isfinite(v)) v = 0.0;
      slot = std::move(t);
    }
    return *slot;
  }
  static constexpr int kNodes = 4096;
};

double interpolated(int r, double x) {
  const auto& t = TableCache::table(r);
  const double edge = 2.0 * r;
  if (!(std::abs(x) < edge)) return 0.0;
  const double h = 2.0 * edge / TableCache::kNodes;
  const double u = (x + edge) / h;
  const auto i = std::min(static_cast<std::size_t>(u), t.size() - 2);
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * t[i] + w * t[i + 1];
}

double nr_high(int r, double E) {
  const double edge = 2.0 * r;
  if (!(std::abs(E) < edge)) return 0.0;
  using GL = boost::math::quadrature::gauss<double, 20>;
  constexpr int panels = 256;
  double total = 0.0;
  const double h = kPi / panels;
  for (int p = 0; p < panels; ++p) {
    total += GL::integrate([&](double th) { return interpolated(r - 1, E - 2.0 * std::cos(th)); }, p * h, (p + 1) * h);
  }
  return total / kPi;
}

double cdf1(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 1.0 - std::acos(x / 2.0) / kPi;
}

double cdf(int r, double x) {
  const double edge = 2.0 * r;
  if (x <= -edge) return 0.0;
  if (x >= edge) return 1.0;
  if (r == 1) return cdf1(x);
  // theta where x - 2cos theta crosses a van Hove point of N_{r-1}
  std::vector<double> vh;
  for (int k = 0; k <= r - 1; ++k) vh.push_back(-2.0 * (r - 1) + 4.0 * k);
  const double lo = -2.0 * (r - 1);
  const double hi = 2.0 * (r - 1);
  // part of the angle range where x - 2cos theta >= hi contributes 1
  const double full_lo = std::acos(std::clamp((x - hi) / 2.0, -1.0, 1.0));
  const double inner =
      angle_average([r](const AnglePoint& p) { return cdf(r - 1, p.y); }, x, lo, hi, vh, r == 2 ? 1e-12 : 1e-11);
  return inner + (kPi - full_lo) / kPi;
}

}  // namespace

double dos_1d(double E) {
  if (!(std::abs(E) < 2.0)) throw std::domain_error("dos_1d: |E| must be < 2");
  return n1(E);
}

double dos_2d_closed_form(double E) {
  if (!(std::abs(E) < 4.0)) return 0.0;
  if (E == 0.0) return std::numeric_limits<double>::infinity();
  return boost::math::ellint_1(std::sqrt(1.0 - E * E / 16.0)) / (2.0 * kPi * kPi);
}

double dos_density(int r, double E) {
  if (r < 1) throw std::invalid_argument("dos_density: r must be >= 1");
  switch (r) {
    case 1: return n1(E);
    case 2: return n2(E);
    case 3: return n3(E);
    case 4: return n4(E);
    default: return nr_high(r, E);
  }
}

double ids(int r, double a, double b) {
  if (r < 1) throw std::invalid_argument("ids: r must be >= 1");
  if (!(a < b)) throw std::invalid_argument("ids: need a < b");
  return std::max(0.0, cdf(r, b) - cdf(r, a));
}

DensityGrid dos_grid(int r, std::size_t grid_size) {
  if (r < 1) throw std::invalid_argument("dos_grid: r must be >= 1");
  if (grid_size < 2) throw std::invalid_argument("dos_grid: grid_size must be >= 2");
  if (grid_size % 2 == 1) ++grid_size;
  DensityGrid g;
  g.r = r;
  g.lower = -2.0 * r;
  g.upper = 2.0 * r;
  const double h = (g.upper - g.lower) / static_cast<double>(grid_size);
  g.energy.resize(grid_size);
  g.density.resize(grid_size);
  const std::size_t half = grid_size / 2;
  const auto n = static_cast<std::ptrdiff_t>(half);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double e = g.lower + (static_cast<double>(k) + 0.5) * h;
    g.energy[k] = e;
    g.energy[grid_size - 1 - k] = -e;
    g.density[k] = dos_density(r, e);
    g.density[grid_size - 1 - k] = dos_density(r, -e);
  }
  for (std::size_t k = 0; k < grid_size; ++k) {
    g.grid_mass += g.density[k] * h;
    g.symmetry_defect = std::max(g.symmetry_defect, std::abs(g.density[k] - g.density[grid_size - 1 - k]));
  }

  // both halves by symmetry; pieces between van Hove points 2r - 4k on [0, 2r]
  std::vector<double> cuts{0.0};
  for (int k = 0; k <= r; ++k) {
    const double v = 2.0 * r - 4.0 * k;
    if (v > 0.0) cuts.push_back(v);
  }
  std::sort(cuts.begin(), cuts.end());
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    mass += ts_integrate(
        [&](double, double dl, double dr) {
          const double x = dl < dr ? a + dl : b - dr;
          if (r == 1) {
            const double upper = (dr <= dl && b == 2.0) ? dr : 2.0 - x;
            return 1.0 / (kPi * std::sqrt((2.0 + x) * upper));
          }
          return dos_density(r, x);
        },
        a, b, 1e-8);
  }
  g.normalization = 2.0 * mass;
  if (!(std::abs(g.normalization - 1.0) <= 1e-6)) {
    throw NumericalError("dos_grid: n_" + std::to_string(r) + " integrates to " + std::to_string(g.normalization));
  }
  return g;
}

double characteristic_1d(double t) {
  const auto N = static_cast<int>(2 * std::ceil(2.0 * std::abs(t)) + 64);
  double s = 0.0;
  for (int k = 0; k < N; ++k) s += std::cos(2.0 * t * std::cos(2.0 * kPi * k / N));
  return s / N;
}

FourierDecayTable fourier_decay_check(int r, std::span<const double> t_grid) {
  if (r < 1) throw std::invalid_argument("fourier_decay_check: r must be >= 1");
  FourierDecayTable table;
  table.r = r;
  for (double t : t_grid) {
    FourierDecayRow row;
    row.t = t;
    row.magnitude = std::pow(std::abs(characteristic_1d(t)), r);
    row.scaled = row.magnitude * std::pow(std::abs(t), 0.5 * r);
    table.sup_scaled = std::max(table.sup_scaled, row.scaled);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace anderson
