#include "anderson/fourier_norm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "anderson/error.hpp"

namespace anderson {

namespace {

using GL20 = boost::math::quadrature::gauss<double, 20>;
using GL10 = boost::math::quadrature::gauss<double, 10>;
using GL7 = boost::math::quadrature::gauss<double, 7>;

// F(xi) = (1/pi) int_0^R g(y) cos(xi y) dy with g(y) = f(centre + y); fhat = e^{-i c xi} F.
class CosineTransform {
 public:
  CosineTransform(const TestFunction& f, double xi_max) {
    const double c = f.center();
    std::vector<double> cuts;
    for (double b : f.breakpoints())
      if (b - c >= 0.0) cuts.push_back(b - c);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double len = cuts[i + 1] - cuts[i];
      if (!(len > 0.0)) continue;
      const int panels = std::max(32, static_cast<int>(std::ceil(len * xi_max / 6.0)));
      const double h = len / panels;
      for (int p = 0; p < panels; ++p) {
        const double mid = cuts[i] + (p + 0.5) * h;
        for (std::size_t k = 0; k < GL20::abscissa().size(); ++k) {
          const double t = GL20::abscissa()[k];
          add(f, c, mid, t, 0.5 * h, GL20::weights()[k]);
          if (t != 0.0) add(f, c, mid, -t, 0.5 * h, GL20::weights()[k]);
        }
      }
    }
  }

  double operator()(double xi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < y_.size(); ++i) s += w_[i] * std::cos(xi * y_[i]);
    return s;
  }

 private:
  void add(const TestFunction& f, double c, double mid, double t, double half, double weight) {
    const double y = mid + half * t;
    const double g = f(c + y);
    if (g == 0.0) return;
    y_.push_back(y);
    w_.push_back(weight * half * g / std::numbers::pi);
  }

  std::vector<double> y_;
  std::vector<double> w_;
};

double half_length(const TestFunction& f) {
  const auto [lo, hi] = f.support();
  return std::max(hi - f.center(), f.center() - lo);
}

struct PieceSum {
  double fine = 0.0;
  double coarse = 0.0;
};

// 2 int_0^Xi sqrt(1 + (xi/a)^2) |F(xi)| dxi, split at the sign changes of F.
PieceSum integrate_weighted(const CosineTransform& F, double R, double xi_max, double a, int refinement, Exec exec) {
  const double h = std::numbers::pi / (8.0 * R * refinement);
  const auto steps = static_cast<std::int64_t>(std::ceil(xi_max / h));
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  std::vector<double> values(grid.size());
#pragma omp parallel for schedule(static) if (is_parallel(exec))
  for (std::int64_t j = 0; j <= steps; ++j) {
    const double xi = std::min(xi_max, static_cast<double>(j) * h);
    grid[static_cast<std::size_t>(j)] = xi;
    values[static_cast<std::size_t>(j)] = F(xi);
  }

  std::vector<PieceSum> pieces(static_cast<std::size_t>(steps));
  auto weight = [a](double xi) { return std::sqrt(1.0 + (xi / a) * (xi / a)); };
#pragma omp parallel for schedule(dynamic, 16) if (is_parallel(exec))
  for (std::int64_t j = 0; j < steps; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    const double lo = grid[jj];
    const double hi = grid[jj + 1];
    if (!(hi > lo)) continue;
    std::vector<double> cuts{lo};
    if ((values[jj] < 0.0) != (values[jj + 1] < 0.0) && values[jj] != 0.0 && values[jj + 1] != 0.0) {
      std::uintmax_t iters = 64;
      const auto root = boost::math::tools::toms748_solve(
          [&](double x) { return F(x); }, lo, hi, values[jj], values[jj + 1],
          boost::math::tools::eps_tolerance<double>(50), iters);
      cuts.push_back(0.5 * (root.first + root.second));
    }
    cuts.push_back(hi);
    PieceSum s;
    auto g = [&](double xi) { return weight(xi) * std::abs(F(xi)); };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      s.fine += GL10::integrate(g, cuts[k], cuts[k + 1]);
      s.coarse += GL7::integrate(g, cuts[k], cuts[k + 1]);
    }
    pieces[jj] = s;
  }
  PieceSum total;
  double err = 0.0;
  for (const auto& p : pieces) {
    total.fine += p.fine;
    err += std::abs(p.fine - p.coarse);
  }
  total.fine *= 2.0;
  total.coarse = 2.0 * err;
  return total;
}

// Closed form: |fhat(xi)| <= |3/(4 xi) - xi/(xi^2 - b^2) + xi/(4 (xi^2 - 4 b^2))| / (2 pi), b = pi/K.
double raised_cosine_tail(const RaisedCosine2& r, double amplitude, double xi0, double a) {
  const double b = std::numbers::pi / r.half_width;
  auto envelope = [&](double xi) {
    const double bracket = 0.75 / xi - xi / (xi * xi - b * b) + xi / (4.0 * (xi * xi - 4.0 * b * b));
    return std::sqrt(1.0 + (xi / a) * (xi / a)) * amplitude * std::abs(bracket) / (2.0 * std::numbers::pi);
  };
  const double inf = std::numeric_limits<double>::infinity();
  return 2.0 * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(envelope, xi0, inf, 15, 1e-10);
}

}  // namespace

std::complex<double> fourier_transform(const TestFunction& f, double xi) {
  if (f.is_zero()) return {0.0, 0.0};
  const CosineTransform F(f, std::abs(xi) + 1.0);
  return std::polar(1.0, -f.center() * xi) * F(std::abs(xi));
}

WeightedFourierNorm fourier_weighted_norm(const TestFunction& f, const FourierNormOptions& options) {
  WeightedFourierNorm out;
  if (f.is_zero()) return out;
  const double a = options.xi_scale;
  if (!(a > 0.0)) throw std::invalid_argument("fourier_weighted_norm: xi_scale must be > 0");
  const double R = half_length(f);

  std::vector<double> amplitude(static_cast<std::size_t>(f.integrable_order()) + 1, 0.0);
  for (int k = 3; k <= f.integrable_order(); ++k) amplitude[static_cast<std::size_t>(k)] = f.derivative_l1(k);
  auto tail = [&](double xi) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 3; k <= f.integrable_order(); ++k) {
      const double A = amplitude[static_cast<std::size_t>(k)];
      const double b = A * std::sqrt(1.0 + (a / xi) * (a / xi)) / (std::numbers::pi * a * (k - 2) * std::pow(xi, k - 2));
      best = std::min(best, b);
    }
    if (const auto* rc = std::get_if<RaisedCosine2>(&f.shape()); rc && xi > 2.5 * std::numbers::pi / rc->half_width)
      best = std::min(best, raised_cosine_tail(*rc, f.amplitude(), xi, a));
    return best;
  };

  double xi = 32.0 / R;
  const CosineTransform F0(f, xi);
  const double first = integrate_weighted(F0, R, xi, a, options.refinement, options.exec).fine;
  const double budget = 0.25 * options.relative_tolerance * first;
  while (tail(xi) > budget) {
    xi *= 2.0;
    if (xi > options.xi_cap) {
      throw NumericalError("fourier_weighted_norm: tail bound above budget at xi cap " + std::to_string(options.xi_cap) +
                           " for " + f.describe());
    }
  }
  const CosineTransform F(f, xi);
  const PieceSum s = integrate_weighted(F, R, xi, a, options.refinement, options.exec);
  out.value = s.fine;
  out.tail_bound = tail(xi);
  out.error_estimate = out.tail_bound + s.coarse;
  out.xi_max = xi;
  return out;
}

}  // namespace anderson
