#include "anderson/conjecture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "anderson/dos.hpp"
#include "anderson/error.hpp"
#include "anderson/format.hpp"
#include "anderson/measure.hpp"

namespace anderson {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr unsigned kMaxDepth = 12;

// int_0^inf t f(sign * t) dt
double first_moment(const TestFunction& f, double sign) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  auto points = f.breakpoints();
  for (auto& p : points) p *= sign;
  points.push_back(0.0);
  std::sort(points.begin(), points.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = std::max(points[i], 0.0);
    const double b = points[i + 1];
    if (!(b > a)) continue;
    constexpr int panels = 64;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      total += GL::integrate([&](double t) { return t * f(sign * t); }, a + p * h, a + (p + 1) * h);
    }
  }
  return total;
}

class TermIntegrator {
 public:
  TermIntegrator(const ConjectureSpec& spec, const TestFunction& f)
      : r_(spec.d - 1),
        energy_(spec.energy),
        f_(f),
        radius_(f.support_radius()),
        tolerance_(spec.theta_tolerance),
        high_order_(spec.high_order) {
    for (int j = 0; j <= r_; ++j) {
      const double v = 2.0 * r_ - 4.0 * j;
      const double c = (energy_ - v) / 2.0;
      if (std::abs(c) < 1.0) cuts_.push_back(std::acos(c));
    }
  }

  // T_k + T_{-k}
  double pair(int k) const { return term(k) + term(-k); }

  double term(int k) const {
    const double theta_k = std::asin(std::min(1.0, radius_ / (kPi * std::abs(k))));
    if (theta_k >= kPi / 2.0) return piece_sum(k, 0.0, kPi);
    return piece_sum(k, 0.0, theta_k) + piece_sum(k, kPi - theta_k, kPi);
  }

 private:
  double piece_sum(int k, double a, double b) const {
    std::vector<double> points{a, b};
    for (double c : cuts_)
      if (c > a && c < b) points.push_back(c);
    std::sort(points.begin(), points.end());
    const double scale = kPi * k;
    auto g = [&](double theta) {
      const double s = std::sin(theta);
      const double v = s * dos_density(r_, energy_ - 2.0 * std::cos(theta)) * f_(scale * s);
      return std::isfinite(v) ? v : 0.0;
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      total += high_order_ ? boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, points[i], points[i + 1],
                                                                                           kMaxDepth, tolerance_)
                           : boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, points[i], points[i + 1],
                                                                                           kMaxDepth, tolerance_);
    }
    return total;
  }

  int r_;
  double energy_;
  const TestFunction& f_;
  double radius_;
  double tolerance_;
  bool high_order_;
  std::vector<double> cuts_;
};

void validate(const ConjectureSpec& spec) {
  if (spec.d < 2) throw std::invalid_argument("conjecture: d must be >= 2");
  if (!(std::abs(spec.energy) < 2.0 * spec.d)) throw std::invalid_argument("conjecture: need |E| < 2d");
  if (spec.k_max < 0) throw std::invalid_argument("conjecture: k_max must be >= 0");
  if (!(spec.theta_tolerance > 0.0)) throw std::invalid_argument("conjecture: theta_tolerance must be > 0");
}

}  // namespace

ConjectureValue conjecture_value(const ConjectureSpec& spec, const TestFunction& f) {
  validate(spec);
  ConjectureValue out;
  out.high_order = spec.high_order;
  out.k_max = spec.k_max > 0 ? spec.k_max : std::max(64, static_cast<int>(std::ceil(8.0 * f.support_radius())));
  if (f.is_zero()) return out;

  const int r = spec.d - 1;
  const double E = spec.energy;
  const double n_low = dos_density(r, E - 2.0);
  const double n_high = dos_density(r, E + 2.0);
  auto singular = [r](double x) { return (r == 1 && std::abs(x) == 2.0) || (r == 2 && x == 0.0); };
  if (!std::isfinite(n_low) || !std::isfinite(n_high) || singular(E - 2.0) || singular(E + 2.0)) {
    throw NumericalError("conjecture: n_" + std::to_string(r) + " is singular at E -/+ 2 (E=" + format_double(E) +
                         "); the k-sum diverges");
  }

  out.k0_term = f(0.0) * ids(r, E - 2.0, E + 2.0) / 2.0;
  const TermIntegrator terms(spec, f);
  std::vector<double> pairs(static_cast<std::size_t>(out.k_max));
  const int k_max = out.k_max;
#pragma omp parallel for schedule(dynamic) if (is_parallel(spec.exec))
  for (int k = 1; k <= k_max; ++k) pairs[static_cast<std::size_t>(k - 1)] = terms.pair(k);

  const double amplitude = (n_low + n_high) * (first_moment(f, 1.0) + first_moment(f, -1.0)) / (kPi * kPi);
  out.tail = amplitude * boost::math::trigamma(static_cast<double>(k_max) + 1.0);
  double sum = out.k0_term;
  for (double p : pairs) sum += p;
  out.value = sum + out.tail;
  return out;
}

ConjectureResult conjecture_integral(const ConjectureSpec& spec, const TestFunction& f) {
  validate(spec);
  ConjectureResult result;
  if (spec.d < 4) {
    result.notes.push_back("d=" + std::to_string(spec.d) + " is outside the d >= 4 regime of the conjecture");
  }
  ConjectureSpec current = spec;
  result.coarse = conjecture_value(current, f);
  current.k_max = result.coarse.k_max;
  for (int attempt = 0;; ++attempt) {
    ConjectureSpec finer = current;
    finer.k_max = 2 * current.k_max;
    finer.high_order = true;
    result.refined = conjecture_value(finer, f);
    result.value = result.refined.value;
    const double scale = std::max(std::abs(result.refined.value), std::numeric_limits<double>::min());
    result.self_convergence = std::abs(result.refined.value - result.coarse.value) / scale;
    if (f.is_zero()) result.self_convergence = 0.0;
    if (result.self_convergence <= spec.self_convergence_target) return result;
    if (attempt >= spec.max_refinements) {
      throw NumericalError("conjecture: self-convergence " + format_double(result.self_convergence) + " (values " +
                           format_double(result.coarse.value) + ", " + format_double(result.refined.value) +
                           ", k_max " + std::to_string(finer.k_max) + ") above target " +
                           format_double(spec.self_convergence_target));
    }
    result.coarse = result.refined;
    current = finer;
  }
}

ConjectureComparison conjecture_comparison(const ConjectureSpec& spec, const TestFunction& f, const std::vector<int>& Ls) {
  ConjectureComparison out;
  out.limit = conjecture_integral(spec, f);
  EnumerationOptions options;
  options.exec = spec.exec;
  for (int L : Ls) {
    const auto measure = free_measure(spec.d, L, spec.energy, f.support_radius(), options);
    out.rows.push_back({"L=" + std::to_string(L), L, integrate(measure, f), 0.0});
  }
  out.rows.push_back({"limit", 0, out.limit.value, out.limit.self_convergence});
  return out;
}

}  // namespace anderson
