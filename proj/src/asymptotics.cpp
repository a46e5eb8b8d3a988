#include "anderson/asymptotics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "anderson/dos.hpp"
#include "anderson/error.hpp"
#include "anderson/format.hpp"

namespace anderson {

double gamma_of(const DisorderLaw& law) {
  validate(law);
  return std::visit(
      [](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, UniformSym>) return 0.5 * l.half_width;
        else if constexpr (std::is_same_v<T, Uniform01>) return 0.5;
        else if constexpr (std::is_same_v<T, Bernoulli>) return 1.0;
        else return l.sigma * std::sqrt(2.0 / std::numbers::pi);
      },
      law);
}

MartingaleTrace martingale_trace(int d, double epsilon, const DisorderLaw& law, std::uint64_t seed, int L_max) {
  if (d < 1) throw ConfigError("martingale: d must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigError("martingale: epsilon must be > 0");
  if (L_max < 0) throw ConfigError("martingale: L_max must be >= 0");
  MartingaleTrace tr{d, epsilon, law, seed, gamma_of(law), {}, {}};
  tr.M.reserve(static_cast<std::size_t>(L_max) + 1);
  const double power = -d - 0.5 * epsilon;
  double running = 0.0;
  for (int L = 0; L <= L_max; ++L) {
    double shell = 0.0;
    for_each_shell_site(d, L, [&](const std::vector<int>& site) {
      const double q = sample_site(law, seed, site);
      shell += std::pow(1.0 + euclidean_norm(site), power) * (std::abs(q) - tr.gamma);
    });
    running += shell;
    tr.M.push_back(running);
    tr.normalized.push_back(L == 0 ? running : std::pow(static_cast<double>(L), -0.5 * epsilon) * running);
  }
  return tr;
}

void ScaleFunction::validate() const {
  if (!(exponent > 0.0 && exponent < 0.5))
    throw ConfigError("scale exponent a must satisfy 0 < a < 1/2 (so that eps(eta)^2 eta -> 0)");
}

int ScaleFunction::operator()(double eta) const {
  validate();
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("scale function needs eta > 0");
  const double x = std::pow(eta, -exponent);
  const double r = std::round(x);
  double v = (std::abs(x - r) <= 1e-9 * std::max(1.0, x)) ? r : std::floor(x);
  v = std::max(v, 1.0);
  if (v > 1e6) throw ConfigError("scale function eps(eta) too large for eta = " + format_double(eta));
  return static_cast<int>(v);
}

bool ExperimentRecord::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const ExperimentRow& r) { return r.ok; });
}

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void summarize(ExperimentRecord& rec, const std::vector<double>& parameters) {
  for (double p : parameters) {
    std::vector<double> xs;
    for (const auto& r : rec.rows)
      if (r.parameter == p && r.ok) xs.push_back(std::abs(r.X));
    rec.summary.push_back({p, median(xs), xs.size()});
  }
}

void check_options(const ExperimentOptions& o) {
  if (o.seed_count < 1) throw ConfigError("seed count must be >= 1");
}

// X and bound for one realized field against a precomputed free measure.
void evaluate_row(ExperimentRow& row, const SiteField& field, const AtomicMeasure& free, const TestFunction& f,
                  const ExperimentOptions& o, Exec inner) {
  RandomMeasureOptions mo = o.measure;
  mo.exec = inner;
  if (o.method == MeasureMethod::dense || field.is_zero()) {
    row.X = x_statistic(free, random_measure(field, row.energy, row.half_width, mo), f);
    row.method = MeasureMethod::dense;
  } else {
    const auto c = random_measure_counting(field, row.energy, -row.half_width, row.half_width, mo);
    row.X = x_statistic(free, c, f).value;
    row.method = MeasureMethod::counting;
  }
  row.bound = bound_rhs(f, field);
}

template <typename Body>
void run_rows(std::vector<ExperimentRow>& rows, Exec exec, const Body& body) {
  const auto n = static_cast<std::int64_t>(rows.size());
  const bool outer = is_parallel(exec) && thread_count() > 1 && rows.size() >= static_cast<std::size_t>(thread_count());
  const Exec inner = outer ? Exec::serial : exec;
#pragma omp parallel for schedule(dynamic, 1) if (outer)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    const auto t0 = Clock::now();
    try {
      body(row, inner);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }
}

}  // namespace

ExperimentRecord decay_experiment(const DecayConfig& c) {
  check_options(c.options);
  validate(PotentialProfile{c.profile});
  validate(c.law);
  if (c.Ls.empty()) throw ConfigError("decay experiment needs at least one L");
  if (!(std::abs(c.energy) < 2.0 * c.d)) throw ConfigError("E outside (-2d, 2d)");
  ExperimentRecord rec;
  if (c.d < 3) rec.notes.push_back("d = " + std::to_string(c.d) + " < 3: outside the decay theorem's regime");
  const double K = c.f.support_radius();
  if (c.profile.amplitude > 0.0 && !c.f.is_zero()) (void)c.f.fourier_norm();

  std::vector<AtomicMeasure> free;
  for (int L : c.Ls) free.push_back(free_measure(c.d, L, c.energy, K, {100'000'000, c.options.exec}));

  std::vector<double> params;
  for (std::size_t li = 0; li < c.Ls.size(); ++li) {
    params.push_back(c.Ls[li]);
    for (int s = 0; s < c.options.seed_count; ++s) {
      ExperimentRow row;
      row.experiment = "compare";
      row.d = c.d;
      row.L = c.Ls[li];
      row.parameter = c.Ls[li];
      row.seed = c.options.master_seed + static_cast<std::uint64_t>(s);
      row.energy = c.energy;
      row.half_width = K;
      row.method = c.options.method;
      rec.rows.push_back(row);
    }
  }
  run_rows(rec.rows, c.options.exec, [&](ExperimentRow& row, Exec inner) {
    const std::size_t li = static_cast<std::size_t>(std::find(c.Ls.begin(), c.Ls.end(), row.L) - c.Ls.begin());
    const SiteField field = make_field(CubeSpec(c.d, row.L), c.law, c.profile, row.seed, inner);
    evaluate_row(row, field, free[li], c.f, c.options, inner);
  });
  summarize(rec, params);
  return rec;
}

ExperimentRecord weak_coupling_experiment(const WeakCouplingConfig& c) {
  check_options(c.options);
  c.scale.validate();
  validate(c.law);
  if (c.etas.empty()) throw ConfigError("weak-coupling experiment needs at least one eta");
  if (!(std::abs(c.energy) < 2.0 * c.d)) throw ConfigError("E outside (-2d, 2d)");
  for (double eta : c.etas)
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be finite and >= 0");
  ExperimentRecord rec;
  const double K = c.f.support_radius();
  const bool any_positive = std::any_of(c.etas.begin(), c.etas.end(), [](double e) { return e > 0.0; });
  if (any_positive && !c.f.is_zero()) (void)c.f.fourier_norm();

  std::vector<int> Ls;
  for (double eta : c.etas) Ls.push_back(eta > 0.0 ? c.scale(eta) : 0);
  std::vector<AtomicMeasure> free(c.etas.size());
  for (std::size_t i = 0; i < c.etas.size(); ++i) {
    if (Ls[i] > 0) free[i] = free_measure(c.d, Ls[i], c.energy, K, {100'000'000, c.options.exec});
  }

  for (std::size_t i = 0; i < c.etas.size(); ++i) {
    for (int s = 0; s < c.options.seed_count; ++s) {
      ExperimentRow row;
      row.experiment = "weak-coupling";
      row.d = c.d;
      row.L = Ls[i];
      row.parameter = c.etas[i];
      row.seed = c.options.master_seed + static_cast<std::uint64_t>(s);
      row.energy = c.energy;
      row.half_width = K;
      row.method = c.options.method;
      rec.rows.push_back(row);
    }
  }
  run_rows(rec.rows, c.options.exec, [&](ExperimentRow& row, Exec inner) {
    if (row.parameter == 0.0) {
      row.X = 0.0;
      row.bound = 0.0;
      row.aux_bound = 0.0;
      return;
    }
    const std::size_t i = static_cast<std::size_t>(std::find(c.etas.begin(), c.etas.end(), row.parameter) - c.etas.begin());
    const SiteField field = make_field(CubeSpec(c.d, row.L), c.law, Constant{row.parameter}, row.seed, inner);
    evaluate_row(row, field, free[i], c.f, c.options, inner);
    double qsum = 0.0;
    for (double q : field.q) qsum += std::abs(q);
    const double eps = row.L;
    const double norm = c.f.is_zero() ? 0.0 : c.f.fourier_norm().value;
    row.aux_bound = norm * eps * eps * row.parameter * (std::pow(eps, -c.d) * qsum);
  });
  summarize(rec, c.etas);
  return rec;
}

double lemma2_gamma_sum(double gamma, int L) {
  if (!(std::abs(gamma) < 1.0)) throw ConfigError("I(gamma) needs |gamma| < 1");
  if (L < 1) throw ConfigError("I(gamma) needs L >= 1");
  double s = 0.0;
  for (int k = 1; k <= 2 * L + 1; ++k) {
    const double c = std::cos(k * std::numbers::pi / (2.0 * (L + 1)));
    if (gamma > c) s += 1.0 / std::sqrt(gamma - c);
  }
  return s / (2.0 * L + 1.0);
}

namespace {

void check_band_edge(int d, double E) {
  if (!(std::abs(E) > 2.0 * d - 2.0 && std::abs(E) < 2.0 * d))
    throw ConfigError("E = " + format_double(E) + " outside the band-edge regime 2d-2 < |E| < 2d");
}

}  // namespace

Lemma2Table lemma2_diagnostic(const Lemma2Config& c) {
  if (!c.allow_outside_regime) check_band_edge(c.d, c.energy);
  if (!(std::abs(c.energy) <= 2.0 * c.d)) throw ConfigError("E outside [-2d, 2d]");
  const auto [lo, hi] = c.f.support();
  if (lo < -c.K || hi > c.K) throw ConfigError("lemma2: test function support exceeds the window [-K, K]");
  Lemma2Table t;
  if (c.allow_outside_regime && !(std::abs(c.energy) > 2.0 * c.d - 2.0 && std::abs(c.energy) < 2.0 * c.d))
    t.notes.push_back("E outside the band-edge regime; run with override");
  for (int L : c.Ls) t.integrals.emplace_back(L, integrate(free_measure(c.d, L, c.energy, c.K, {100'000'000, c.exec}), c.f));
  for (double g : c.gammas) {
    if (!(g < 0.0)) t.notes.push_back("gamma = " + format_double(g) + " >= 0 lies outside the lemma's regime");
    for (int L : c.gamma_Ls) t.gamma_sums.emplace_back(g, L, lemma2_gamma_sum(g, L));
  }
  return t;
}

PositivityResult positivity_check(int d, double E, double K, double delta, int L, Exec exec) {
  if (d < 2) throw ConfigError("positivity check needs d >= 2");
  check_band_edge(d, E);
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(K > 0.0)) throw ConfigError("K must be > 0");
  const double a = E - 2.0 + delta;
  const double b = E + 2.0 - delta;
  const double edge = 2.0 * d - 2.0;
  if (!(std::max(a, -edge) < std::min(b, edge))) {
    throw ConfigError("reference interval (E-2+delta, E+2-delta) misses (-2d+2, 2d-2)");
  }
  PositivityResult r;
  const TestFunction f(Plateau{K, delta});
  r.integral = integrate(free_measure(d, L, E, K + delta, {100'000'000, exec}), f);
  r.reference = K / (std::numbers::pi * std::sqrt(2.0)) * ids(d - 1, a, b);
  r.ratio = r.integral / r.reference;
  return r;
}

}  // namespace anderson
