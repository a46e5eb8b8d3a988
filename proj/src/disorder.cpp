#include "anderson/disorder.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anderson/error.hpp"
#include "anderson/format.hpp"

namespace anderson {

namespace {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void validate(const DisorderLaw& law) {
  std::visit(
      [](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, UniformSym>) {
          if (!(l.half_width > 0.0) || !std::isfinite(l.half_width))
            throw ConfigError("uniform-sym half width must be finite and > 0");
        } else if constexpr (std::is_same_v<T, Bernoulli>) {
          if (!(l.p >= 0.0 && l.p <= 1.0)) throw ConfigError("bernoulli p must lie in [0, 1]");
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          if (!(l.sigma > 0.0) || !std::isfinite(l.sigma)) throw ConfigError("gaussian sigma must be finite and > 0");
        }
      },
      law);
}

std::string describe(const DisorderLaw& law) {
  return std::visit(
      [](const auto& l) -> std::string {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, UniformSym>) return "uniform-sym(w=" + format_double(l.half_width) + ")";
        if constexpr (std::is_same_v<T, Uniform01>) return "uniform01";
        if constexpr (std::is_same_v<T, Bernoulli>) return "bernoulli(p=" + format_double(l.p) + ")";
        if constexpr (std::is_same_v<T, Gaussian>) return "gaussian(sigma=" + format_double(l.sigma) + ")";
      },
      law);
}

std::uint64_t site_key(std::uint64_t master_seed, std::span<const int> site) {
  std::uint64_t key = mix64(master_seed ^ 0x5851f42d4c957f2dULL);
  key = mix64(key ^ static_cast<std::uint64_t>(site.size()));
  for (int n : site) key = mix64(key ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(n)));
  return key;
}

double key_uniform(std::uint64_t key, std::uint64_t stream) {
  const std::uint64_t bits = mix64(key + stream * 0xd1b54a32d192ed03ULL);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double sample_site(const DisorderLaw& law, std::uint64_t master_seed, std::span<const int> site) {
  const std::uint64_t key = site_key(master_seed, site);
  return std::visit(
      [key](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        const double u = key_uniform(key, 0);
        if constexpr (std::is_same_v<T, UniformSym>) {
          return l.half_width * (2.0 * u - 1.0);
        } else if constexpr (std::is_same_v<T, Uniform01>) {
          return u;
        } else if constexpr (std::is_same_v<T, Bernoulli>) {
          return u < l.p ? 1.0 : -1.0;
        } else {
          // Box-Muller; 1 - u lies in (0, 1]
          const double u2 = key_uniform(key, 1);
          return l.sigma * std::sqrt(-2.0 * std::log(1.0 - u)) * std::cos(2.0 * std::numbers::pi * u2);
        }
      },
      law);
}

bool SiteField::is_zero() const {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

double SiteField::absolute_potential_sum() const {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

std::vector<double> sample_disorder(const DisorderLaw& law, std::uint64_t master_seed, const CubeSpec& cube,
                                    Exec exec) {
  validate(law);
  const auto n = static_cast<std::ptrdiff_t>(cube.size());
  std::vector<double> q(cube.size());
#pragma omp parallel if (is_parallel(exec))
  {
    std::vector<int> site(static_cast<std::size_t>(cube.dimension()));
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      cube.coordinates(static_cast<std::size_t>(i), site);
      q[static_cast<std::size_t>(i)] = sample_site(law, master_seed, site);
    }
  }
  return q;
}

SiteField make_field(const CubeSpec& cube, const DisorderLaw& law, const PotentialProfile& profile,
                     std::uint64_t master_seed, Exec exec) {
  validate(profile);
  SiteField field{cube, sample_disorder(law, master_seed, cube, exec), {}, master_seed, law, profile};
  field.v.resize(cube.size());
  std::vector<int> site(static_cast<std::size_t>(cube.dimension()));
  for (std::size_t i = 0; i < cube.size(); ++i) {
    cube.coordinates(i, site);
    field.v[i] = envelope(profile, site) * field.q[i];
  }
  return field;
}

SiteField explicit_field(const CubeSpec& cube, std::vector<double> potential) {
  if (potential.size() != cube.size()) {
    throw std::invalid_argument("explicit potential has " + std::to_string(potential.size()) +
                                " entries, cube has " + std::to_string(cube.size()) + " sites");
  }
  SiteField field{cube, potential, std::move(potential), 0, UniformSym{}, Constant{1.0}};
  return field;
}

}  // namespace anderson
