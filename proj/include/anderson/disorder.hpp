#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "anderson/cube.hpp"
#include "anderson/parallel.hpp"
#include "anderson/potential.hpp"

namespace anderson {

/// Uniform on [-w, w].
struct UniformSym {
  double half_width = 1.0;
};
/// Uniform on [0, 1).
struct Uniform01 {};
/// +1 with probability p, -1 otherwise.
struct Bernoulli {
  double p = 0.5;
};
struct Gaussian {
  double sigma = 1.0;
};

using DisorderLaw = std::variant<UniformSym, Uniform01, Bernoulli, Gaussian>;

void validate(const DisorderLaw& law);
std::string describe(const DisorderLaw& law);

/// Counter-based per-site key: a hash of the master seed and the site
/// coordinates. Independent of L and of the order sites are visited in, so a
/// fixed seed gives the same q_n on every cube containing n.
std::uint64_t site_key(std::uint64_t master_seed, std::span<const int> site);

/// The i-th uniform [0,1) draw attached to a key.
double key_uniform(std::uint64_t key, std::uint64_t stream);

/// q_n for one site; a pure function of (law, seed, site).
double sample_site(const DisorderLaw& law, std::uint64_t master_seed, std::span<const int> site);

/// One disorder realization on a cube: raw draws q_n and potential v_n = a_n q_n.
struct SiteField {
  CubeSpec cube;
  std::vector<double> q;
  std::vector<double> v;
  std::uint64_t master_seed = 0;
  DisorderLaw law;
  PotentialProfile profile;

  bool is_zero() const;
  /// Sum_n |v_n| = Sum_n a_n |q_n|.
  double absolute_potential_sum() const;
};

/// Raw draws q_n in lexicographic site order.
std::vector<double> sample_disorder(const DisorderLaw& law, std::uint64_t master_seed, const CubeSpec& cube,
                                    Exec exec = Exec::parallel);

SiteField make_field(const CubeSpec& cube, const DisorderLaw& law, const PotentialProfile& profile,
                     std::uint64_t master_seed, Exec exec = Exec::parallel);

/// A field with a prescribed potential (profile Constant{1}, q = v). Used for
/// hand-built examples; throws std::invalid_argument on a size mismatch.
SiteField explicit_field(const CubeSpec& cube, std::vector<double> potential);

}  // namespace anderson
