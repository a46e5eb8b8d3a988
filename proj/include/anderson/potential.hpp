#pragma once

#include <span>
#include <string>
#include <variant>

namespace anderson {

/// a_n = C (1 + |n|)^(-2-eps), |n| Euclidean.
struct Decaying {
  double amplitude = 1.0;
  double epsilon = 0.5;
};

/// a_n = eta on every site (weak coupling).
struct Constant {
  double eta = 0.0;
};

using PotentialProfile = std::variant<Decaying, Constant>;

/// Validates amplitude/eta >= 0 and epsilon > 0; throws ConfigError.
void validate(const PotentialProfile& profile);

double envelope(const PotentialProfile& profile, std::span<const int> site);

std::string describe(const PotentialProfile& profile);

}  // namespace anderson
