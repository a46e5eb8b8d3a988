#include "anderson/potential.hpp"

#include <cmath>

#include "anderson/cube.hpp"
#include "anderson/error.hpp"
#include "anderson/format.hpp"

namespace anderson {

void validate(const PotentialProfile& profile) {
  if (const auto* p = std::get_if<Decaying>(&profile)) {
    if (!(p->amplitude >= 0.0) || !std::isfinite(p->amplitude))
      throw ConfigError("decaying profile amplitude must be finite and >= 0");
    if (!(p->epsilon > 0.0) || !std::isfinite(p->epsilon))
      throw ConfigError("decaying profile epsilon must be finite and > 0");
  } else {
    const auto& c = std::get<Constant>(profile);
    if (!(c.eta >= 0.0) || !std::isfinite(c.eta)) throw ConfigError("constant profile eta must be finite and >= 0");
  }
}

double envelope(const PotentialProfile& profile, std::span<const int> site) {
  if (const auto* p = std::get_if<Decaying>(&profile)) {
    return p->amplitude * std::pow(1.0 + euclidean_norm(site), -2.0 - p->epsilon);
  }
  return std::get<Constant>(profile).eta;
}

std::string describe(const PotentialProfile& profile) {
  if (const auto* p = std::get_if<Decaying>(&profile)) {
    return "decaying(C=" + format_double(p->amplitude) + ",epsilon=" + format_double(p->epsilon) + ")";
  }
  return "constant(eta=" + format_double(std::get<Constant>(profile).eta) + ")";
}

}  // namespace anderson
