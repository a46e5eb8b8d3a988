#include "anderson/cube.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "anderson/error.hpp"

namespace anderson {

CubeSpec::CubeSpec(int dimension, int half_side) : d_(dimension), L_(half_side), size_(1) {
  if (d_ < 1) throw ConfigError("cube dimension must be >= 1, got " + std::to_string(d_));
  if (L_ < 1) throw ConfigError("cube half side L must be >= 1, got " + std::to_string(L_));
  // Keep N * sizeof(double) addressable.
  constexpr std::size_t limit = std::numeric_limits<std::size_t>::max() / 64;
  const std::size_t s = side();
  for (int i = 0; i < d_; ++i) {
    if (size_ > limit / s) {
      throw ConfigError("cube (2L+1)^d with d=" + std::to_string(d_) + ", L=" + std::to_string(L_) +
                        " exceeds the addressable size");
    }
    size_ *= s;
  }
}

std::size_t CubeSpec::stride(int i) const {
  std::size_t st = 1;
  for (int k = i + 1; k < d_; ++k) st *= side();
  return st;
}

std::size_t CubeSpec::index_of(std::span<const int> site) const {
  std::size_t idx = 0;
  for (int i = 0; i < d_; ++i) idx = idx * side() + static_cast<std::size_t>(site[i] + L_);
  return idx;
}

void CubeSpec::coordinates(std::size_t index, std::span<int> out) const {
  for (int i = d_ - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % side()) - L_;
    index /= side();
  }
}

bool CubeSpec::contains(std::span<const int> site) const {
  if (site.size() != static_cast<std::size_t>(d_)) return false;
  return std::all_of(site.begin(), site.end(), [this](int n) { return std::abs(n) <= L_; });
}

CubeSites enumerate_cube(const CubeSpec& cube) {
  const auto d = static_cast<std::size_t>(cube.dimension());
  CubeSites out{cube, std::vector<int>(cube.size() * d)};
  std::vector<int> site(d, -cube.half_side());
  for (std::size_t i = 0; i < cube.size(); ++i) {
    std::copy(site.begin(), site.end(), out.coords.begin() + static_cast<std::ptrdiff_t>(i * d));
    // odometer increment, last coordinate fastest
    for (std::size_t k = d; k-- > 0;) {
      if (++site[k] <= cube.half_side()) break;
      site[k] = -cube.half_side();
    }
  }
  return out;
}

double euclidean_norm(std::span<const int> site) {
  double s = 0.0;
  for (int n : site) s += static_cast<double>(n) * n;
  return std::sqrt(s);
}

int sup_norm(std::span<const int> site) {
  int m = 0;
  for (int n : site) m = std::max(m, std::abs(n));
  return m;
}

}  // namespace anderson
