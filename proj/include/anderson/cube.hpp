#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace anderson {

/// The cube {n in Z^d : |n_i| <= L} with lexicographic site order.
class CubeSpec {
 public:
  /// Throws ConfigError when d < 1, L < 1, or (2L+1)^d overflows.
  CubeSpec(int dimension, int half_side);

  int dimension() const { return d_; }
  int half_side() const { return L_; }
  std::size_t side() const { return static_cast<std::size_t>(2 * L_ + 1); }
  std::size_t size() const { return size_; }
  /// Lexicographic stride of coordinate i; the last coordinate varies fastest.
  std::size_t stride(int i) const;
  /// (2L+1)^(d-1): the largest stride, equal to the Hamiltonian bandwidth.
  std::size_t bandwidth() const { return size_ / side(); }

  /// Sum_i (n_i + L) (2L+1)^(d-1-i).
  std::size_t index_of(std::span<const int> site) const;
  void coordinates(std::size_t index, std::span<int> out) const;
  bool contains(std::span<const int> site) const;

  friend bool operator==(const CubeSpec&, const CubeSpec&) = default;

 private:
  int d_;
  int L_;
  std::size_t size_;
};

/// All sites of a cube, flattened: site i occupies coords[i*d .. i*d+d).
struct CubeSites {
  CubeSpec cube;
  std::vector<int> coords;

  std::size_t size() const { return cube.size(); }
  std::span<const int> site(std::size_t i) const {
    const auto d = static_cast<std::size_t>(cube.dimension());
    return {coords.data() + i * d, d};
  }
  std::size_t index_of(std::span<const int> site) const { return cube.index_of(site); }
};

CubeSites enumerate_cube(const CubeSpec& cube);

/// Euclidean norm of a lattice site.
double euclidean_norm(std::span<const int> site);

/// max_i |n_i|.
int sup_norm(std::span<const int> site);

}  // namespace anderson
