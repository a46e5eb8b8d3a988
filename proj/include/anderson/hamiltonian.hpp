#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "anderson/cube.hpp"
#include "anderson/disorder.hpp"

namespace anderson {

/// Symmetric matrix stored by its lower band: entry (i, j) with 0 <= i - j <= b.
class BandedSymmetricMatrix {
 public:
  BandedSymmetricMatrix(std::size_t order, std::size_t bandwidth);

  std::size_t order() const { return n_; }
  std::size_t bandwidth() const { return b_; }

  /// Any (i, j); zero outside the band.
  double operator()(std::size_t i, std::size_t j) const;
  /// Lower-band entry, i >= j and i - j <= bandwidth.
  double& lower(std::size_t i, std::size_t j) { return band_[j * (b_ + 1) + (i - j)]; }
  double lower(std::size_t i, std::size_t j) const { return band_[j * (b_ + 1) + (i - j)]; }

  /// Max absolute row sum.
  double norm_inf() const;
  bool all_finite() const;

 private:
  std::size_t n_;
  std::size_t b_;
  std::vector<double> band_;
};

/// Dense symmetric matrix, row-major with both triangles filled.
struct DenseSymmetric {
  std::size_t n = 0;
  std::vector<double> a;

  explicit DenseSymmetric(std::size_t order = 0) : n(order), a(order * order, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

DenseSymmetric to_dense(const BandedSymmetricMatrix& m);

/// Optional spectral rescaling: factor * (M - energy * I).
struct Rescale {
  double energy = 0.0;
  double factor = 1.0;
};

/// Dirichlet restriction of the lattice Laplacian to the cube plus diag(potential).
/// An empty potential gives the free operator. Bandwidth is (2L+1)^(d-1).
/// Throws std::invalid_argument when the potential length differs from N.
BandedSymmetricMatrix assemble_hamiltonian(const CubeSpec& cube, std::span<const double> potential = {},
                                           std::optional<Rescale> rescale = std::nullopt);

/// Same, using field.v; throws std::invalid_argument when field.cube != cube.
BandedSymmetricMatrix assemble_hamiltonian(const CubeSpec& cube, const SiteField& field,
                                           std::optional<Rescale> rescale = std::nullopt);

}  // namespace anderson
