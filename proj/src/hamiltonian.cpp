#include "anderson/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace anderson {

BandedSymmetricMatrix::BandedSymmetricMatrix(std::size_t order, std::size_t bandwidth)
    : n_(order), b_(order == 0 ? 0 : std::min(bandwidth, order - 1)), band_(order * (b_ + 1), 0.0) {}

double BandedSymmetricMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i < j) std::swap(i, j);
  if (i - j > b_) return 0.0;
  return lower(i, j);
}

double BandedSymmetricMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    const std::size_t lo = i > b_ ? i - b_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + b_);
    for (std::size_t j = lo; j <= hi; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

bool BandedSymmetricMatrix::all_finite() const {
  return std::all_of(band_.begin(), band_.end(), [](double x) { return std::isfinite(x); });
}

DenseSymmetric to_dense(const BandedSymmetricMatrix& m) {
  DenseSymmetric out(m.order());
  for (std::size_t j = 0; j < m.order(); ++j) {
    const std::size_t hi = std::min(m.order() - 1, j + m.bandwidth());
    for (std::size_t i = j; i <= hi; ++i) {
      out(i, j) = m.lower(i, j);
      out(j, i) = m.lower(i, j);
    }
  }
  return out;
}

BandedSymmetricMatrix assemble_hamiltonian(const CubeSpec& cube, std::span<const double> potential,
                                           std::optional<Rescale> rescale) {
  const std::size_t n = cube.size();
  if (!potential.empty() && potential.size() != n) {
    throw std::invalid_argument("potential has " + std::to_string(potential.size()) + " entries, cube has " +
                                std::to_string(n) + " sites");
  }
  const double factor = rescale ? rescale->factor : 1.0;
  const double shift = rescale ? rescale->energy : 0.0;

  BandedSymmetricMatrix m(n, cube.bandwidth());
  std::vector<int> site(static_cast<std::size_t>(cube.dimension()));
  for (std::size_t i = 0; i < n; ++i) {
    cube.coordinates(i, site);
    const double v = potential.empty() ? 0.0 : potential[i];
    m.lower(i, i) = rescale ? factor * (v - shift) : v;
    // forward neighbour in each coordinate; the backward one is the transpose
    for (int k = 0; k < cube.dimension(); ++k) {
      if (site[static_cast<std::size_t>(k)] < cube.half_side()) m.lower(i + cube.stride(k), i) = factor;
    }
  }
  return m;
}

BandedSymmetricMatrix assemble_hamiltonian(const CubeSpec& cube, const SiteField& field,
                                           std::optional<Rescale> rescale) {
  if (!(field.cube == cube)) throw std::invalid_argument("site field was sampled on a different cube");
  return assemble_hamiltonian(cube, std::span<const double>(field.v), rescale);
}

}  // namespace anderson
