#include <cmath>
#include <stdexcept>

#include "anderson/eigensolve.hpp"

namespace anderson::reference {

TridiagonalForm tridiagonalize(const DenseSymmetric& input) {
  const std::size_t n = input.n;
  if (n == 0) throw std::invalid_argument("tridiagonalize: empty matrix");
  for (double x : input.a)
    if (!std::isfinite(x)) throw std::invalid_argument("tridiagonalize: non-finite matrix entry");

  // lower triangle only: L(i, j) for i >= j
  std::vector<double> low(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) low[i * n + j] = input(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return i >= j ? low[i * n + j] : low[j * n + i]; };

  TridiagonalForm t;
  t.diagonal.assign(n, 0.0);
  t.offdiagonal.assign(n - 1, 0.0);
  std::vector<double> v(n), p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    t.diagonal[k] = at(k, k);
    const double alpha = at(k + 1, k);
    double tail = 0.0;
    for (std::size_t i = 1; i < m; ++i) tail += at(k + 1 + i, k) * at(k + 1 + i, k);
    if (tail == 0.0) {
      t.offdiagonal[k] = alpha;
      continue;
    }
    const double beta = -std::copysign(std::sqrt(alpha * alpha + tail), alpha);
    const double tau = (beta - alpha) / beta;
    v[0] = 1.0;
    for (std::size_t i = 1; i < m; ++i) v[i] = at(k + 1 + i, k) / (alpha - beta);
    t.offdiagonal[k] = beta;

    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += at(k + 1 + i, k + 1 + j) * v[j];
      p[i] = tau * s;
    }
    double pv = 0.0;
    for (std::size_t i = 0; i < m; ++i) pv += p[i] * v[i];
    for (std::size_t i = 0; i < m; ++i) p[i] -= 0.5 * tau * pv * v[i];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j <= i; ++j) at(k + 1 + i, k + 1 + j) -= v[i] * p[j] + p[i] * v[j];
  }
  if (n >= 2) {
    t.diagonal[n - 2] = at(n - 2, n - 2);
    t.offdiagonal[n - 2] = at(n - 1, n - 2);
  }
  t.diagonal[n - 1] = at(n - 1, n - 1);
  return t;
}

}  // namespace anderson::reference
