#pragma once

#include <complex>

#include "anderson/parallel.hpp"
#include "anderson/test_function.hpp"

namespace anderson {

struct FourierNormOptions {
  /// Weight sqrt(1 + (xi/a)^2): the norm of x -> f(x/a) computed from f itself.
  double xi_scale = 1.0;
  double relative_tolerance = 1e-6;
  double xi_cap = 1e5;
  /// Gauss-Legendre panels per half-oscillation of the xi integrand.
  int refinement = 1;
  Exec exec = Exec::parallel;
};

/// fhat(xi) = (1/2pi) int f(x) e^{-i x xi} dx.
std::complex<double> fourier_transform(const TestFunction& f, double xi);

/// int sqrt(1 + (xi/a)^2) |fhat(xi)| dxi. The cosine transform about the centre is
/// integrated piecewise between its sign changes; |xi| > Xi is covered by the
/// integration-by-parts bound |fhat| <= ||f^(k)||_1 / (2 pi |xi|^k). Xi doubles until
/// the bound is within tolerance; throws NumericalError past xi_cap.
WeightedFourierNorm fourier_weighted_norm(const TestFunction& f, const FourierNormOptions& options = {});

}  // namespace anderson
