#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace anderson {

/// 1/(pi sqrt(4 - E^2)); throws std::domain_error for |E| >= 2.
double dos_1d(double E);

/// Density n_r(E) of a sum of r independent 2cos(theta), theta uniform.
/// r = 2 by the arithmetic-geometric mean form of the elliptic integral, r = 3, 4 by
/// angle quadrature over n_2 split at the singular points; r >= 5 by
/// angle quadrature over an interpolated grid of n_{r-1} (about 1e-6 accurate).
/// Zero outside (-2r, 2r); +infinity at the r = 2 logarithmic point E = 0.
double dos_density(int r, double E);

/// n_2 in closed form, K(sqrt(1 - E^2/16)) / (2 pi^2).
double dos_2d_closed_form(double E);

/// N_r((a, b)) by the recursion N_r(I) = (1/pi) int_0^pi N_{r-1}(I - 2cos theta) dtheta
/// from the closed form N_1; (a, b) is clipped to [-2r, 2r].
double ids(int r, double a, double b);

struct DensityGrid {
  int r = 1;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> energy;   // cell centres of a uniform grid on [-2r, 2r]
  std::vector<double> density;  // n_r at each centre
  double normalization = 0.0;   // int n_r by quadrature split at the van Hove points
  double grid_mass = 0.0;       // midpoint sum over the grid
  double symmetry_defect = 0.0; // max |n(E) - n(-E)| over the grid
};

/// Throws std::invalid_argument for r < 1 or grid_size < 2; grid_size is rounded
/// up to even so no centre lands on E = 0. Throws NumericalError when the
/// normalization misses 1 by more than 1e-6.
DensityGrid dos_grid(int r, std::size_t grid_size);

/// n1hat(t) = (1/2pi) int_0^{2pi} exp(2it cos theta) dtheta, trapezoid with enough nodes
/// to resolve the oscillation (equals J0(2t)).
double characteristic_1d(double t);

struct FourierDecayRow {
  double t = 0.0;
  double magnitude = 0.0;  // |n1hat(t)|^r
  double scaled = 0.0;     // magnitude * t^(r/2)
};

struct FourierDecayTable {
  int r = 1;
  std::vector<FourierDecayRow> rows;
  double sup_scaled = 0.0;
};

FourierDecayTable fourier_decay_check(int r, std::span<const double> t_grid);

}  // namespace anderson
