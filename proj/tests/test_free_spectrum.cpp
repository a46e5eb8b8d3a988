#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "anderson/eigensolve.hpp"
#include "anderson/error.hpp"
#include "anderson/free_spectrum.hpp"
#include "anderson/hamiltonian.hpp"

using namespace anderson;

TEST_CASE("1-d eigenpairs") {
  const auto e = eigen_1d(2, 1);
  CHECK(std::abs(e.value) < 1e-15);
  CHECK(e(1) == doctest::Approx(1.0));
  CHECK(eigen_1d(1, 1).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(eigen_1d(1, 3)(2) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(eigen_1d(0, 3), std::out_of_range);
  CHECK_THROWS_AS(eigen_1d(8, 3), std::out_of_range);

  for (int L : {1, 3, 7}) {
    for (int j = 1; j <= 2 * L + 1; ++j) {
      const auto ef = eigen_1d(j, L);
      double residual = 0.0;
      for (int m = -L; m <= L; ++m) {
        const double left = m > -L ? ef(m - 1) : 0.0;
        const double right = m < L ? ef(m + 1) : 0.0;
        residual = std::max(residual, std::abs(left + right - ef.value * ef(m)));
      }
      CHECK(residual <= 1e-12);
    }
  }
}

TEST_CASE("1-d window counting") {
  CHECK(count_1d_window(1, -0.5, 1.5) == 2);
  CHECK(count_1d_window(3, -2.0, 2.0) == 7);
  CHECK(count_1d_window(100, 2.1, 3.0) == 0);
  CHECK(count_1d_window(5, 1.0, -1.0) == 0);

  // exact eigenvalues at both ends are included
  const int L = 9;
  const double hi = free_eigenvalue_1d(4, L);
  const double lo = free_eigenvalue_1d(12, L);
  CHECK(count_1d_window(L, lo, hi) == 9);

  // brute force, monotonicity and additivity
  for (int L2 : {1, 4, 10}) {
    for (double a = -2.3; a < 2.3; a += 0.37) {
      for (double b = a; b < 2.4; b += 0.29) {
        int brute = 0;
        for (int j = 1; j <= 2 * L2 + 1; ++j) {
          const double v = free_eigenvalue_1d(j, L2);
          brute += (v >= a && v <= b);
        }
        CHECK(count_1d_window(L2, a, b) == brute);
        const double mid = 0.5 * (a + b);
        CHECK(count_1d_window(L2, a, b) ==
              count_1d_window(L2, a, mid) + count_1d_window(L2, std::nextafter(mid, 3.0), b));
        CHECK(count_1d_window(L2, a, b) <= count_1d_window(L2, a - 0.1, b + 0.1));
      }
    }
  }
}

TEST_CASE("window enumeration examples") {
  const auto one = enumerate_window(1, 1, 0.0, 10.0);
  REQUIRE(one.atoms.size() == 3);
  CHECK(one.atoms[0].position == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(one.atoms[1].position) < 1e-14);
  CHECK(one.atoms[2].position == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  for (const auto& a : one.atoms) CHECK(a.multiplicity == 1);

  const auto two = enumerate_window(2, 1, 0.0, 3.0);
  REQUIRE(two.atoms.size() == 3);
  CHECK(two.atoms[0].multiplicity == 2);
  CHECK(two.atoms[1].multiplicity == 3);
  CHECK(two.atoms[2].multiplicity == 2);

  const auto edge = enumerate_window(2, 1, 4.0, 2.5);
  REQUIRE(edge.atoms.size() == 1);
  CHECK(edge.atoms[0].position == doctest::Approx(2.0 * (2.0 * std::sqrt(2.0) - 4.0)).epsilon(1e-14));
  CHECK(edge.atoms[0].multiplicity == 1);

  CHECK_THROWS_AS(enumerate_window(3, 2, 7.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_window(3, 2, 0.0, 0.0), std::invalid_argument);
  EnumerationOptions tiny;
  tiny.atom_cap = 10;
  CHECK_THROWS_AS(enumerate_window(3, 4, 0.0, 20.0, tiny), ResourceError);
}

TEST_CASE("window enumeration: serial and parallel agree, symmetric at E = 0") {
  EnumerationOptions serial;
  serial.exec = Exec::serial;
  const auto a = enumerate_window(3, 12, 0.0, 3.0, serial);
  const auto b = enumerate_window(3, 12, 0.0, 3.0);
  REQUIRE(a.atoms.size() == b.atoms.size());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    CHECK(a.atoms[i].position == b.atoms[i].position);
    CHECK(a.atoms[i].multiplicity == b.atoms[i].multiplicity);
  }
  const std::size_t n = a.atoms.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(a.atoms[i].position == doctest::Approx(-a.atoms[n - 1 - i].position).epsilon(1e-12));
    CHECK(a.atoms[i].multiplicity == a.atoms[n - 1 - i].multiplicity);
  }
}

TEST_CASE("closed form matches the dense eigensolver") {
  for (auto [d, L] : {std::pair{1, 6}, {2, 3}, {3, 2}}) {
    const CubeSpec cube(d, L);
    const auto values = full_spectrum(tridiagonalize(assemble_hamiltonian(cube)));
    std::vector<double> closed;
    const auto list = enumerate_window(d, L, 0.0, 4.0 * d * (L + 1));
    for (const auto& a : list.atoms)
      for (std::int64_t k = 0; k < a.multiplicity; ++k) closed.push_back(a.position / (L + 1));
    REQUIRE(closed.size() == values.size());
    for (std::size_t i = 0; i < closed.size(); ++i) CHECK(std::abs(closed[i] - values[i]) <= 1e-10);
  }
}

TEST_CASE("multiplicity audit") {
  const auto one = multiplicity_audit(1, 5);
  CHECK(one.max_multiplicity == 1);
  CHECK(one.bound == 1);
  CHECK(one.pass);

  const auto two = multiplicity_audit(2, 1);
  CHECK(two.max_multiplicity == 3);
  CHECK(std::abs(two.at_value) < 1e-12);
  CHECK(two.bound == 6);

  const auto three = multiplicity_audit(3, 2);
  CHECK(three.bound == 75);
  CHECK(three.pass);
  // brute force over the 125 triples
  std::vector<double> all;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      for (int k = 1; k <= 5; ++k) all.push_back(free_eigenvalue_1d(i, 2) + free_eigenvalue_1d(j, 2) + free_eigenvalue_1d(k, 2));
  std::sort(all.begin(), all.end());
  std::int64_t best = 0;
  for (const auto& g : group_sorted_values(all, kEigenGroupTolerance)) best = std::max(best, g.count);
  CHECK(three.max_multiplicity == best);
}
