#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace anderson {

/// Truncated Taylor series c[0] + c[1] h + ... + c[N] h^N of a function at a point.
/// c[k] = f^(k)(x) / k!.
template <std::size_t N>
struct Jet {
  std::array<double, N + 1> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(double x, double slope = 1.0) {
    Jet j;
    j.c[0] = x;
    if constexpr (N >= 1) j.c[1] = slope;
    return j;
  }

  double value() const { return c[0]; }
  double derivative(std::size_t k) const {
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return c[k] * fact;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t i = 0; i <= N; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t i = 0; i <= N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
};

template <std::size_t N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <std::size_t N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <std::size_t N>
Jet<N> operator*(Jet<N> a, double s) { return a *= s; }
template <std::size_t N>
Jet<N> operator*(double s, Jet<N> a) { return a *= s; }
template <std::size_t N>
Jet<N> operator+(Jet<N> a, double s) {
  a.c[0] += s;
  return a;
}
template <std::size_t N>
Jet<N> operator+(double s, Jet<N> a) { return a + s; }
template <std::size_t N>
Jet<N> operator-(double s, Jet<N> a) {
  a *= -1.0;
  a.c[0] += s;
  return a;
}
template <std::size_t N>
Jet<N> operator-(Jet<N> a) { return a *= -1.0; }

template <std::size_t N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (std::size_t k = 0; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i <= k; ++i) s += a.c[i] * b.c[k - i];
    r.c[k] = s;
  }
  return r;
}

template <std::size_t N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (std::size_t k = 0; k <= N; ++k) {
    double s = a.c[k];
    for (std::size_t i = 1; i <= k; ++i) s -= b.c[i] * r.c[k - i];
    r.c[k] = s / b.c[0];
  }
  return r;
}

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = std::exp(a.c[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += static_cast<double>(i) * a.c[i] * r.c[k - i];
    r.c[k] = s / static_cast<double>(k);
  }
  return r;
}

/// sin and cos together (their recurrences are coupled).
template <std::size_t N>
void sincos(const Jet<N>& a, Jet<N>& s, Jet<N>& co) {
  s = Jet<N>{};
  co = Jet<N>{};
  s.c[0] = std::sin(a.c[0]);
  co.c[0] = std::cos(a.c[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double t = static_cast<double>(i) * a.c[i];
      ss += t * co.c[k - i];
      cc -= t * s.c[k - i];
    }
    s.c[k] = ss / static_cast<double>(k);
    co.c[k] = cc / static_cast<double>(k);
  }
}

}  // namespace anderson
