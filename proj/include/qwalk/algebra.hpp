#pragma once

#include <cmath>
#include <complex>

namespace qwalk {

using Complex = std::complex<double>;

// Two-component coin-space amplitude at one lattice site.
struct Spinor {
  Complex up{0.0, 0.0};
  Complex down{0.0, 0.0};

  double norm_sq() const { return std::norm(up) + std::norm(down); }
};

inline Spinor operator+(const Spinor& a, const Spinor& b) {
  return {a.up + b.up, a.down + b.down};
}

inline Spinor operator-(const Spinor& a, const Spinor& b) {
  return {a.up - b.up, a.down - b.down};
}

inline Spinor operator*(const Complex& z, const Spinor& a) {
  return {z * a.up, z * a.down};
}

// <a|b>, conjugate-linear in the first slot.
inline Complex inner(const Spinor& a, const Spinor& b) {
  return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

// 2x2 complex matrix, row major: [[m00, m01], [m10, m11]].
struct Mat2 {
  Complex m00{}, m01{}, m10{}, m11{};

  Spinor operator*(const Spinor& v) const {
    return {m00 * v.up + m01 * v.down, m10 * v.up + m11 * v.down};
  }

  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }

  Mat2 operator+(const Mat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }

  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

// z^p for |z| = 1, in polar form so the modulus cannot drift for large p.
inline Complex unit_power(const Complex& z, long long p) {
  return std::polar(1.0, static_cast<double>(p) * std::arg(z));
}

// z^p by repeated multiplication, exact recurrence for small p >= 0.
inline Complex int_power(const Complex& z, int p) {
  Complex acc{1.0, 0.0};
  for (int i = 0; i < p; ++i) acc *= z;
  return acc;
}

}  // namespace qwalk
