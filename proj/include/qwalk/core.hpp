#pragma once

#include "qwalk/algebra.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

// Full experiment configuration: coin angle, inter-kick interval tau, number
// of kicks m, number of post-kick U-blocks n, and the initial spinor.
struct WalkParams {
  double theta = 0.0;
  long tau = 1;
  int m = 1;
  int n = 1;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  // The analysis time (m+n)*tau + m and the matching ballistic scale.
  long analysis_time() const { return static_cast<long>(m + n) * tau + m; }
  long ballistic_scale() const { return static_cast<long>(m + n) * tau; }
};

// The coin pair U(theta), H = diag(1,-1) and their shift splittings:
// P/Q are the top/bottom rows of U, P1/Q1 the top/bottom rows of H.
struct CoinSet {
  Mat2 U, H, P, Q, P1, Q1;
  double c = 0.0;  // cos(theta)
  double s = 0.0;  // sin(theta)
};

// Which limit-law family an analysis belongs to. m == 0 selects the plain
// (kick-free) walk observed at time tau; m >= 1 selects the kicked walk
// observed at time (m+n)*tau + m.
struct LawCase {
  int m = 0;
  int n = 0;

  static LawCase usual() { return {0, 0}; }
  bool is_usual() const { return m == 0; }
};

inline constexpr double kSpinorNormTol = 1e-12;
inline constexpr double kThetaExclusionTol = 1e-9;

// Throws ForbiddenTheta unless theta is in [0, 2pi) and more than 1e-9 away
// (circularly) from each of {0, pi/2, pi, 3pi/2}, where the limit densities
// degenerate.
void validate_theta(double theta);

// Throws InvalidParams unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
// Normalization is checked, never silently repaired.
void validate_spinor(const Complex& alpha, const Complex& beta);

WalkParams make_params(double theta, long tau, int m, int n,
                       const Complex& alpha, const Complex& beta);

CoinSet coin_matrices(double theta);

}  // namespace qwalk
