#include "qwalk/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qwalk {

namespace {

double circular_distance(double a, double b) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

}  // namespace

void validate_theta(double theta) {
  constexpr double pi = std::numbers::pi;
  if (!std::isfinite(theta) || theta < 0.0 || theta >= 2.0 * pi)
    throw ForbiddenTheta("theta must lie in [0, 2*pi): got " +
                         std::to_string(theta));
  for (double excluded : {0.0, 0.5 * pi, pi, 1.5 * pi}) {
    if (circular_distance(theta, excluded) <= kThetaExclusionTol)
      throw ForbiddenTheta(
          "theta must stay away from {0, pi/2, pi, 3pi/2}: got " +
          std::to_string(theta));
  }
}

void validate_spinor(const Complex& alpha, const Complex& beta) {
  double norm = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kSpinorNormTol)
    throw InvalidParams("initial spinor must be normalized: |alpha|^2+|beta|^2 = " +
                        std::to_string(norm));
}

WalkParams make_params(double theta, long tau, int m, int n,
                       const Complex& alpha, const Complex& beta) {
  validate_theta(theta);
  validate_spinor(alpha, beta);
  if (tau < 1) throw InvalidParams("tau must be >= 1");
  if (m < 1) throw InvalidParams("m must be >= 1");
  if (n < 1) throw InvalidParams("n must be >= 1");
  return WalkParams{theta, tau, m, n, alpha, beta};
}

CoinSet coin_matrices(double theta) {
  double c = std::cos(theta);
  double s = std::sin(theta);
  CoinSet coins;
  coins.c = c;
  coins.s = s;
  coins.U = {c, s, s, -c};
  coins.H = {1.0, 0.0, 0.0, -1.0};
  coins.P = {c, s, 0.0, 0.0};
  coins.Q = {0.0, 0.0, s, -c};
  coins.P1 = {1.0, 0.0, 0.0, 0.0};
  coins.Q1 = {0.0, 0.0, 0.0, -1.0};
  return coins;
}

}  // namespace qwalk
