#include "qwalk/limitlaw.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/quadrature.hpp"

namespace qwalk {

namespace {

constexpr double kComponentQuadTol = 1e-9;

// Shared bracket of the weight polynomials:
//   Lambda = |alpha|^2 - |beta|^2 + (alpha conj(beta) + conj(alpha) beta) s/c.
struct WeightContext {
  double c, s, pop, cross, lambda, ratio2;  // ratio2 = s^2/c^2

  explicit WeightContext(const LawParams& p) {
    c = std::cos(p.theta);
    s = std::sin(p.theta);
    pop = std::norm(p.alpha) - std::norm(p.beta);
    cross = 2.0 * std::real(p.alpha * std::conj(p.beta));
    lambda = pop + cross * s / c;
    ratio2 = s * s / (c * c);
  }
};

}  // namespace

double konno_density(double x, double c) {
  double ac = std::abs(c);
  if (std::abs(x) >= ac) return 0.0;
  double s = std::sqrt(1.0 - c * c);
  return s / (std::numbers::pi * (1.0 - x * x) * std::sqrt(c * c - x * x));
}

double delta_weight(int m, int n, double theta) {
  if (m > 2)
    throw UnsupportedCase(
        "no closed-form limit law is known for m >= 3 kicks; supported: the "
        "plain walk and m in {1, 2}");
  double s = std::sin(theta);
  double c = std::cos(theta);
  if (m == 1 && n == 1) return s * s / (1.0 + std::abs(s));
  if (m == 2 && n == 2) {
    double as = std::abs(s);
    double c2 = c * c;
    return c2 * as / 2.0 +
           (s * s - c2) * as * (1.0 - as) * (1.0 - as) / (2.0 * c2 * c2);
  }
  return 0.0;
}

double weight(WeightId id, double x, const LawParams& p) {
  WeightContext w(p);
  double x2 = x * x;
  double r2x2 = w.ratio2 * x2;
  double nn = static_cast<double>(p.n);
  switch (id) {
    case WeightId::KUsual:
      return 1.0 - w.lambda * x;
    case WeightId::M1:
      return (1.0 - w.lambda * x) * (1.0 - r2x2);
    case WeightId::M2:
      return (1.0 - w.lambda * x) * (1.0 - r2x2) * (1.0 - r2x2);
    case WeightId::M3: {
      double c3 = w.c * w.c * w.c;
      double bracket = 2.0 - 2.0 * w.cross * w.s * (1.0 + w.s * w.s) / c3 * x -
                       r2x2 - 3.0 * w.lambda * r2x2 * x +
                       4.0 * w.cross * w.s * w.s * w.s / c3 * x / (1.0 - x2);
      return 3.0 * r2x2 * bracket;
    }
    case WeightId::B1:
      return (nn + 1.0) / (nn - 1.0) * (1.0 + w.lambda * x) * r2x2;
    case WeightId::B2: {
      double c3 = w.c * w.c * w.c;
      double bracket =
          1.0 +
          (w.pop - w.cross * w.s * (3.0 * w.s * w.s + 1.0) / c3) * x -
          4.0 * w.lambda * r2x2 * x +
          4.0 * w.cross * w.s * w.s * w.s / c3 * x / (1.0 - x2);
      return (nn + 2.0) / nn * r2x2 * bracket;
    }
    case WeightId::B3:
      return (nn + 2.0) / (nn - 2.0) * (1.0 + w.lambda * x) * r2x2 *
             (1.0 - r2x2);
  }
  return 0.0;
}

double LimitLaw::support_edge(std::size_t i) const {
  return std::abs(c) / components[i].scale;
}

double LimitLaw::component_density(std::size_t i, double x) const {
  const LawComponent& comp = components[i];
  if (std::abs(x) >= support_edge(i)) return 0.0;
  double arg = comp.scale * x;
  double base = konno_density(arg, c);
  if (base == 0.0) return 0.0;
  return base * weight(comp.id, arg, params);
}

double LimitLaw::density(double x) const {
  double total = 0.0;
  for (std::size_t i = 0; i < components.size(); ++i)
    total += component_density(i, x);
  return total;
}

LimitLaw limit_law(const LawCase& law_case, double theta, const Complex& alpha,
                   const Complex& beta) {
  validate_theta(theta);
  validate_spinor(alpha, beta);
  int m = law_case.m, n = law_case.n;
  if (m < 0 || m > 2)
    throw UnsupportedCase(
        "no closed-form limit law is known for m >= 3 kicks; supported: the "
        "plain walk and m in {1, 2}");
  if (m > 0 && n < 1) throw UnsupportedCase("n must be >= 1");

  LimitLaw law;
  law.law_case = law_case;
  law.params = {theta, alpha, beta, n};
  law.c = std::cos(theta);
  law.s = std::sin(theta);
  law.delta_weight = m == 0 ? 0.0 : qwalk::delta_weight(m, n, theta);

  double dn = static_cast<double>(n);
  if (m == 0) {
    law.components = {{WeightId::KUsual, 1.0}};
  } else if (m == 1 && n == 1) {
    law.components = {{WeightId::M1, 1.0}};
  } else if (m == 1) {
    law.components = {{WeightId::M1, 1.0}, {WeightId::B1, (dn + 1.0) / (dn - 1.0)}};
  } else if (n == 1) {
    law.components = {{WeightId::M2, 1.0}, {WeightId::M3, 3.0}};
  } else if (n == 2) {
    law.components = {{WeightId::M2, 1.0}, {WeightId::B2, 2.0}};
  } else {
    law.components = {{WeightId::M2, 1.0},
                      {WeightId::B2, (dn + 2.0) / dn},
                      {WeightId::B3, (dn + 2.0) / (dn - 2.0)}};
  }
  return law;
}

double component_x_of_u(const LimitLaw& law, std::size_t i, double u) {
  return law.support_edge(i) * std::sin(u);
}

// After x = (|c|/scale) sin u the edge factor of the base density cancels:
//   f_K(|c| sin u) W(|c| sin u) dx = |s| W(|c| sin u) / (pi scale (1 - c^2 sin^2 u)) du.
double component_integrand_u(const LimitLaw& law, std::size_t i, double u) {
  double ac = std::abs(law.c);
  double sinu = std::sin(u);
  double arg = ac * sinu;  // argument handed to the weight
  double as = std::abs(law.s);
  return as * weight(law.components[i].id, arg, law.params) /
         (std::numbers::pi * law.components[i].scale *
          (1.0 - law.c * law.c * sinu * sinu));
}

double component_mass(const LimitLaw& law, std::size_t i) {
  return adaptive_simpson(
      [&](double u) { return component_integrand_u(law, i, u); },
      -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, kComponentQuadTol);
}

namespace {

double component_cdf(const LimitLaw& law, std::size_t i, double x) {
  double edge = law.support_edge(i);
  if (x <= -edge) return 0.0;
  if (x >= edge) return component_mass(law, i);
  double u = std::asin(x / edge);
  return adaptive_simpson(
      [&](double t) { return component_integrand_u(law, i, t); },
      -0.5 * std::numbers::pi, u, kComponentQuadTol);
}

}  // namespace

double law_cdf(const LimitLaw& law, double x) {
  double total = x >= 0.0 ? law.delta_weight : 0.0;
  for (std::size_t i = 0; i < law.components.size(); ++i)
    total += component_cdf(law, i, x);
  return total;
}

double law_cdf_left(const LimitLaw& law, double x) {
  double total = x > 0.0 ? law.delta_weight : 0.0;
  for (std::size_t i = 0; i < law.components.size(); ++i)
    total += component_cdf(law, i, x);
  return total;
}

double law_moment(const LimitLaw& law, int r) {
  if (r < 0) throw InvalidParams("moment order must be >= 0");
  double total = r == 0 ? law.delta_weight : 0.0;
  for (std::size_t i = 0; i < law.components.size(); ++i) {
    double edge = law.support_edge(i);
    total += adaptive_simpson(
        [&](double u) {
          double x = edge * std::sin(u);
          double p = 1.0;
          for (int j = 0; j < r; ++j) p *= x;
          return p * component_integrand_u(law, i, u);
        },
        -0.5 * std::numbers::pi, 0.5 * std::numbers::pi, kComponentQuadTol);
  }
  return total;
}

double band_edge_value(const LimitLaw& law, std::size_t component,
                       double offset) {
  return law.component_density(component, law.support_edge(component) - offset);
}

}  // namespace qwalk
