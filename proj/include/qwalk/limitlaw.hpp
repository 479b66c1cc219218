#pragma once

#include <cstddef>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

// Inputs of the closed-form weight polynomials.
struct LawParams {
  double theta = 0.0;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  int n = 1;
};

// The closed-form weights multiplying the arcsine-type base density. The B
// weights (and M3) carry their scale prefactor exactly as defined.
enum class WeightId { KUsual, M1, M2, M3, B1, B2, B3 };

// Base density |s| / (pi (1-x^2) sqrt(c^2-x^2)) on the open interval
// (-|c|, |c|); zero outside (indicator convention, edges included).
double konno_density(double x, double c);

// Mass of the delta atom at the origin: s^2/(1+|s|) for (m,n)=(1,1),
// c^2|s|/2 + (s^2-c^2)|s|(1-|s|)^2 / (2c^4) for (2,2), zero for the other
// implemented families. Throws UnsupportedCase for m >= 3.
double delta_weight(int m, int n, double theta);

// Evaluates one closed-form weight at x.
double weight(WeightId id, double x, const LawParams& params);

struct LawComponent {
  WeightId id;
  double scale;  // sigma: the component density is f_K(sigma x) W(sigma x)
};

// A weak-limit law: an optional delta atom at 0 plus scaled density
// components, each supported on (-|c|/scale, |c|/scale).
struct LimitLaw {
  LawCase law_case;
  LawParams params;
  double c = 0.0;
  double s = 0.0;
  double delta_weight = 0.0;
  std::vector<LawComponent> components;

  double support_edge(std::size_t i) const;
  double component_density(std::size_t i, double x) const;
  // Continuous part only; the atom is carried symbolically.
  double density(double x) const;
};

// Assembles the law for the requested family. Throws UnsupportedCase for
// m >= 3 or n < 1.
LimitLaw limit_law(const LawCase& law_case, double theta, const Complex& alpha,
                   const Complex& beta);

// Component integrals use the substitution x = (|c|/scale) sin u, under which
// the inverse-square-root edge factor cancels and the integrand is smooth on
// [-pi/2, pi/2]. Exposed for the table-backed CDF evaluator.
double component_integrand_u(const LimitLaw& law, std::size_t i, double u);
double component_x_of_u(const LimitLaw& law, std::size_t i, double u);

// Mass of one component, adaptive quadrature to abs tol 1e-9.
double component_mass(const LimitLaw& law, std::size_t i);

// F(x) = delta_weight [x >= 0] + sum_i integral of component i up to x.
// Monotone, right-continuous, F(-1) = 0 and F(1) = 1 within quadrature error.
double law_cdf(const LimitLaw& law, double x);

// Left limit F(x-): excludes the atom exactly at x = 0.
double law_cdf_left(const LimitLaw& law, double x);

// r-th moment of the law (the atom contributes only at r = 0).
double law_moment(const LimitLaw& law, int r);

// Density of component i at (upper support edge - offset); probes whether the
// inverse-square-root edge singularity is cancelled by a vanishing weight.
double band_edge_value(const LimitLaw& law, std::size_t component,
                       double offset);

}  // namespace qwalk
