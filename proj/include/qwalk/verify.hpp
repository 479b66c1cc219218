#pragma once

#include <functional>
#include <vector>

#include "qwalk/evolve.hpp"
#include "qwalk/limitlaw.hpp"

namespace qwalk {

// Right-continuous step CDF of X_t / scale built from a distribution table.
struct RescaledCdf {
  std::vector<double> xs;   // ascending jump locations
  std::vector<double> cum;  // inclusive cumulative probability at xs[i]

  double value(double x) const;  // F(x)
  double left(double x) const;   // F(x-)
};

RescaledCdf rescaled_empirical_cdf(const DistTable& dist, double scale);

// Levy distance between a step CDF and a limit law: the least eps such that
// F_law(x-eps) - eps <= F_emp(x) <= F_law(x+eps) + eps for all x. Metrizes
// weak convergence; unlike the pointwise sup it stays meaningful when the law
// has an atom the lattice walk can only approach from neighboring sites.
// Constraints are checked at every empirical jump from both sides, which is
// exact for a step function against a smooth-plus-atom law.
double ks_distance(const RescaledCdf& emp, const LimitLaw& law);

// Pointwise sup of |F_emp - F_law| over the empirical jump points, their left
// limits, 0-, 0, and a uniform 2001-point grid on [-1, 1]. Reported as a
// secondary diagnostic; >= atom/2 by construction whenever the law has an
// atom between lattice sites, so it does not converge for the atom cases.
double sup_cdf_distance(const RescaledCdf& emp, const LimitLaw& law);

// Low-level sup over the same evaluation grid for arbitrary CDF callables
// (value and left-limit views of each side).
double sup_cdf_distance(const std::function<double(double)>& f,
                        const std::function<double(double)>& f_left,
                        const std::function<double(double)>& g,
                        const std::function<double(double)>& g_left,
                        const std::vector<double>& jump_points);

// Probability mass within |x| <= window_fraction * scale.
double localization_mass(const DistTable& dist, double scale,
                         double window_fraction);

// Empirical moment E[(X/scale)^r], summed in ascending-x order.
double empirical_moment(const DistTable& dist, double scale, int r);

struct LocalizationReport {
  double window_fraction = 0.0;
  double empirical_mass = 0.0;
  double predicted_atom = 0.0;
};

struct MomentTriple {
  int r = 0;
  double empirical = 0.0;  // simulation at the configured tau
  double spectral = 0.0;   // k-space limit integral
  double density = 0.0;    // x-space integral against the limit density
};

struct ComparisonReport {
  WalkParams params;
  LawCase law_case;
  long t = 0;               // simulated time
  double scale = 0.0;       // ballistic rescaling of X_t
  double ks = 0.0;          // Levy distance (atom-aware)
  double sup_pointwise = 0.0;
  LocalizationReport localization;
  std::vector<MomentTriple> moments;
  int components = 0;       // density components in the assembled law
};

struct CompareOptions {
  double window_fraction = 0.05;
  std::vector<int> orders = {1, 2};
  int workers = 1;
};

// Full cross-validation at one configuration: direct evolution, rescaled CDF
// against the assembled law, localization window, and the three moment routes.
ComparisonReport compare(const WalkParams& params, const LawCase& law_case,
                         const CompareOptions& opts = {});

}  // namespace qwalk
