#include "qwalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwalk/spectral.hpp"

namespace qwalk {

namespace {

// Table-backed CDF of a limit law: per-component prefix integrals on a
// uniform u-grid (Simpson per panel), with an on-the-fly partial panel for
// point queries. Accuracy is far below the comparison tolerances.
class LawCdfTable {
 public:
  explicit LawCdfTable(const LimitLaw& law, int panels = 2048)
      : law_(law), panels_(panels) {
    double u0 = -0.5 * std::numbers::pi;
    double du = std::numbers::pi / panels;
    prefixes_.resize(law.components.size());
    for (std::size_t i = 0; i < law.components.size(); ++i) {
      auto& prefix = prefixes_[i];
      prefix.assign(panels + 1, 0.0);
      double left = component_integrand_u(law_, i, u0);
      for (int j = 0; j < panels; ++j) {
        double a = u0 + j * du, b = a + du;
        double mid = component_integrand_u(law_, i, 0.5 * (a + b));
        double right = component_integrand_u(law_, i, b);
        prefix[j + 1] = prefix[j] + du / 6.0 * (left + 4.0 * mid + right);
        left = right;
      }
    }
  }

  double continuous(double x) const {
    double total = 0.0;
    for (std::size_t i = 0; i < law_.components.size(); ++i)
      total += component(i, x);
    return total;
  }

  double value(double x) const {  // right-continuous, atom included
    return continuous(x) + (x >= 0.0 ? law_.delta_weight : 0.0);
  }

  double left(double x) const {  // F(x-)
    return continuous(x) + (x > 0.0 ? law_.delta_weight : 0.0);
  }

 private:
  double component(std::size_t i, double x) const {
    double edge = law_.support_edge(i);
    const auto& prefix = prefixes_[i];
    if (x <= -edge) return 0.0;
    if (x >= edge) return prefix.back();
    double u0 = -0.5 * std::numbers::pi;
    double du = std::numbers::pi / panels_;
    double u = std::asin(x / edge);
    int j = std::clamp(static_cast<int>((u - u0) / du), 0, panels_ - 1);
    double a = u0 + j * du;
    // Simpson over the partial panel [a, u].
    double fa = component_integrand_u(law_, i, a);
    double fm = component_integrand_u(law_, i, 0.5 * (a + u));
    double fu = component_integrand_u(law_, i, u);
    return prefix[j] + (u - a) / 6.0 * (fa + 4.0 * fm + fu);
  }

  const LimitLaw& law_;
  int panels_;
  std::vector<std::vector<double>> prefixes_;
};

}  // namespace

double RescaledCdf::value(double x) const {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return 0.0;
  return cum[static_cast<std::size_t>(it - xs.begin()) - 1];
}

double RescaledCdf::left(double x) const {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return 0.0;
  return cum[static_cast<std::size_t>(it - xs.begin()) - 1];
}

RescaledCdf rescaled_empirical_cdf(const DistTable& dist, double scale) {
  RescaledCdf cdf;
  cdf.xs.reserve(dist.entries.size());
  cdf.cum.reserve(dist.entries.size());
  double running = 0.0;
  for (const auto& [x, p] : dist.entries) {
    running += p;
    cdf.xs.push_back(static_cast<double>(x) / scale);
    cdf.cum.push_back(running);
  }
  return cdf;
}

double ks_distance(const RescaledCdf& emp, const LimitLaw& law) {
  LawCdfTable table(law);
  // Levy distance: least eps with G(x-eps)-eps <= F(x) <= G(x+eps)+eps.
  // For a step F against monotone G it suffices to check each jump of F from
  // both sides: the upper constraint binds at the start of each constancy
  // interval, the lower one at its end.
  auto satisfied = [&](double eps) {
    for (std::size_t i = 0; i < emp.xs.size(); ++i) {
      double hi = emp.cum[i];
      double lo = i == 0 ? 0.0 : emp.cum[i - 1];
      double q = emp.xs[i];
      if (hi > table.value(q + eps) + eps + 1e-15) return false;
      if (table.left(q - eps) - eps > lo + 1e-15) return false;
    }
    return true;
  };
  if (satisfied(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 60; ++iter) {
    double mid = 0.5 * (lo + hi);
    (satisfied(mid) ? hi : lo) = mid;
  }
  return hi;
}

double sup_cdf_distance(const std::function<double(double)>& f,
                        const std::function<double(double)>& f_left,
                        const std::function<double(double)>& g,
                        const std::function<double(double)>& g_left,
                        const std::vector<double>& jump_points) {
  std::vector<double> points(jump_points);
  points.push_back(0.0);
  constexpr int kGrid = 2001;
  for (int i = 0; i < kGrid; ++i)
    points.push_back(-1.0 + 2.0 * static_cast<double>(i) / (kGrid - 1));
  double sup = 0.0;
  for (double q : points) {
    sup = std::max(sup, std::abs(f(q) - g(q)));
    sup = std::max(sup, std::abs(f_left(q) - g_left(q)));
  }
  return sup;
}

double sup_cdf_distance(const RescaledCdf& emp, const LimitLaw& law) {
  LawCdfTable table(law);
  return sup_cdf_distance([&](double x) { return emp.value(x); },
                          [&](double x) { return emp.left(x); },
                          [&](double x) { return table.value(x); },
                          [&](double x) { return table.left(x); }, emp.xs);
}

double localization_mass(const DistTable& dist, double scale,
                         double window_fraction) {
  double window = window_fraction * scale;
  double mass = 0.0;
  for (const auto& [x, p] : dist.entries)
    if (std::abs(static_cast<double>(x)) <= window) mass += p;
  return mass;
}

double empirical_moment(const DistTable& dist, double scale, int r) {
  double total = 0.0;
  for (const auto& [x, p] : dist.entries) {
    double y = static_cast<double>(x) / scale;
    double pw = 1.0;
    for (int j = 0; j < r; ++j) pw *= y;
    total += pw * p;
  }
  return total;
}

ComparisonReport compare(const WalkParams& params, const LawCase& law_case,
                         const CompareOptions& opts) {
  if (!law_case.is_usual() &&
      (law_case.m != params.m || law_case.n != params.n))
    throw InvalidParams("law case does not match the walk parameters");

  LimitLaw law =
      limit_law(law_case, params.theta, params.alpha, params.beta);

  ComparisonReport report;
  report.params = params;
  report.law_case = law_case;
  report.t = law_case.is_usual() ? params.tau : params.analysis_time();
  report.scale = static_cast<double>(law_case.is_usual()
                                         ? params.tau
                                         : params.ballistic_scale());
  report.components = static_cast<int>(law.components.size());

  DistTable dist = probabilities(evolve_to(params, report.t));
  RescaledCdf emp = rescaled_empirical_cdf(dist, report.scale);
  report.ks = ks_distance(emp, law);
  report.sup_pointwise = sup_cdf_distance(emp, law);

  // Atom window: half-width eps * tau. The packet carrying the atom stays
  // O(1) sites wide, and over tau sites the continuous part contributes only
  // O(eps/(m+n)) mass, so this window tracks the atom itself.
  report.localization.window_fraction = opts.window_fraction;
  report.localization.empirical_mass = localization_mass(
      dist, static_cast<double>(params.tau), opts.window_fraction);
  report.localization.predicted_atom = law.delta_weight;

  MomentOptions moment_opts;
  moment_opts.workers = opts.workers;
  for (int r : opts.orders) {
    MomentTriple triple;
    triple.r = r;
    triple.empirical = empirical_moment(dist, report.scale, r);
    triple.spectral = limit_moment(law_case, params.theta, params.alpha,
                                   params.beta, r, moment_opts);
    triple.density = law_moment(law, r);
    report.moments.push_back(triple);
  }
  return report;
}

}  // namespace qwalk
