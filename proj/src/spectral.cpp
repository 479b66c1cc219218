#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

constexpr double kDegenerateRadicand = 1e-12;
constexpr double kDegenerateZ = 1e-12;
// The closed forms divide by z2 - z1 and lose ~|1e-16 / dz| of absolute
// accuracy; amplitudes switch to powering well before the hard threshold.
constexpr double kNearDegenerateZ = 1e-5;

// Fixes the phase so the first component of modulus > 1e-12 is positive real.
Spinor phase_fixed(const Spinor& v) {
  Complex lead = std::abs(v.up) > 1e-12 ? v.up : v.down;
  Complex rot = std::conj(lead) / std::abs(lead);
  return rot * v;
}

Spinor normalized(const Spinor& v) {
  double n = std::sqrt(v.norm_sq());
  return Complex{1.0 / n, 0.0} * v;
}

// Direct 2x2 eigenvector solve for the (rare) k where the closed-form
// normalizing radicand vanishes. The eigenvalues themselves stay closed-form.
Spinor eigenvector_direct(const Mat2& op, const Complex& lambda) {
  // Rows of (op - lambda I); the eigenvector is orthogonal to the conjugate
  // of the larger row.
  Complex r0a = op.m00 - lambda, r0b = op.m01;
  Complex r1a = op.m10, r1b = op.m11 - lambda;
  double n0 = std::norm(r0a) + std::norm(r0b);
  double n1 = std::norm(r1a) + std::norm(r1b);
  Spinor v = n0 >= n1 ? Spinor{-r0b, r0a} : Spinor{-r1b, r1a};
  return phase_fixed(normalized(v));
}

}  // namespace

Mat2 u_hat(double k, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  Complex eik = std::polar(1.0, k), emk = std::polar(1.0, -k);
  return Mat2{eik * c, eik * s, emk * s, emk * -c};
}

Mat2 h_hat(double k) {
  return Mat2{std::polar(1.0, k), 0.0, 0.0, -std::polar(1.0, -k)};
}

EigenSystem eigensystem(double k, double theta) {
  EigenSystem es;
  es.k = k;
  es.c = std::cos(theta);
  es.s = std::sin(theta);
  double sk = std::sin(k), ck = std::cos(k);
  double w = std::sqrt(1.0 - es.c * es.c * sk * sk);  // >= |s| > 0
  double u = es.c * ck;

  es.lambda[0] = Complex{w, es.c * sk};
  es.lambda[1] = Complex{-w, es.c * sk};
  es.h[0] = -es.c * ck / w;
  es.h[1] = es.c * ck / w;

  double s2 = es.s * es.s;
  // w -+ u loses precision by direct subtraction when |u| is close to w;
  // w^2 - u^2 = s^2 gives the smaller of the two exactly.
  double w_plus_u = u >= 0.0 ? w + u : s2 / (w - u);
  double w_minus_u = u >= 0.0 ? s2 / (w + u) : w - u;
  double rad1 = w_plus_u / (2.0 * s2 * w);
  double rad2 = w_minus_u / (2.0 * s2 * w);
  if (std::min(rad1, rad2) >= kDegenerateRadicand) {
    Complex seik = es.s * std::polar(1.0, k);
    es.v[0] = std::sqrt(rad1) * Spinor{seik, Complex{w_minus_u, 0.0}};
    es.v[1] = std::sqrt(rad2) * Spinor{seik, Complex{-w_plus_u, 0.0}};
    es.A11 = Complex{es.c * ck * ck, sk * w} / w;
    es.A12 = Complex{std::abs(es.s) * ck / w, 0.0};
    es.A21 = es.A12;
    es.A22 = -std::conj(es.A11);
    es.closed_form = true;
    return es;
  }
  return eigensystem_direct(k, theta);
}

EigenSystem eigensystem_direct(double k, double theta) {
  EigenSystem es;
  es.k = k;
  es.c = std::cos(theta);
  es.s = std::sin(theta);
  double sk = std::sin(k), ck = std::cos(k);
  double w = std::sqrt(1.0 - es.c * es.c * sk * sk);
  es.lambda[0] = Complex{w, es.c * sk};
  es.lambda[1] = Complex{-w, es.c * sk};
  es.h[0] = -es.c * ck / w;
  es.h[1] = es.c * ck / w;
  Mat2 op = u_hat(k, theta);
  Mat2 hop = h_hat(k);
  es.v[0] = eigenvector_direct(op, es.lambda[0]);
  es.v[1] = eigenvector_direct(op, es.lambda[1]);
  es.A11 = inner(es.v[0], hop * es.v[0]);
  es.A12 = inner(es.v[0], hop * es.v[1]);
  es.A21 = inner(es.v[1], hop * es.v[0]);
  es.A22 = inner(es.v[1], hop * es.v[1]);
  es.closed_form = false;
  return es;
}

KickCoefficients kick_coefficients(const EigenSystem& es,
                                   const WalkParams& params) {
  KickCoefficients kc;
  Spinor psi0{params.alpha, params.beta};
  kc.a0[0] = inner(es.v[0], psi0);
  kc.a0[1] = inner(es.v[1], psi0);

  Complex l1t = unit_power(es.lambda[0], params.tau);
  Complex l2t = unit_power(es.lambda[1], params.tau);
  double tau_sign = params.tau % 2 == 0 ? 1.0 : -1.0;
  Complex zeta = l1t * es.A11;
  kc.nu = 0.5 * (zeta - tau_sign * std::conj(zeta));
  Complex root = std::sqrt(kc.nu * kc.nu + tau_sign);
  kc.z[0] = kc.nu + root;
  kc.z[1] = kc.nu - root;

  if (!es.closed_form)
    return kick_coefficients_powered(es, params);
  if (std::abs(kc.z[1] - kc.z[0]) < kDegenerateZ)
    throw DegenerateZ("kick-transfer eigenvalues coincide at k = " +
                      std::to_string(es.k));

  Complex dz = kc.z[1] - kc.z[0];
  auto pdiff = [&](int p) {
    return int_power(kc.z[1], p) - int_power(kc.z[0], p);
  };
  Complex dm1 = pdiff(params.m - 1);
  Complex dm = pdiff(params.m);
  Complex dp1 = pdiff(params.m + 1);
  kc.am[0] = (tau_sign * dm1 * kc.a0[0] + l1t * es.A11 * dm * kc.a0[0] +
              l2t * es.A12 * dm * kc.a0[1]) /
             dz;
  kc.am[1] =
      (l1t * es.A21 * dm * kc.a0[0] + dp1 * kc.a0[1] -
       l1t * es.A11 * dm * kc.a0[1]) /
      dz;
  return kc;
}

KickCoefficients kick_coefficients(double k, const WalkParams& params) {
  return kick_coefficients(eigensystem(k, params.theta), params);
}

KickCoefficients kick_coefficients_powered(const EigenSystem& es,
                                           const WalkParams& params) {
  KickCoefficients kc;
  Spinor psi0{params.alpha, params.beta};
  kc.a0[0] = inner(es.v[0], psi0);
  kc.a0[1] = inner(es.v[1], psi0);

  Complex l1t = unit_power(es.lambda[0], params.tau);
  Complex l2t = unit_power(es.lambda[1], params.tau);
  double tau_sign = params.tau % 2 == 0 ? 1.0 : -1.0;
  Complex zeta = l1t * es.A11;
  kc.nu = 0.5 * (zeta - tau_sign * std::conj(zeta));
  Complex root = std::sqrt(kc.nu * kc.nu + tau_sign);
  kc.z[0] = kc.nu + root;
  kc.z[1] = kc.nu - root;

  Mat2 transfer{l1t * es.A11, l2t * es.A12, l1t * es.A21, l2t * es.A22};
  Spinor coeff{kc.a0[0], kc.a0[1]};
  for (int i = 0; i < params.m; ++i) coeff = transfer * coeff;
  kc.am[0] = coeff.up;
  kc.am[1] = coeff.down;
  return kc;
}

Spinor k_amplitude(double k, const WalkParams& params) {
  EigenSystem es = eigensystem(k, params.theta);
  KickCoefficients kc;
  try {
    kc = kick_coefficients(es, params);
    if (std::abs(kc.z[1] - kc.z[0]) < kNearDegenerateZ)
      kc = kick_coefficients_powered(es, params);
  } catch (const DegenerateZ&) {
    kc = kick_coefficients_powered(es, params);
  }
  long long n_tau = static_cast<long long>(params.n) * params.tau;
  Complex g1 = kc.am[0] * unit_power(es.lambda[0], n_tau);
  Complex g2 = kc.am[1] * unit_power(es.lambda[1], n_tau);
  return g1 * es.v[0] + g2 * es.v[1];
}

AmplitudeField inverse_transform(const std::vector<Spinor>& k_samples, long t) {
  long n = static_cast<long>(k_samples.size());
  if (n < 2 * t + 1)
    throw InsufficientSamples("need at least 2t+1 = " +
                              std::to_string(2 * t + 1) + " k-samples, got " +
                              std::to_string(n));
  AmplitudeField field(t, t);
  double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (long x = -t; x <= t; ++x) {
    Spinor acc;
    for (long l = 0; l < n; ++l) {
      double k = -std::numbers::pi + step * static_cast<double>(l);
      acc = acc + std::polar(1.0, k * static_cast<double>(x)) * k_samples[l];
    }
    field.set(x, Complex{1.0 / static_cast<double>(n), 0.0} * acc);
  }
  return field;
}

AmplitudeField reconstruct_field(const WalkParams& params, int n_samples,
                                 int workers) {
  long t = params.analysis_time();
  if (n_samples < 2 * t + 1)
    throw InsufficientSamples("need at least 2t+1 = " +
                              std::to_string(2 * t + 1) + " k-samples, got " +
                              std::to_string(n_samples));
  std::vector<Spinor> samples(static_cast<std::size_t>(n_samples));
  double step = 2.0 * std::numbers::pi / static_cast<double>(n_samples);
  parallel_for(samples.size(), workers, [&](std::size_t l) {
    double k = -std::numbers::pi + step * static_cast<double>(l);
    samples[l] = k_amplitude(k, params);
  });
  return inverse_transform(samples, t);
}

namespace {

// One (weight, velocity-scale, branch) group of the limit moment integrand.
struct MomentGroup {
  double weight;
  double scale;
  int branch;
};

// The per-k weight groups of the tau->infinity moment integral. Written with
// the overlaps in convention-safe positions (A21 where the transfer matrix
// has it) so the direct-solve eigenvector fallback stays correct.
void moment_groups(const EigenSystem& es, const Complex& alpha,
                   const Complex& beta, int m, int n, MomentGroup* out,
                   int* count) {
  Spinor psi0{alpha, beta};
  Complex a10 = inner(es.v[0], psi0);
  Complex a20 = inner(es.v[1], psi0);
  int idx = 0;
  auto push = [&](const Complex& amp, double scale, int branch) {
    out[idx++] = {std::norm(amp), scale, branch};
  };
  if (m == 0) {
    push(a10, 1.0, 0);
    push(a20, 1.0, 1);
  } else if (m == 1) {
    double q = static_cast<double>(n - 1) / static_cast<double>(n + 1);
    push(a10 * es.A11, 1.0, 0);
    push(a20 * es.A22, 1.0, 1);
    push(a20 * es.A12, q, 0);
    push(a10 * es.A21, q, 1);
  } else {
    double q1 = static_cast<double>(n - 2) / static_cast<double>(n + 2);
    double q2 = static_cast<double>(n) / static_cast<double>(n + 2);
    push(a10 * es.A11 * es.A11, 1.0, 0);
    push(a20 * es.A22 * es.A22, 1.0, 1);
    push(a20 * es.A12 * es.A22, q1, 0);
    push(a10 * es.A11 * es.A21, q1, 1);
    push((a10 * es.A21 + a20 * es.A11) * es.A12, q2, 0);
    push((a20 * es.A12 + a10 * es.A22) * es.A21, q2, 1);
  }
  *count = idx;
}

double moment_integrand(double k, double theta, const Complex& alpha,
                        const Complex& beta, int m, int n, int r) {
  EigenSystem es = eigensystem(k, theta);
  MomentGroup groups[6];
  int count = 0;
  moment_groups(es, alpha, beta, m, n, groups, &count);
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    double v = groups[i].scale * es.h[groups[i].branch];
    double p = 1.0;
    for (int j = 0; j < r; ++j) p *= v;
    total += groups[i].weight * p;
  }
  return total;
}

}  // namespace

double limit_moment(const LawCase& law_case, double theta, const Complex& alpha,
                    const Complex& beta, int r, const MomentOptions& opts) {
  if (law_case.m < 0 || law_case.m > 2)
    throw UnsupportedCase("limit moments are implemented for the plain walk "
                          "and m in {1, 2}; no closed form is known for m = " +
                          std::to_string(law_case.m));
  if (!law_case.is_usual() && law_case.n < 1)
    throw UnsupportedCase("n must be >= 1");
  if (r < 0) throw InvalidParams("moment order must be >= 0");
  validate_theta(theta);

  // Periodic smooth integrand: plain trapezoid converges spectrally; double
  // the grid until two successive values agree.
  auto integral_at = [&](long points) {
    std::vector<double> vals(static_cast<std::size_t>(points));
    double dk = 2.0 * std::numbers::pi / static_cast<double>(points);
    parallel_for(vals.size(), opts.workers, [&](std::size_t l) {
      double k = -std::numbers::pi + dk * static_cast<double>(l);
      vals[l] = moment_integrand(k, theta, alpha, beta, law_case.m, law_case.n, r);
    });
    double sum = 0.0;
    for (double v : vals) sum += v;
    return sum / static_cast<double>(points);
  };

  long points = opts.initial_points;
  double value = integral_at(points);
  for (int i = 0; i < opts.max_doublings; ++i) {
    points *= 2;
    double refined = integral_at(points);
    double delta = std::abs(refined - value);
    value = refined;
    if (delta < opts.tol) break;
  }
  return value;
}

}  // namespace qwalk
