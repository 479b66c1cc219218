#pragma once

#include <cmath>

namespace qwalk {

// Adaptive Simpson with absolute tolerance. Intended for smooth bounded
// integrands (the limit-law components after the sin substitution). Starts
// from a fixed 16-panel composite: trigonometric integrands sampled only at
// the symmetry points of [a, b] can fool the single-interval error estimate
// (the refined estimate coincides with the coarse one while both are wrong).
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int max_depth = 40) {
  struct Impl {
    const F& f;
    int max_depth;
    double recurse(double a, double m, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) const {
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = f(lm), frm = f(rm);
      double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      double delta = left + right - whole;
      if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
      return recurse(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
             recurse(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
  };
  constexpr int kPanels = 16;
  Impl impl{f, max_depth};
  double h = (b - a) / kPanels;
  double total = 0.0;
  double fa = f(a);
  for (int i = 0; i < kPanels; ++i) {
    double pa = a + i * h;
    double pb = i + 1 == kPanels ? b : pa + h;
    double pm = 0.5 * (pa + pb);
    double fm = f(pm), fb = f(pb);
    double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    total += impl.recurse(pa, pm, pb, fa, fm, fb, whole, abs_tol / kPanels, 0);
    fa = fb;
  }
  return total;
}

}  // namespace qwalk
