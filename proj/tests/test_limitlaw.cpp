#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwalk/limitlaw.hpp"
#include "qwalk/spectral.hpp"
#include "test_util.hpp"

using namespace qwalk;
constexpr double pi = std::numbers::pi;
const double inv_sqrt2 = std::sqrt(0.5);
const Complex kSymA{inv_sqrt2, 0.0};
const Complex kSymB{0.0, inv_sqrt2};
const Complex kUpA{1.0, 0.0};
const Complex kUpB{0.0, 0.0};

namespace {

const std::vector<LawCase> kAllCases = {LawCase::usual(), {1, 1}, {1, 2},
                                        {2, 1},           {2, 2}, {2, 3}};

// Trapezoid of f over [-pi, pi), the independent k-space oracle for the atom
// weights.
template <class F>
double k_average(F&& f, int n = 8192) {
  double sum = 0.0;
  for (int l = 0; l < n; ++l)
    sum += f(-pi + 2.0 * pi * static_cast<double>(l) / n);
  return sum / n;
}

}  // namespace

TEST_CASE("base density values at theta=pi/4") {
  double c = inv_sqrt2;
  CHECK(konno_density(0.0, c) == doctest::Approx(1.0 / pi).epsilon(1e-12));
  CHECK(konno_density(0.5, c) == doctest::Approx(0.600211).epsilon(1e-6));
  CHECK(konno_density(c, c) == 0.0);
  CHECK(konno_density(-c, c) == 0.0);
  CHECK(konno_density(0.9, c) == 0.0);
}

TEST_CASE("atom weights match their closed forms") {
  CHECK(delta_weight(1, 1, pi / 4) ==
        doctest::Approx(1.0 / (2.0 + std::sqrt(2.0))).epsilon(1e-12));
  CHECK(delta_weight(1, 1, pi / 4) ==
        doctest::Approx(0.2928932188134524).epsilon(1e-12));
  CHECK(delta_weight(2, 2, pi / 4) ==
        doctest::Approx(std::sqrt(2.0) / 8.0).epsilon(1e-12));
  CHECK(delta_weight(2, 3, pi / 4) == 0.0);
  CHECK(delta_weight(1, 2, pi / 3) == 0.0);
  CHECK(delta_weight(2, 1, pi / 6) == 0.0);
  CHECK_THROWS_AS(delta_weight(3, 1, pi / 4), UnsupportedCase);
}

TEST_CASE("atom weights re-derived from the k-space integrals") {
  // (1,1): integral of A12^2; (2,2): integral of |A11 A12|^2 over k / 2pi.
  for (double theta : {pi / 4, pi / 3, pi / 6}) {
    double d1 = k_average([&](double k) {
      EigenSystem es = eigensystem(k, theta);
      return std::norm(es.A12);
    });
    CHECK(delta_weight(1, 1, theta) == doctest::Approx(d1).epsilon(1e-10));
    double d2 = k_average([&](double k) {
      EigenSystem es = eigensystem(k, theta);
      return std::norm(es.A11) * std::norm(es.A12);
    });
    CHECK(delta_weight(2, 2, theta) == doctest::Approx(d2).epsilon(1e-10));
  }
}

TEST_CASE("weight polynomials at pinned points") {
  LawParams sym{pi / 4, kSymA, kSymB, 2};
  LawParams up{pi / 4, kUpA, kUpB, 2};
  CHECK(weight(WeightId::M1, 0.0, sym) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(weight(WeightId::M1, 0.0, up) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(weight(WeightId::M2, 0.0, up) == doctest::Approx(1.0).epsilon(1e-15));
  // Symmetric state kills the odd terms; s^2/c^2 = 1 at pi/4.
  CHECK(weight(WeightId::M2, 0.5, sym) ==
        doctest::Approx(0.5625).epsilon(1e-12));
  LawParams symn3{pi / 4, kSymA, kSymB, 3};
  CHECK(weight(WeightId::B3, 0.5, symn3) ==
        doctest::Approx(0.9375).epsilon(1e-12));
}

TEST_CASE("law assembly produces the documented components and scales") {
  LimitLaw l23 = limit_law(LawCase{2, 3}, pi / 4, kSymA, kSymB);
  REQUIRE(l23.components.size() == 3);
  CHECK(l23.components[0].scale == 1.0);
  CHECK(l23.components[1].scale == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(l23.components[2].scale == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(l23.delta_weight == 0.0);

  LimitLaw l11 = limit_law(LawCase{1, 1}, pi / 4, kSymA, kSymB);
  REQUIRE(l11.components.size() == 1);
  CHECK(l11.delta_weight == doctest::Approx(0.2928932188134524));

  CHECK(limit_law(LawCase::usual(), pi / 4, kSymA, kSymB).components.size() == 1);
  CHECK(limit_law(LawCase{1, 2}, pi / 4, kSymA, kSymB).components.size() == 2);
  CHECK(limit_law(LawCase{2, 1}, pi / 4, kSymA, kSymB).components.size() == 2);
  CHECK(limit_law(LawCase{2, 2}, pi / 4, kSymA, kSymB).components.size() == 2);

  CHECK_THROWS_AS(limit_law(LawCase{3, 1}, pi / 4, kSymA, kSymB),
                  UnsupportedCase);
}

TEST_CASE("every assembled law is normalized") {
  for (const LawCase& lc : kAllCases) {
    for (double theta : {pi / 4, pi / 3, pi / 6}) {
      for (auto [a, b] : {std::pair{kSymA, kSymB}, std::pair{kUpA, kUpB}}) {
        LimitLaw law = limit_law(lc, theta, a, b);
        CHECK(law_moment(law, 0) == doctest::Approx(1.0).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("component densities stay non-negative on their supports") {
  for (const LawCase& lc : kAllCases) {
    for (double theta : {pi / 4, pi / 3}) {
      for (auto [a, b] : {std::pair{kSymA, kSymB}, std::pair{kUpA, kUpB}}) {
        LimitLaw law = limit_law(lc, theta, a, b);
        for (std::size_t i = 0; i < law.components.size(); ++i) {
          double edge = law.support_edge(i);
          for (int j = 1; j < 400; ++j) {
            double x = -edge + 2.0 * edge * j / 400.0;
            CHECK(law.component_density(i, x) >= -1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("component support is exactly the scaled band") {
  LimitLaw law = limit_law(LawCase{2, 3}, pi / 4, kSymA, kSymB);
  for (std::size_t i = 0; i < law.components.size(); ++i) {
    double edge = law.support_edge(i);
    CHECK(edge == doctest::Approx(inv_sqrt2 / law.components[i].scale));
    CHECK(law.component_density(i, edge + 1e-12) == 0.0);
    CHECK(law.component_density(i, -edge - 1e-12) == 0.0);
    CHECK(law.component_density(i, edge) == 0.0);  // open support
  }
}

TEST_CASE("atom weights ignore the initial spinor bitwise") {
  double d1 = delta_weight(1, 1, pi / 4);
  double d2 = delta_weight(2, 2, pi / 4);
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = testutil::random_spinor();
    CHECK(limit_law(LawCase{1, 1}, pi / 4, a, b).delta_weight == d1);
    CHECK(limit_law(LawCase{2, 2}, pi / 4, a, b).delta_weight == d2);
  }
}

TEST_CASE("cdf bounds and atom handling") {
  for (const LawCase& lc : kAllCases) {
    LimitLaw law = limit_law(lc, pi / 4, kSymA, kSymB);
    CHECK(law_cdf(law, -1.0) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(std::abs(law_cdf(law, 1.0) - 1.0) <= 1e-6);
    // Even density under the symmetric state: F(0-) = (1 - atom)/2.
    CHECK(law_cdf_left(law, 0.0) ==
          doctest::Approx(0.5 * (1.0 - law.delta_weight)).epsilon(1e-6));
    CHECK(law_cdf(law, 0.0) - law_cdf_left(law, 0.0) ==
          doctest::Approx(law.delta_weight).epsilon(1e-9));
    // Monotone on a coarse grid.
    double prev = -1.0;
    for (int j = 0; j <= 40; ++j) {
      double f = law_cdf(law, -1.0 + 2.0 * j / 40.0);
      CHECK(f >= prev - 1e-9);
      prev = f;
    }
  }
}

TEST_CASE("plain-walk law has the asymmetric mean for [1,0]") {
  LimitLaw law = limit_law(LawCase::usual(), pi / 4, kUpA, kUpB);
  CHECK(law_moment(law, 1) ==
        doctest::Approx(-0.2928932188134524).epsilon(1e-6));
}

TEST_CASE("law moments match the spectral route") {
  for (const LawCase& lc : kAllCases) {
    for (auto [a, b] : {std::pair{kSymA, kSymB}, std::pair{kUpA, kUpB}}) {
      LimitLaw law = limit_law(lc, pi / 4, a, b);
      for (int r = 0; r <= 3; ++r) {
        double density_route = law_moment(law, r);
        double spectral_route = limit_moment(lc, pi / 4, a, b, r);
        CHECK(std::abs(density_route - spectral_route) <= 1e-6);
      }
    }
  }
}

TEST_CASE("band edge probe: cancellation at theta=pi/3 for [1,0]") {
  const std::vector<double> offsets{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  for (int n : {2, 3}) {
    LimitLaw law = limit_law(LawCase{2, n}, pi / 3, kUpA, kUpB);
    std::size_t b2 = 1;  // components are {M2, B2[, B3]}
    double prev = 1e300;
    double last = 0.0;
    for (double off : offsets) {
      double v = band_edge_value(law, b2, off);
      CHECK(v < prev);
      prev = v;
      last = v;
    }
    CHECK(last <= 1e-2);
  }
}

TEST_CASE("band edge probe: divergence at theta=pi/4 for [1,0]") {
  LimitLaw law = limit_law(LawCase{2, 2}, pi / 4, kUpA, kUpB);
  const std::vector<double> offsets{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double prev = 0.0;
  double last = 0.0;
  for (double off : offsets) {
    double v = band_edge_value(law, 1, off);
    CHECK(v > prev);
    prev = v;
    last = v;
  }
  CHECK(last >= 10.0);
}

TEST_CASE("band edge probe at half the support width hits the midpoint") {
  LimitLaw law = limit_law(LawCase{2, 2}, pi / 3, kUpA, kUpB);
  double edge = law.support_edge(1);
  CHECK(band_edge_value(law, 1, edge) ==
        doctest::Approx(law.component_density(1, 0.0)).epsilon(1e-15));
}
