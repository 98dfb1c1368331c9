#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "abf/lhp.hpp"

using namespace abf;
using namespace abf::lhp;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
}  // namespace

TEST_CASE("string functions") {
  ModelParams mp(3, 0.5);
  CHECK(string_fn(1, 0, mp) == 0.0);
  CHECK(string_fn(2, 6, mp) == doctest::Approx(string_fn(2, 0, mp)).epsilon(1e-13));
  CHECK(string_fn(2, -2, mp) == doctest::Approx(string_fn(2, 2, mp)).epsilon(1e-13));

  // leading term eta^{-3} (x^6)^{1/20}; next corrections are O(x^6)
  double e3 = std::pow(qspecial::dedekind_eta(mp.tau()).real(), 3);
  double ratio = string_fn(0, 0, mp) * e3 / std::pow(std::pow(0.5, 6), 1.0 / 20);
  CHECK(std::abs(ratio - 1.0) < 0.1);
  CHECK(ratio != 1.0);
}

TEST_CASE("one-point probabilities") {
  for (int k : {3, 4, 5})
    for (double x : {0.3, 0.5, 0.7}) {
      ModelParams mp(k, x);
      for (int m = -k; m <= k; ++m) {
        double s = 0;
        for (int a = 1; a <= k + 1; ++a) {
          double p = one_point_lhp(a, m, mp);
          CHECK(p >= 0.0);
          if ((a - m) % 2 == 0) CHECK(p == 0.0);
          CHECK(p == doctest::Approx(one_point_lhp(a, -m, mp)).epsilon(1e-12));
          s += p;
        }
        CHECK(std::abs(s - 1.0) < 1e-8);
      }
    }
  CHECK(one_point_lhp(2, 0, ModelParams(3, 0.5)) == 0.0);
}

TEST_CASE("partition function") {
  ModelParams mp(3, 0.5);
  auto z = partition_fn(mp);
  const double q = std::pow(0.5, 6);
  double prod = 1;
  for (int l = 1; l < 200; ++l) prod *= 1 - std::pow(q, l);
  CHECK(std::abs(z.closed_form - std::pow(0.5, -0.8) * prod) < 1e-12);
  CHECK(std::abs(z.difference()) < 1e-10);
}

TEST_CASE("two-point probabilities") {
  for (int k : {3, 4}) {
    ModelParams mp(k, 0.5);
    for (int m = -k; m <= k; ++m) {
      CHECK(std::abs(two_point_lhp(2, 1, m, mp) - one_point_lhp(1, m, mp)) < 1e-12);
      for (int a = 1; a <= k + 1; ++a) {
        double s = (a > 1 ? two_point_lhp(a - 1, a, m, mp) : 0.0) + two_point_lhp(a + 1, a, m, mp);
        CHECK(std::abs(s - one_point_lhp(a, m, mp)) < 1e-10);
      }
      CHECK(std::abs(two_point_lhp(k + 2, k + 1, m, mp)) < 1e-12);
    }
    CHECK_THROWS_AS(two_point_lhp(3, 1, 0, mp), domain_error);
  }
}

TEST_CASE("Gamma at the origin") {
  ModelParams mp(3, 0.5);
  const cplx t = mp.tau();
  cplx g = gamma_sector({0, 0, 0.0, 0.0, t}, {0, 2}, mp);
  CHECK(rel(g, qspecial::dedekind_eta(t) * string_fn(2, 0, mp)) < 1e-10);
  CHECK(gamma_sector({0, 0, 0.1, 0.2, t}, {1, 2}, mp) == cplx(0.0));
  CHECK_THROWS_AS(gamma_sector({0, 0, 0.0, 0.0, cplx(0.1, -0.5)}, {0, 2}, mp), domain_error);
}

TEST_CASE("Gamma symmetries") {
  const int k = 4;
  ModelParams mp(k, 0.6);
  const cplx t = mp.tau();
  const cplx y1(0.06, -0.03), y2(0.04, 0.02);
  for (int l = 0; l <= k; ++l)
    for (int m = -k; m <= k; ++m) {
      if ((l - m) % 2) continue;
      auto c = centred_apex(k, m + 2 * k, l, y1, y2, t);
      double h = c.H + 0.5, hp = c.Hp + 0.3;
      cplx a = gamma_sector({h, hp, y1, y2, t}, {m + 2 * k, l}, mp);
      CHECK(rel(a, gamma_sector({h + 1, hp - 1, y1, y2, t}, {m, l}, mp)) < 1e-10);

      auto c2 = centred_apex(k, m + k, k - l, -y1, y2, t);
      for (double dh : {0.0, 0.5})
        for (double dhp : {0.0, 0.3}) {
          h = c2.H + dh, hp = c2.Hp + dhp;
          double e = dh == 0.0 ? -1.0 : 0.0;
          double ep = dhp == 0.0 ? 0.0 : 1.0;
          cplx b = gamma_sector({h, hp, -y1, y2, t}, {m + k, k - l}, mp);
          CHECK(rel(b, gamma_sector({-hp + ep, -h + e, y1, y2, t}, {m, l}, mp)) < 1e-10);
        }
    }
}

TEST_CASE("Gamma truncation is converged") {
  ModelParams mp(3, 0.7);
  const cplx t = mp.tau();
  Truncation base = default_truncation(), wide{base.eps * 1e-2, base.max_terms * 2};
  for (int m = -3; m <= 3; ++m) {
    SectorLabel s{m, m & 1 ? 1 : 2};
    GammaArgs g{0, 0, cplx(0.05, 0.01), cplx(-0.03, 0.02), t};
    cplx a = gamma_sector(g, s, mp, base), b = gamma_sector(g, s, mp, wide);
    CHECK(std::abs(a - b) < 10 * base.eps * std::max(1.0, std::abs(a)));
  }
}
