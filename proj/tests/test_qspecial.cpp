#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "abf/qspecial.hpp"

using namespace abf;
using namespace abf::qspecial;

namespace {

// plain partial products, no shared code with the library
cplx partial_poch(cplx z, double p, int terms) {
  cplx r = 1.0;
  for (int l = 0; l < terms; ++l) r *= 1.0 - std::pow(p, l) * z;
  return r;
}

cplx partial_poch2(cplx z, double p1, double p2, int terms) {
  cplx r = 1.0;
  for (int i = 0; i < terms; ++i)
    for (int j = 0; j < terms; ++j) r *= 1.0 - std::pow(p1, i) * std::pow(p2, j) * z;
  return r;
}

cplx partial_theta(cplx z, double p, int terms) {
  return partial_poch(z, p, terms) * partial_poch(p / z, p, terms) * partial_poch(p, p, terms);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("qpoch values") {
  CHECK(qpoch(0.0, {0.5}) == cplx(1.0));
  CHECK(std::abs(qpoch(1.0, {0.37})) == 0.0);
  CHECK(std::abs(qpoch(0.3, {0.5}) - partial_poch(0.3, 0.5, 200)) < 1e-12);
  CHECK(std::abs(qpoch(0.4, {}) - cplx(0.6)) < 1e-15);
  CHECK(rel(qpoch(cplx(0.2, 0.1), {0.3, 0.45}), partial_poch2(cplx(0.2, 0.1), 0.3, 0.45, 80)) <
        1e-12);
}

TEST_CASE("qpoch is stable under doubling max_terms") {
  Truncation a{1e-14, 4096}, b{1e-14, 8192};
  for (double p : {0.1, 0.5, 0.9, 0.99}) {
    cplx z(0.3, 0.2);
    CHECK(std::abs(qpoch(z, {p}, a) - qpoch(z, {p}, b)) < 10 * a.eps);
  }
}

TEST_CASE("theta_p") {
  CHECK(std::abs(theta_p(1.0, 0.4)) < 1e-15);
  const double p = 0.4;
  const cplx z(0.7, 0.1);
  CHECK(rel(theta_p(p * z, p), -theta_p(z, p) / z) < 1e-12);
  CHECK(rel(theta_p(z, p), partial_theta(z, p, 200)) < 1e-12);
  CHECK(rel(theta_p(1.0 / 0.6, 0.3), -theta_p(0.6, 0.3) / 0.6) < 1e-12);
  CHECK_THROWS_AS(theta_p(0.0, 0.3), domain_error);
}

TEST_CASE("brackets are odd and quasi-periodic") {
  ModelParams m3(3, 0.5), m4(4, 0.6);
  CHECK(std::abs(bracket(0.0, m3)) == 0.0);
  CHECK(std::abs(bracket_star(0.0, m3)) == 0.0);
  CHECK(rel(bracket(-0.37, m3), -bracket(0.37, m3)) < 1e-12);
  CHECK(rel(bracket(0.2 + 5, m3), -bracket(0.2, m3)) < 1e-12);
  CHECK(rel(bracket_star(-0.41, m4), -bracket_star(0.41, m4)) < 1e-12);
  CHECK(rel(bracket_star(0.15 + 3, m3), -bracket_star(0.15, m3)) < 1e-12);

  // 50-point complex grid
  for (int k : {2, 3, 5})
    for (double x : {0.3, 0.7}) {
      ModelParams mp(k, x);
      for (int i = 0; i < 50; ++i) {
        cplx u(-1.5 + 0.061 * i, 0.3 * std::sin(1.7 * i));
        CHECK(std::abs(bracket(-u, mp) + bracket(u, mp)) < 1e-10 * (1 + std::abs(bracket(u, mp))));
        CHECK(std::abs(bracket(u + double(k + 2), mp) + bracket(u, mp)) <
              1e-10 * (1 + std::abs(bracket(u, mp))));
        CHECK(std::abs(bracket_star(-u, mp) + bracket_star(u, mp)) <
              1e-10 * (1 + std::abs(bracket_star(u, mp))));
        CHECK(std::abs(bracket_star(u + double(k), mp) + bracket_star(u, mp)) <
              1e-10 * (1 + std::abs(bracket_star(u, mp))));
      }
    }
}

TEST_CASE("bracket is positive on (0,1)") {
  for (int k : {2, 3, 6}) {
    ModelParams mp(k, 0.6);
    for (double u = 0.05; u < 1.0; u += 0.1) CHECK(bracket(u, mp).real() > 0);
  }
}

TEST_CASE("theta1 sine series") {
  CHECK(std::abs(theta1(0.0, cplx(0, 2))) == 0.0);
  CHECK(rel(theta1(kPi - 0.3, cplx(0, 2)), theta1(0.3, cplx(0, 2))) < 1e-13);
  CHECK_THROWS_AS(theta1(0.3, cplx(0.1, -1.0)), domain_error);
}

TEST_CASE("conjugate-modulus form of the brackets") {
  for (double x : {0.3, 0.5, 0.7, 0.9})
    for (int k : {3, 4}) {
      ModelParams mp(k, x);
      const cplx tau = mp.tau();
      for (double u : {0.5, -0.3, 1.2}) {
        const double r = k + 2;
        cplx direct = bracket(u, mp);
        cplx conj = std::sqrt(kI * double(k) / (tau * r)) * std::exp(-kI * kPi * tau * r / (4.0 * k)) *
                    theta1(kPi * u / r, -double(k) / (tau * r));
        CHECK(std::abs(direct - conj) < 1e-10 * std::max(1.0, std::abs(direct)));
        cplx ds = bracket_star(u, mp);
        cplx cs = std::sqrt(kI / tau) * std::exp(-kI * kPi * tau / 4.0) *
                  theta1(kPi * u / double(k), -1.0 / tau);
        CHECK(std::abs(ds - cs) < 1e-10 * std::max(1.0, std::abs(ds)));
      }
    }
}

TEST_CASE("dedekind eta") {
  ModelParams mp(3, 0.5);
  const double q = std::pow(0.5, 6);
  cplx def = std::pow(q, 1.0 / 24) * partial_poch(q, q, 200);
  CHECK(rel(dedekind_eta(mp.tau()), def) < 1e-12);
  CHECK(rel(eta(mp), def) < 1e-12);

  cplx e2 = dedekind_eta(cplx(0, 2));
  CHECK(e2.real() > 0);
  CHECK(std::abs(e2.imag()) < 1e-15);
  const double q2 = std::exp(-4 * kPi);
  CHECK(rel(e2, std::pow(q2, 1.0 / 24) * partial_poch(q2, q2, 50)) < 1e-12);

  const cplx t(0, 1.5);
  CHECK(rel(dedekind_eta(-1.0 / t), std::sqrt(-kI * t) * dedekind_eta(t)) < 1e-10);
  CHECK_THROWS_AS(dedekind_eta(cplx(0.2, 0.0)), domain_error);
}

TEST_CASE("f_pair") {
  ModelParams mp(3, 0.5);
  CHECK(rel(f_pair(0.8, mp), f_pair(-0.8, mp)) < 1e-15);
  cplx f0 = f_pair(0.0, mp);
  CHECK(f0.real() > 0);
  CHECK(std::abs(f0.imag()) == 0.0);
  const double x = 0.5, b = std::pow(x, 6);
  cplx oracle = partial_poch2(std::pow(x, 8), b, b, 120) * partial_poch2(std::pow(x, 8), b, b, 120) /
                (partial_poch2(std::pow(x, 4), b, b, 120) * partial_poch2(std::pow(x, 4), b, b, 120));
  CHECK(rel(f0, oracle) < 1e-12);
  // numerator factor (1 - x^{2(k+1-v)}) vanishes at v = k+1
  CHECK(std::abs(f_pair(4.0, mp)) < 1e-14);
  // denominator factor (1 - x^{2(k-1-v)}) vanishes at v = k-1
  CHECK_THROWS_AS(f_pair(2.0, mp), pole_error);
  CHECK_THROWS_AS(f_pair(-2.0, mp), pole_error);
}

TEST_CASE("constants") {
  ModelParams m3(3, 0.5);
  auto c = constants(m3);
  CHECK(c.g_star < 0);
  CHECK(std::abs(constants(ModelParams(4, 0.5)).C1 - 1.0 / std::sqrt(2 * std::sin(kPi / 4))) <
        1e-15);
  CHECK(std::abs(constants(ModelParams(4, 0.5)).C1 - 0.8408964152537145) < 1e-12);
  const double x = 0.5, q = std::pow(x, 6), r = std::pow(x, 10);
  auto X = [&](double w) { return std::pow(x, w); };
  cplx C = partial_poch(q, q, 100) * partial_poch2(X(14), q, q, 100) / partial_poch2(X(4), q, q, 100);
  CHECK(std::abs(c.C - C.real()) < 1e-12);
  cplx g = (x - 1 / x) * std::pow(x, -0.2) * partial_poch2(X(8), q, r, 100) *
           partial_poch2(X(14), q, r, 100) / (partial_poch2(X(6), q, r, 100) * partial_poch2(X(16), q, r, 100)) *
           partial_poch(X(8), r, 100) * partial_poch(X(8), r, 100) * partial_poch(r, r, 100);
  CHECK(std::abs(c.g - g.real()) < 1e-12);
}
