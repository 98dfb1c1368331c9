#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "abf/continuum_ff.hpp"

using namespace abf;
using namespace abf::continuum_ff;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

std::vector<cplx> random_points(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(0.3, 2.0), A(-0.4, 0.4);
  std::vector<cplx> r;
  for (int i = 0; i < n; ++i) r.push_back(std::polar(U(rng), A(rng)));
  return r;
}

}  // namespace

TEST_CASE("masses") {
  CHECK(mass(1, 5, 2.0) == doctest::Approx(2.0));
  CHECK(mass(4, 5, 2.0) == doctest::Approx(2.0));
  CHECK(mass(2, 4) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(mass(0, 4), domain_error);
  CHECK_THROWS_AS(mass(4, 4), domain_error);
}

TEST_CASE("S-matrix") {
  CHECK(std::abs(s_matrix(1, 1, 0.0, 3) + 1.0) < 1e-15);
  for (int k = 3; k <= 6; ++k)
    for (int a = 1; a < k; ++a)
      for (int b = 1; b < k; ++b)
        for (double be = -3; be <= 3; be += 0.7) {
          cplx s = s_matrix(a, b, be, k);
          CHECK(std::abs(std::abs(s) - 1.0) < 1e-12);
          CHECK(std::abs(s * s_matrix(a, b, -be, k) - 1.0) < 1e-10);
          CHECK(std::abs(s - s_matrix_product(a, b, be, k)) < 1e-10);
        }
  for (double be = -2; be <= 2; be += 0.5)
    CHECK(std::abs(s_matrix(1, 2, be, 3) - s_matrix(1, 1, cplx(0, kPi) - be, 3)) < 1e-10);
  CHECK_THROWS_AS(s_matrix(1, 1, cplx(0, 2 * kPi / 3), 3), pole_error);
}

TEST_CASE("minimal form factors") {
  for (int k : {3, 4, 5}) {
    CHECK(fmin_1bar1(cplx(0, kPi), k) == cplx(1.0));
    CHECK(std::abs(fmin_11(0.0, k)) == 0.0);
    for (double be = -3; be <= 3; be += 0.6) {
      if (std::abs(be) < 1e-9) continue;
      CHECK(rel(fmin_11(be, k) / fmin_11(-be, k), s_matrix(1, 1, be, k)) < 1e-9);
      CHECK(rel(fmin_1bar1(be, k) / fmin_1bar1(-be, k), s_matrix(1, k - 1, be, k)) < 1e-9);
      CHECK(rel(fmin_11(cplx(be, 2 * kPi), k), fmin_11(-be, k)) < 1e-9);
    }
  }
}

TEST_CASE("elementary symmetric functions") {
  CHECK(elementary_symmetric(std::vector<cplx>{}) == std::vector<cplx>{1.0});
  CHECK(elementary_symmetric(std::vector<cplx>{cplx(2, 1)}) == std::vector<cplx>{1.0, cplx(2, 1)});
  std::mt19937_64 rng(3);
  auto xs = random_points(rng, 4);
  auto s = elementary_symmetric(xs);
  for (cplx t : {cplx(0.3, 0.1), cplx(-1.2, 0.4), cplx(2.0, 0)}) {
    cplx direct = 1.0, poly = 0.0;
    for (auto x : xs) direct *= t + x;
    for (int r = 0; r <= 4; ++r) poly += std::pow(t, 4 - r) * s[r];
    CHECK(std::abs(direct - poly) < 1e-12 * std::abs(direct));
  }
  auto e = elementary_symmetric(std::vector<rational>{rational(1, 2), rational(3)});
  CHECK(e == std::vector<rational>{1, rational(7, 2), rational(3, 2)});
}

TEST_CASE("braces") {
  CHECK(std::abs(brace(0, 3)) == 0.0);
  CHECK(std::abs(brace(3, 3)) < 1e-15);
  CHECK(std::abs(brace(-2, 5) + brace(2, 5)) < 1e-15);
  CHECK(std::abs(brace(1, 4) - cplx(0, 2 * std::sin(kPi / 4))) < 1e-15);
}

TEST_CASE("partitions") {
  auto p = partitions_in_box(2, 2);
  REQUIRE(p.size() == 6);
  std::vector<std::vector<int>> expect{{2, 2}, {2, 1}, {2, 0}, {1, 1}, {1, 0}, {0, 0}};
  for (std::size_t i = 0; i < 6; ++i) CHECK(p[i].parts == expect[i]);
  CHECK(partitions_in_box(3, 2).size() == 10);

  Partition l{{3, 1, 0}};
  CHECK(l.conjugate(3) == std::vector<int>{2, 1, 1});
  Partition lc{l.conjugate(3)};
  CHECK(lc.conjugate(3) == std::vector<int>{3, 1, 0});
  // tilde conjugate of a partition in Lambda(3,3) lies in Lambda(3,3)
  auto t = l.tilde_conjugate(3, 3);
  CHECK(t.parts.size() == 3);
  for (int v : t.parts) CHECK((v >= 0 && v <= 3));
}

TEST_CASE("determinant entries") {
  const int k = 5, A = 3;
  std::vector<cplx> vals{cplx(0.7, 0.1), cplx(-0.2, 0.4)};
  CHECK(std::abs(schur_like(Partition{}, vals, A, k, 2) - 1.0) < 1e-14);
  CHECK(std::abs(schur_like(Partition{{0, 0}}, vals, A, k, 2) - 1.0) < 1e-14);

  std::vector<cplx> one{cplx(0.6, -0.3)};
  cplx box = schur_like(Partition{{1}}, one, A, k);
  CHECK(rel(box, brace(A - 2, k) / brace(A - 1, k) * one[0]) < 1e-14);

  for (auto& lam : partitions_in_box(2, 2)) {
    cplx a = schur_like(lam, vals, 5, k, 2), b = schur_like(lam, vals, 5, k, 4);
    CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("R polynomials: printed examples") {
  std::mt19937_64 rng(5);
  for (int k : {3, 4, 5}) {
    auto x = random_points(rng, 1), y = random_points(rng, 1);
    for (int alpha = 1; alpha <= k; ++alpha) {
      cplx expect = brace(alpha, k) * brace(alpha - 1, k) * (x[0] + y[0]);
      CHECK(std::abs(r_poly_direct(alpha, x, y, k) - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
      CHECK(std::abs(r_poly_det(alpha, x, y, k) - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
    }
    auto x2 = random_points(rng, 2), y2 = random_points(rng, 2);
    auto s = elementary_symmetric(x2), t = elementary_symmetric(y2);
    cplx b2 = brace(2, k), b1 = brace(1, k);
    cplx expect = b2 * b2 * b1 * b1 * (s[1] + t[1]) * (s[2] * t[1] + s[1] * t[2]);
    CHECK(rel(r_poly_direct(2, x2, y2, k), expect) < 1e-10);
  }
}

TEST_CASE("R_1 vanishes") {
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 4; ++n) {
    auto x = random_points(rng, n), y = random_points(rng, n);
    cplx r1 = r_poly_direct(1, x, y, 4), r2 = r_poly_direct(2, x, y, 4);
    CHECK(std::abs(r1) < 1e-10 * std::abs(r2));
  }
  std::vector<rational> xq{rational(1, 2), rational(3, 4), rational(2)}, yq{rational(5, 3), 1, rational(1, 7)};
  CHECK(r_poly_direct_exact(1, xq, yq, 3).is_zero());
  CHECK(r_poly_det_exact(1, xq, yq, 3).is_zero());
}

TEST_CASE("determinant form agrees with the sign sum") {
  std::mt19937_64 rng(21);
  for (int k : {3, 4, 5})
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n) {
        auto x = random_points(rng, m), y = random_points(rng, n);
        double scale = 0;
        for (int alpha = 2; alpha <= k; ++alpha)
          scale = std::max(scale, std::abs(r_poly_direct(alpha, x, y, k)));
        for (int alpha = 2; alpha <= k; ++alpha)
          CHECK(std::abs(r_poly_det(alpha, x, y, k) - r_poly_direct(alpha, x, y, k)) < 1e-10 * scale);
      }
  std::vector<rational> x{rational(1, 3), 2}, y{rational(3, 2), rational(5, 4), 3};
  for (int alpha = 2; alpha <= 4; ++alpha)
    CHECK(r_poly_det_exact(alpha, x, y, 4) == r_poly_direct_exact(alpha, x, y, 4));
}

TEST_CASE("stress-tensor factor") {
  // n >= 2: R_2 vanishes where either factor of (s1+t1)(s_{n-1} t_n + s_n t_{n-1}) does
  for (int n : {2, 3}) {
    std::vector<rational> x, y;
    for (int i = 0; i < n; ++i) x.push_back(rational(i + 2, 3)), y.push_back(rational(2 * i + 1, 5));
    rational s = 0, inv = 0;
    for (auto& v : x) s += v, inv += 1 / v;
    for (int i = 0; i + 1 < n; ++i) s += y[i], inv += 1 / y[i];
    auto y1 = y, y2 = y;
    y1.back() = -s;
    y2.back() = -1 / inv;
    CHECK(r_poly_direct_exact(2, x, y1, 4).is_zero());
    CHECK(r_poly_direct_exact(2, x, y2, 4).is_zero());
    CHECK_FALSE(r_poly_direct_exact(2, x, y, 4).is_zero());
  }
}

TEST_CASE("n = 1: R_2 is affine in x, so the squared factor cannot divide it") {
  const int k = 4;
  std::vector<rational> y{rational(3, 7)};
  auto R = [&](rational t) { return r_poly_direct_exact(2, {t}, y, k); };
  CHECK((R(2) - R(1) - R(1) + R(0)).is_zero());
  CHECK_FALSE(R(1).is_zero());
  CHECK(R(-rational(3, 7)).is_zero());
}

TEST_CASE("Zamolodchikov-Faddeev contractions") {
  const int k = 4;
  const cplx be(0.6, 0.2);
  const double s = 2 * std::sin(kPi / k);
  for (int mu : {-1, 1}) {
    cplx expect = fmin_11(be, k) /
                  (std::sinh(be / 2.0 + kI * kPi / double(k)) * std::sinh(be / 2.0 - kI * kPi / double(k)) * s);
    CHECK(rel(zf_contraction(Species::one, mu, Species::one, mu, be, k), expect) < 1e-12);
    CHECK(rel(zf_contraction(Species::one, mu, Species::bar, -mu, be, k), fmin_1bar1(be, k) / s) < 1e-12);
    for (int nu : {-1, 1}) {
      CHECK(zf_contraction(Species::one, mu, Species::one, nu, be, k) ==
            zf_contraction(Species::bar, -mu, Species::bar, -nu, be, k));
      CHECK(zf_contraction(Species::one, mu, Species::bar, nu, be, k) ==
            zf_contraction(Species::bar, -mu, Species::one, -nu, be, k));
    }
  }
}

TEST_CASE("two-point form factor") {
  for (int k : {3, 4, 5})
    for (int a = 1; a <= k + 1; a += 2) {
      std::vector<cplx> b{0.9}, bp{-0.2};
      cplx expect = -2.0 * std::sin(kPi * (a - 1) / (2.0 * k)) * std::sin(kPi * (a + 1) / (2.0 * k)) /
                    std::sin(kPi / k) * fmin_1bar1(b[0] - bp[0], k);
      cplx w = continuum_ff_wick(a, b, bp, k), c = continuum_ff_closed(a, b, bp, k);
      CHECK(std::abs(w - expect) < 1e-10 * std::max(1e-3, std::abs(expect)));
      CHECK(std::abs(c - expect) < 1e-10 * std::max(1e-3, std::abs(expect)));
    }
  // no singularity at beta = beta' + i pi for n = 1
  cplx f = continuum_ff_closed(3, {cplx(0.1, kPi)}, {0.1}, 3);
  CHECK(std::isfinite(std::abs(f)));
  CHECK(std::abs(f) > 0);
}

TEST_CASE("a = 1 vanishes") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int n = 1; n <= 3; ++n) {
    std::vector<cplx> b, bp;
    for (int i = 0; i < n; ++i) b.push_back(U(rng)), bp.push_back(U(rng));
    cplx ref = continuum_ff_closed(3, b, bp, 4);
    CHECK(std::abs(continuum_ff_closed(1, b, bp, 4)) < 1e-10 * std::abs(ref));
    CHECK(std::abs(continuum_ff_wick(1, b, bp, 4)) < 1e-10 * std::abs(ref));
  }
}

TEST_CASE("Wick and closed form agree at n = 2") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int k : {3, 4, 5})
    for (int a = 3; a <= k + 1; a += 2) {
      std::vector<cplx> b{U(rng), U(rng)}, bp{U(rng), U(rng)};
      CHECK(rel(continuum_ff_wick(a, b, bp, k), continuum_ff_closed(a, b, bp, k)) < 1e-10);
    }
}

TEST_CASE("kinematic pole at n = 2") {
  const int k = 4;
  std::vector<cplx> bp{0.3, -0.5};
  auto residue = [&](double d) {
    std::vector<cplx> b{bp[0] + cplx(d, kPi), 0.8};
    return d * continuum_ff_closed(3, b, bp, k);
  };
  cplx r1 = residue(1e-4), r2 = residue(1e-5);
  CHECK(std::abs(r2) > 1e-8);
  CHECK(rel(r1, r2) < 1e-3);
  std::vector<cplx> exact{bp[0] + cplx(0, kPi), 0.8};
  CHECK_THROWS_AS(continuum_ff_closed(3, exact, bp, k), pole_error);
}
