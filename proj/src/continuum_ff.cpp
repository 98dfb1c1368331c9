#include "abf/continuum_ff.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <array>
#include <boost/math/special_functions/bernoulli.hpp>
#include <cmath>
#include <functional>

#include "abf/lattice_ff.hpp"

namespace abf::continuum_ff {

namespace {

void check_species_range(int a, int k) {
  if (k < 2) throw domain_error("level k must be >= 2");
  if (a < 1 || a > k - 1) throw domain_error("particle label must lie in 1..k-1");
}

cplx lgamma_c(cplx z) {
  static const bool off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)off;
  gsl_sf_result lnr, arg;
  if (gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg) != GSL_SUCCESS)
    throw pole_error("log-gamma: argument at a pole", z);
  return {lnr.val, arg.val};
}

double bernoulli_number(int n) {
  if (n == 0) return 1.0;
  if (n == 1) return -0.5;
  if (n % 2) return 0.0;
  return boost::math::bernoulli_b2n<double>(n / 2);
}

cplx bernoulli_poly(int n, cplx z) {
  cplx s = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    s += binom * bernoulli_number(j) * std::pow(z, n - j);
    binom = binom * (n - j) / (j + 1);
  }
  return s;
}

// log G(d), G(d) = prod_n Gamma(n+c+d)Gamma(n+c-d)Gamma(n-c)^2 /
// (Gamma(n-c+d)Gamma(n-c-d)Gamma(n+c)^2), c = 1/k. Terms beyond n = kN are
// summed through the asymptotic expansion of log Gamma (Hurwitz zeta tail).
constexpr int kN = 64, kJ = 14;

cplx log_g(cplx d, int k) {
  const double c = 1.0 / k;
  std::vector<cplx> terms;
  terms.reserve(kN + kJ);
  for (int n = 1; n <= kN; ++n) {
    cplx p = (lgamma_c(n + c + d) + lgamma_c(n + c - d)) - 2.0 * lgamma_c(cplx(n + c));
    cplx q = (lgamma_c(n - c + d) + lgamma_c(n - c - d)) - 2.0 * lgamma_c(cplx(n - c));
    terms.push_back(p - q);
  }
  for (int j = 2; j <= kJ; ++j) {
    auto B = [&](cplx z) { return bernoulli_poly(j + 1, z); };
    cplx w = (B(c + d) + B(c - d) - 2.0 * B(cplx(c))) - (B(-c + d) + B(-c - d) - 2.0 * B(cplx(-c)));
    double sg = (j % 2) ? 1.0 : -1.0;
    terms.push_back(sg * w / double(j * (j + 1)) * gsl_sf_hzeta(j, kN + 1.0));
  }
  return qspecial::pairwise_sum(terms);
}

cplx g_fn(cplx d, int k) { return std::exp(log_g(d, k)); }

// 2x2 table of contraction values, index [(mu<0)][(nu<0)]
using Table = std::array<std::array<cplx, 2>, 2>;

Table pair_table(Species s1, Species s2, cplx b, int k) {
  Table t{};
  const double sk = 2.0 * std::sin(kPi / k);
  if (s1 == s2) {
    cplx den = std::sinh(b / 2.0 - kI * kPi / double(k)) * sk * g_fn(kI * b / (2 * kPi), k);
    if (std::abs(den) < 1e-300) throw pole_error("zf contraction: pole of the 11 rule", b);
    for (int mu : {1, -1})
      for (int nu : {1, -1}) {
        int m = (s1 == Species::one) ? mu : -mu, n = (s1 == Species::one) ? nu : -nu;
        t[mu < 0][nu < 0] = std::sinh(b / 2.0 - kI * kPi * double(m - n) / (2.0 * k)) / den;
      }
    return t;
  }
  cplx F = g_fn(kI * b / (2 * kPi) + 0.5, k);
  cplx ch = std::cosh(b / 2.0);
  for (int mu : {1, -1})
    for (int nu : {1, -1}) {
      int m = (s1 == Species::one) ? mu : -mu, n = (s1 == Species::one) ? nu : -nu;
      if (m + n == 0) {
        t[mu < 0][nu < 0] = F / sk;
        continue;
      }
      if (std::abs(ch) < 1e-12) throw pole_error("zf contraction: kinematic pole", b);
      t[mu < 0][nu < 0] = F * std::cosh(b / 2.0 + kI * kPi * double(m + n) / (2.0 * k)) / (sk * ch);
    }
  return t;
}

// Ring adaptors for the R-polynomials.
struct NumRing {
  int k;
  cplx zero() const { return 0.0; }
  cplx one() const { return 1.0; }
  cplx omega(long p) const { return std::polar(1.0, kPi * double(p) / k); }
  cplx brace(long l) const { return omega(l) - omega(-l); }
};

struct ExactRing {
  std::shared_ptr<const CycloField> f;
  Cyclo zero() const { return Cyclo(f, 0); }
  Cyclo one() const { return Cyclo(f, 1); }
  Cyclo omega(long p) const { return Cyclo::omega_pow(f, p); }
  Cyclo brace(long l) const { return Cyclo::brace(f, l); }
};

template <class T, class R>
std::vector<T> esym(const R& ring, const std::vector<T>& v) {
  std::vector<T> c{ring.one()};
  for (const T& x : v) {
    c.push_back(ring.zero());
    for (std::size_t i = c.size() - 1; i >= 1; --i) c[i] = c[i] + x * c[i - 1];
  }
  return c;
}

template <class T, class R>
T sig(const R& ring, const std::vector<T>& c, long r) {
  return (r >= 0 && r < long(c.size())) ? c[r] : ring.zero();
}

template <class T, class R>
T laplace_det(const R& ring, const std::vector<std::vector<T>>& M) {
  const std::size_t N = M.size();
  if (N == 0) return ring.one();
  if (N == 1) return M[0][0];
  T s = ring.zero();
  for (std::size_t j = 0; j < N; ++j) {
    std::vector<std::vector<T>> minor;
    for (std::size_t i = 1; i < N; ++i) {
      std::vector<T> row;
      for (std::size_t c = 0; c < N; ++c)
        if (c != j) row.push_back(M[i][c]);
      minor.push_back(std::move(row));
    }
    T t = M[0][j] * laplace_det(ring, minor);
    s = (j % 2) ? s - t : s + t;
  }
  return s;
}

template <class T, class R>
T r_direct(const R& ring, int alpha, const std::vector<T>& x, const std::vector<T>& y) {
  const int m = int(x.size()), n = int(y.size());
  std::vector<T> ix(m * m, ring.zero()), iy(n * n, ring.zero());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) ix[i * m + j] = ring.one() / (x[i] - x[j]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) iy[i * n + j] = ring.one() / (y[i] - y[j]);
  const T wp = ring.omega(1), wm = ring.omega(-1);
  const T ax_p = ring.omega(alpha - m + n), ax_m = ring.omega(-(alpha - m + n));
  const T ay_p = ring.omega(alpha + m - n), ay_m = ring.omega(-(alpha + m - n));
  T tot = ring.zero();
  for (unsigned A = 0; A < (1u << m); ++A)
    for (unsigned B = 0; B < (1u << n); ++B) {
      auto mu = [&](int i) { return (A >> i & 1u) ? -1 : 1; };
      auto nu = [&](int j) { return (B >> j & 1u) ? -1 : 1; };
      T t = ring.one();
      int sg = 1;
      for (int i = 0; i < m; ++i) {
        sg *= mu(i);
        t = t * (mu(i) > 0 ? ax_p : ax_m);
      }
      for (int j = 0; j < n; ++j) {
        sg *= nu(j);
        t = t * (nu(j) > 0 ? ay_p : ay_m);
      }
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          t = t * (x[i] * (mu(i) > 0 ? wp : wm) - x[j] * (mu(j) > 0 ? wp : wm)) * ix[i * m + j];
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          t = t * (y[i] * (nu(i) > 0 ? wp : wm) - y[j] * (nu(j) > 0 ? wp : wm)) * iy[i * n + j];
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
          t = t * (x[i] * (mu(i) > 0 ? wm : wp) + y[j] * (nu(j) > 0 ? wm : wp));
      tot = (sg > 0) ? tot + t : tot - t;
    }
  return tot;
}

// Every brace in the determinant form carries alpha once; alpha -> alpha + d is
// realised as {l} -> omega^l s - omega^{-l}/s with s = omega^d.
template <class T, class R>
T brace_s(const R& ring, long l, const T& s, const T& sinv) {
  return ring.omega(l) * s - ring.omega(-l) * sinv;
}

// determinant with the row denominators {A - i} removed; size = length of lc
template <class T, class R>
T s_numerator(const R& ring, const std::vector<int>& lc, int A, const std::vector<T>& c, int& N,
              const T& s, const T& sinv) {
  N = 0;
  for (int v : lc)
    if (v > 0) ++N;
  std::vector<std::vector<T>> M(N, std::vector<T>(N, ring.zero()));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      M[i - 1][j - 1] = brace_s(ring, A - lc[i - 1] + i - 2 * j, s, sinv) * sig(ring, c, lc[i - 1] - i + j);
  return laplace_det(ring, M);
}

template <class T, class R>
T r_det_s(const R& ring, int alpha, const std::vector<T>& x, const std::vector<T>& y, const T& s,
          const T& sinv) {
  const int m = int(x.size()), n = int(y.size());
  auto cx = esym(ring, x), cy = esym(ring, y);
  T tot = ring.zero();
  for (const Partition& lam : partitions_in_box(m, n)) {
    Partition lt = lam.tilde_conjugate(m, n);
    int N1 = 0, N2 = 0;
    T d1 = s_numerator(ring, lam.conjugate(n), alpha + n, cx, N1, s, sinv);
    T d2 = s_numerator(ring, lt.conjugate(m), alpha + m, cy, N2, s, sinv);
    T f = ring.one();
    for (int i = N1 + 1; i <= m; ++i) f = f * brace_s(ring, alpha - i + n, s, sinv);
    for (int i = m + 1; i <= N1; ++i) f = f / brace_s(ring, alpha - i + n, s, sinv);
    for (int j = N2 + 1; j <= n; ++j) f = f * brace_s(ring, alpha - j + m, s, sinv);
    for (int j = n + 1; j <= N2; ++j) f = f / brace_s(ring, alpha - j + m, s, sinv);
    tot = tot + f * d1 * d2;
  }
  return tot;
}

// Rows beyond min(m,n) keep a denominator {alpha - i + n} (or {alpha - j + m});
// when one of them is {0} the value is the alpha-limit.
bool det_form_singular(int alpha, int m, int n, int k) {
  for (int i = m + 1; i <= n; ++i)
    if ((alpha - i + n) % k == 0) return true;
  for (int j = n + 1; j <= m; ++j)
    if ((alpha - j + m) % k == 0) return true;
  return false;
}

// The deformed R is a Laurent polynomial of degree <= m+n in s; its value at
// s = 1 comes from interpolation on points where no brace vanishes.
cplx r_det_num(int k, int alpha, const std::vector<cplx>& x, const std::vector<cplx>& y) {
  NumRing ring{k};
  const int m = int(x.size()), n = int(y.size());
  if (!det_form_singular(alpha, m, n, k)) return r_det_s(ring, alpha, x, y, cplx(1.0), cplx(1.0));
  const int D = m + n, P = 2 * D + 1;
  cplx tot = 0.0;
  for (int j = 0; j < P; ++j) {
    cplx s = std::polar(1.0, 2.0 * kPi * (j + 0.2357) / P);
    cplx r = r_det_s(ring, alpha, x, y, s, 1.0 / s);
    // sum_l c_l with c_l = (1/P) sum_j r_j s_j^{-l}
    cplx w = 0.0;
    for (int l = -D; l <= D; ++l) w += std::pow(s, -double(l));
    tot += r * w;
  }
  return tot / double(P);
}

Cyclo r_det_exact(const ExactRing& ring, int alpha, const std::vector<Cyclo>& x,
                  const std::vector<Cyclo>& y) {
  const int m = int(x.size()), n = int(y.size());
  if (!det_form_singular(alpha, m, n, ring.f->k())) {
    Cyclo one = ring.one();
    return r_det_s(ring, alpha, x, y, one, one);
  }
  // s^D R(s) is a polynomial of degree 2D; Lagrange at s = 2..2D+2, evaluated at 1
  const int D = m + n, P = 2 * D + 1;
  std::vector<rational> sv;
  for (int j = 0; j < P; ++j) sv.push_back(rational(j + 2));
  Cyclo tot = ring.zero();
  for (int j = 0; j < P; ++j) {
    Cyclo s(ring.f, sv[j]), si(ring.f, 1 / sv[j]);
    Cyclo r = r_det_s(ring, alpha, x, y, s, si);
    rational sd = 1;
    for (int d = 0; d < D; ++d) sd *= sv[j];
    rational L = 1;
    for (int i = 0; i < P; ++i)
      if (i != j) L *= (1 - sv[i]) / (sv[j] - sv[i]);
    tot = tot + r * Cyclo(ring.f, sd * L);
  }
  return tot;
}

double min_gap(const std::vector<cplx>& v) {
  double g = INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
  return g;
}

std::vector<Cyclo> lift(const ExactRing& r, const std::vector<rational>& v) {
  std::vector<Cyclo> out;
  for (auto& q : v) out.emplace_back(r.f, q);
  return out;
}

void check_distinct(const std::vector<rational>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) throw pole_error("r_poly: coincident variables", 0.0);
}

}  // namespace

double mass(int a, int k, double M) {
  check_species_range(a, k);
  return M * std::sin(kPi * a / k) / std::sin(kPi / k);
}

cplx f_block(int A, cplx beta, int k) {
  if (A % (2 * k) == 0) return 1.0;
  cplx den = std::sinh(beta / 2.0 - kI * kPi * double(A) / (2.0 * k));
  if (std::abs(den) < 1e-300) throw pole_error("S-matrix: pole of an f-block", beta);
  return std::sinh(beta / 2.0 + kI * kPi * double(A) / (2.0 * k)) / den;
}

cplx s_matrix(int a, int b, cplx beta, int k) {
  check_species_range(a, k);
  check_species_range(b, k);
  const int d = std::abs(a - b);
  cplx s = f_block(a + b, beta, k) * f_block(d, beta, k);
  for (int j = 1; j <= std::min(a, b) - 1; ++j) {
    cplx f = f_block(d + 2 * j, beta, k);
    s *= f * f;
  }
  return s;
}

cplx s_matrix_product(int a, int b, cplx beta, int k) {
  check_species_range(a, k);
  check_species_range(b, k);
  cplx s = 1.0;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j) {
      double c = (a - b) / 2.0 - (i - j);
      cplx den = std::sinh(beta / 2.0 + kI * kPi * (c - 1.0) / double(k));
      if (std::abs(den) < 1e-300) throw pole_error("S-matrix: pole of the product form", beta);
      s *= std::sinh(beta / 2.0 + kI * kPi * (c + 1.0) / double(k)) / den;
    }
  return s;
}

cplx fmin_11(cplx beta, int k) {
  return std::sinh(beta / 2.0) * std::sinh(beta / 2.0 + kI * kPi / double(k)) /
         g_fn(kI * beta / (2 * kPi), k);
}

cplx fmin_1bar1(cplx beta, int k) { return g_fn(kI * beta / (2 * kPi) + 0.5, k); }

std::vector<cplx> elementary_symmetric(const std::vector<cplx>& values) {
  return esym(NumRing{1}, values);
}

std::vector<rational> elementary_symmetric(const std::vector<rational>& values) {
  std::vector<rational> c{rational(1)};
  for (const auto& x : values) {
    c.push_back(rational(0));
    for (std::size_t i = c.size() - 1; i >= 1; --i) c[i] += x * c[i - 1];
  }
  return c;
}

cplx brace(long l, int k) { return NumRing{k}.brace(l); }

std::vector<int> Partition::conjugate(int length) const {
  std::vector<int> c(length, 0);
  for (int j = 1; j <= length; ++j)
    for (int p : parts)
      if (p >= j) ++c[j - 1];
  return c;
}

Partition Partition::tilde_conjugate(int m, int n) const {
  std::vector<int> lc = conjugate(n);
  Partition t;
  for (int i = 0; i < n; ++i) t.parts.push_back(m - lc[n - 1 - i]);
  return t;
}

std::vector<Partition> partitions_in_box(int m, int n) {
  std::vector<Partition> out;
  std::function<void(std::vector<int>&, int, int)> rec = [&](std::vector<int>& cur, int left, int mx) {
    if (left == 0) {
      out.push_back({cur});
      return;
    }
    for (int v = mx; v >= 0; --v) {
      cur.push_back(v);
      rec(cur, left - 1, v);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(cur, m, n);
  return out;
}

cplx r_poly_direct(int alpha, const std::vector<cplx>& x, const std::vector<cplx>& y, int k) {
  NumRing ring{k};
  if (min_gap(x) >= 1e-6 && min_gap(y) >= 1e-6) return r_direct(ring, alpha, x, y);
  // removable coincidence: symmetric perturbation plus one Richardson step
  double scale = 1.0;
  for (auto& v : x) scale = std::max(scale, std::abs(v));
  for (auto& v : y) scale = std::max(scale, std::abs(v));
  auto S = [&](double h) {
    auto at = [&](double s) {
      auto xs = x, ys = y;
      for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += s * double(i + 1);
      for (std::size_t j = 0; j < ys.size(); ++j) ys[j] += s * double(j + 1);
      return r_direct(ring, alpha, xs, ys);
    };
    return (at(h) + at(-h)) / 2.0;
  };
  const double h = 1e-3 * scale;
  return (4.0 * S(h / 2) - S(h)) / 3.0;
}

cplx r_poly_det(int alpha, const std::vector<cplx>& x, const std::vector<cplx>& y, int k) {
  return r_det_num(k, alpha, x, y);
}

Cyclo r_poly_direct_exact(int alpha, const std::vector<rational>& x, const std::vector<rational>& y,
                          int k) {
  check_distinct(x);
  check_distinct(y);
  ExactRing ring{std::make_shared<CycloField>(k)};
  return r_direct(ring, alpha, lift(ring, x), lift(ring, y));
}

Cyclo r_poly_det_exact(int alpha, const std::vector<rational>& x, const std::vector<rational>& y,
                       int k) {
  ExactRing ring{std::make_shared<CycloField>(k)};
  return r_det_exact(ring, alpha, lift(ring, x), lift(ring, y));
}

cplx schur_like(const Partition& lambda, const std::vector<cplx>& values, int A, int k, int N) {
  int len = 0;
  for (int p : lambda.parts) len = std::max(len, p);
  if (N == 0) N = len;
  if (N < len) throw domain_error("schur_like: determinant size below the length of lambda'");
  std::vector<int> lc = lambda.conjugate(N);
  NumRing ring{k};
  auto c = esym(ring, values);
  std::vector<std::vector<cplx>> M(N, std::vector<cplx>(N));
  for (int i = 1; i <= N; ++i) {
    if ((A - i) % k == 0) throw domain_error("schur_like: singular entry {A-i} = 0");
    cplx den = ring.brace(A - i);
    for (int j = 1; j <= N; ++j)
      M[i - 1][j - 1] = ring.brace(A - lc[i - 1] + i - 2 * j) / den * sig(ring, c, lc[i - 1] - i + j);
  }
  return laplace_det(ring, M);
}

cplx zf_contraction(Species s1, int mu, Species s2, int nu, cplx beta, int k) {
  if (std::abs(mu) != 1 || std::abs(nu) != 1) throw domain_error("zf_contraction: components are +1 or -1");
  return pair_table(s1, s2, beta, k)[mu < 0][nu < 0];
}

namespace {

cplx wick_raw(int a, const std::vector<cplx>& beta, const std::vector<cplx>& betap, int k) {
  const int n = int(beta.size()), N = 2 * n;
  std::vector<Species> sp;
  std::vector<cplx> rap;
  for (auto b : beta) sp.push_back(Species::bar), rap.push_back(b);
  for (auto b : betap) sp.push_back(Species::one), rap.push_back(b);
  std::vector<Table> tab(N * N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) tab[i * N + j] = pair_table(sp[i], sp[j], rap[i] - rap[j], k);
  const double C1sq = 1.0 / (2.0 * std::sin(kPi / k));  // C_1^2
  const cplx ep = std::polar(1.0, kPi * a / (2.0 * k));
  std::vector<cplx> terms;
  for (unsigned A = 0; A < (1u << N); ++A) {
    auto c = [&](int i) { return (A >> i & 1u) ? -1 : 1; };
    cplx t = std::pow(C1sq, n);  // C_1^N
    for (int i = 0; i < N; ++i) {
      int mu = c(i);
      if (sp[i] == Species::bar)
        t *= double(mu) * (mu > 0 ? ep : std::conj(ep));
      else
        t *= -double(mu) * (mu > 0 ? std::conj(ep) : ep);
    }
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) t *= tab[i * N + j][c(i) < 0][c(j) < 0] / C1sq;
    terms.push_back(t);
  }
  return qspecial::pairwise_sum(terms);
}

void check_ff_args(int a, const std::vector<cplx>& beta, const std::vector<cplx>& betap, int k) {
  if (k < 3) throw domain_error("continuum form factors require k >= 3");
  if (a < 1 || a > k + 1 || a % 2 == 0) throw domain_error("form factor: a must be odd, 1 <= a <= k+1");
  if (beta.size() != betap.size()) throw domain_error("form factor: equal numbers of particles required");
  if (beta.size() > 6) throw domain_error("form factor: n > 6 is not supported");
}

}  // namespace

cplx continuum_ff_wick(int a, const std::vector<cplx>& beta, const std::vector<cplx>& betap, int k) {
  check_ff_args(a, beta, betap, k);
  for (std::size_t i = 0; i < beta.size(); ++i)
    for (std::size_t j = 0; j < betap.size(); ++j) {
      if (std::abs(std::cosh((beta[i] - betap[j]) / 2.0)) >= 1e-12) continue;
      // on a kinematic point: keep the value if the singularity is removable
      auto at = [&](double s) {
        auto b = beta;
        b[i] += s;
        return wick_raw(a, b, betap, k);
      };
      const double h = 1e-4;
      cplx p = at(h), q = at(-h);
      if (std::abs(p - q) > 1e-2 * std::abs(p + q))
        throw pole_error("form factor: kinematic pole", beta[i] - betap[j]);
      cplx S1 = (p + q) / 2.0, S2 = (at(h / 2) + at(-h / 2)) / 2.0;
      return (4.0 * S2 - S1) / 3.0;
    }
  return wick_raw(a, beta, betap, k);
}

cplx continuum_ff_closed(int a, const std::vector<cplx>& beta, const std::vector<cplx>& betap, int k) {
  check_ff_args(a, beta, betap, k);
  const int n = int(beta.size());
  const cplx w2 = std::polar(1.0, 2 * kPi / k);
  std::vector<cplx> x, y;
  for (auto b : beta) x.push_back(std::exp(b));
  for (auto b : betap) y.push_back(std::exp(b));
  cplx r = 1.0;
  auto den = [](cplx d, cplx at) {
    if (std::abs(d) < 1e-14) throw pole_error("form factor: vanishing denominator", at);
    return d;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      r *= fmin_11(beta[i] - beta[j], k) / den((x[i] - w2 * x[j]) * (x[i] - x[j] / w2), beta[i]);
      r *= fmin_11(betap[i] - betap[j], k) / den((y[i] - w2 * y[j]) * (y[i] - y[j] / w2), betap[i]);
    }
  const double C1sq = 1.0 / (2.0 * std::sin(kPi / k));
  if (n == 1) {
    // R^{(1,1)} = {alpha}{alpha-1}(x + y) cancels the 1/(x + y), so beta = beta' + i pi is regular
    const int alpha = (a + 1) / 2;
    return C1sq * fmin_1bar1(beta[0] - betap[0], k) * brace(alpha, k) * brace(alpha - 1, k);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r *= fmin_1bar1(beta[i] - betap[j], k) / den(x[i] + y[j], beta[i] - betap[j]);
  auto s = elementary_symmetric(x), t = elementary_symmetric(y);
  r *= std::pow(C1sq, n) * std::pow(2.0, 2 * n * (n - 1)) * std::pow(s[n] * t[n], double(n - 1));
  return r * r_poly_direct((a + 1) / 2, x, y, k);
}

ScalingTable scaling_compare(int a, const std::vector<cplx>& beta, const std::vector<cplx>& betap,
                             int k, const std::vector<double>& xs, const Truncation& tr) {
  check_ff_args(a, beta, betap, k);
  if (beta.empty()) throw domain_error("scaling_compare: n >= 1 required");
  ScalingTable tab;
  const cplx closed = continuum_ff_closed(a, beta, betap, k);
  const cplx b = beta[0] - betap[0];
  const cplx lim_1b1 = fmin_1bar1(b, k);
  const cplx lim_11 = fmin_11(b, k) / (std::sinh(b / 2.0) * std::sinh(b / 2.0 + kI * kPi / double(k)));
  for (double x : xs) {
    ModelParams mp(k, x);
    std::vector<cplx> v, vp;
    for (auto bb : beta) v.push_back(lattice_ff::rapidity_to_v(bb, mp));
    for (auto bb : betap) vp.push_back(lattice_ff::rapidity_to_v(bb, mp));
    cplx hq = lattice_ff::hat_q(a, v, vp, mp, tr, lattice_ff::HatQPath::modular);
    double delta = mp.dim(a - 1);
    cplx val = std::pow(mp.p(), -2.0 * (k + 2) * delta / k) * hq;
    ScalingRow row;
    row.x = x;
    row.lattice = val;
    row.closed = closed;
    row.rel_err = std::abs(val - closed) / std::abs(closed);
    cplx F0 = qspecial::f_pair(0.0, mp, tr);
    row.ratio_1bar1 = F0 / qspecial::f_pair(double(k) / (2 * kPi * kI) * (b - kI * kPi), mp, tr);
    row.ratio_11 = qspecial::f_pair(double(k) / (2 * kPi * kI) * b, mp, tr) / F0;
    row.ratio_1bar1_err = std::abs(row.ratio_1bar1 - lim_1b1) / std::abs(lim_1b1);
    row.ratio_11_err = std::abs(row.ratio_11 - lim_11) / std::abs(lim_11);
    tab.rows.push_back(row);
  }
  tab.monotone = tab.ratios_monotone = true;
  for (std::size_t i = 1; i < tab.rows.size(); ++i) {
    tab.monotone = tab.monotone && tab.rows[i].rel_err < tab.rows[i - 1].rel_err;
    tab.ratios_monotone = tab.ratios_monotone &&
                          tab.rows[i].ratio_1bar1_err < tab.rows[i - 1].ratio_1bar1_err &&
                          tab.rows[i].ratio_11_err < tab.rows[i - 1].ratio_11_err;
  }
  return tab;
}

}  // namespace abf::continuum_ff
