#include "abf/lhp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace abf::lhp {

namespace {

bool odd(long v) { return (v % 2) != 0; }

}  // namespace

Apex centred_apex(int k, int m, int l, cplx y1, cplx y2, cplx t) {
  const int K = k + 2;
  double Ls = -K * y1.imag() / t.imag();
  double Ms = -k * y2.imag() / t.imag();
  double n1c = (Ls - l - 1) / (2.0 * K);
  double n2c = (Ms - m) / (2.0 * k);
  return {static_cast<long>(std::floor(n2c - n1c)), static_cast<long>(std::floor(-n1c - n2c))};
}

// Integer coordinates d = n2-n1, s = -n1-n2. The region is
// {d <= H, s <= H'} with sign +1 and {d > H, s > H'} with sign -1.
cplx gamma_region(int k, int m, int l, cplx y1, cplx y2, cplx t, Apex apex,
                  const Truncation& tr, double* abs_sum) {
  if (abs_sum) *abs_sum = 0.0;
  if (!(t.imag() > 0.0)) throw domain_error("Gamma: Im(modular argument) must be positive");
  if (odd(long(l) - m)) return 0.0;
  const int K = k + 2;
  auto term = [&](long d, long s) {
    double L = l + 1.0 - double(d + s) * K;
    double M = m + double(d - s) * k;
    cplx e = 2.0 * kI * kPi * t * (L * L / (4.0 * K) - M * M / (4.0 * k)) +
             kI * kPi * L * y1 - kI * kPi * M * y2;
    cplx v = std::exp(e);
    return odd(d + s) ? -v : v;
  };

  std::vector<cplx> terms;
  double peak = 0.0, prev = INFINITY;
  for (long r = 0; r <= tr.max_terms; ++r) {
    double shell = 0.0;
    auto add = [&](long d, long s, double sg) {
      cplx v = sg * term(d, s);
      shell = std::max(shell, std::abs(v));
      if (abs_sum) *abs_sum += std::abs(v);
      terms.push_back(v);
    };
    // shell max(i,j) = r in each quadrant
    for (long i = 0; i <= r; ++i) {
      long j = r;
      add(apex.H - i, apex.Hp - j, 1.0);
      add(apex.H + 1 + i, apex.Hp + 1 + j, -1.0);
      if (i != r) {
        add(apex.H - j, apex.Hp - i, 1.0);
        add(apex.H + 1 + j, apex.Hp + 1 + i, -1.0);
      }
    }
    peak = std::max(peak, shell);
    if (r >= 2 && shell < prev && shell <= tr.eps * 1e-3 * peak) break;
    prev = shell;
  }
  return qspecial::pairwise_sum(terms);
}

cplx gamma_sector(const GammaArgs& g, const SectorLabel& s, const ModelParams& mp,
                  const Truncation& tr) {
  if (!(g.modular_arg.imag() > 0.0))
    throw domain_error("Gamma: Im(modular argument) must be positive");
  if (odd(long(s.l) - s.m)) return 0.0;
  Apex ap{static_cast<long>(std::floor(g.h)), static_cast<long>(std::floor(g.hp))};
  cplx e = qspecial::dedekind_eta(g.modular_arg, tr);
  return gamma_region(mp.k(), s.m, s.l, g.y1, g.y2, g.modular_arg, ap, tr) / (e * e);
}

double string_fn(int l, int m, const ModelParams& mp, const Truncation& tr) {
  if (odd(long(l) - m)) return 0.0;
  const cplx t = mp.tau();
  Apex ap = centred_apex(mp.k(), m, l, 0.0, 0.0, t);
  cplx e = qspecial::eta(mp, tr);
  return (gamma_region(mp.k(), m, l, 0.0, 0.0, t, ap, tr) / (e * e * e)).real();
}

double one_point_lhp(int a, int m, const ModelParams& mp, const Truncation& tr) {
  if (a < 1 || a > mp.k() + 1) throw domain_error("one_point_lhp: height out of range");
  return mp.xpow((mp.k() + 2) / 4.0) * qspecial::bracket(cplx(a), mp, tr).real() *
         string_fn(a - 1, m, mp, tr);
}

PartitionFn partition_fn(const ModelParams& mp, const Truncation& tr) {
  const int k = mp.k();
  const double q = mp.xpow(2.0 * k);
  const double qq = qspecial::qpoch(cplx(q), {q}, tr).real();
  double s = 0.0;
  for (int l = 0; l <= k; ++l)
    s += qspecial::bracket(cplx(l + 1), mp, tr).real() * string_fn(l, 0, mp, tr);
  s *= mp.xpow(k * k / (4.0 * (k + 2))) * qq;
  return {s, mp.xpow(-(k + 1.0) / (k + 2)) * qq};
}

double two_point_lhp(int b, int a, int m, const ModelParams& mp, const Truncation& tr) {
  const int k = mp.k();
  if (std::abs(b - a) != 1) throw domain_error("two_point_lhp: heights must differ by 1");
  // P_{k+1,k+2} is meaningful (and vanishes); a = k+2 only pairs with b = k+1
  if (a < 1 || a > k + 2 || b < 0 || b > k + 2 || (a == k + 2 && b != k + 1))
    throw domain_error("two_point_lhp: height out of range");
  double r = 0.0;
  const int top = (b == a + 1) ? a : a - 1;
  const double sg = (b == a + 1) ? 1.0 : -1.0;
  for (int s = 1; s <= top; ++s) {
    if ((a - s) % 2 == 0)
      r += sg * one_point_lhp(s, m, mp, tr);
    else
      r -= sg * one_point_lhp(s, m + 1, mp, tr);
  }
  return r;
}

}  // namespace abf::lhp
