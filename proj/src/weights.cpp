#include "abf/weights.hpp"

#include <algorithm>
#include <cmath>

namespace abf::weights {

using qspecial::bracket;

bool admissible(const HeightQuad& q, int k) {
  for (int h : {q.a, q.b, q.c, q.d})
    if (h < 1 || h > k + 1) return false;
  return std::abs(q.a - q.b) == 1 && std::abs(q.b - q.d) == 1 &&
         std::abs(q.d - q.c) == 1 && std::abs(q.c - q.a) == 1;
}

static double br(double u, const ModelParams& mp, const Truncation& tr) {
  return bracket(cplx(u), mp, tr).real();
}

double wbar(const HeightQuad& q, const ModelParams& mp, const Truncation& tr) {
  if (!admissible(q, mp.k())) return 0.0;
  const int a = q.a, s = q.b - q.a;
  const double u = q.u;
  if (q.b == q.c && q.d == a + 2 * s) return 1.0;
  if (q.b == q.c)  // d == a
    return br(a + s * u, mp, tr) * br(1, mp, tr) / (br(a, mp, tr) * br(1 - u, mp, tr));
  // b != c, d == a
  return br(a - s, mp, tr) * br(-u, mp, tr) / (br(a, mp, tr) * br(1 - u, mp, tr));
}

static double rho_plus(double u, const ModelParams& mp, const Truncation& tr) {
  const int k = mp.k();
  double bb[2] = {mp.xpow(2.0 * k), mp.xpow(2.0 * (k + 2))};
  std::span<const double> b(bb, 2);
  double mf = 1e300;
  cplx den = qspecial::qpoch_guarded(mp.xpow(2.0 * k + 2 * u), b, tr, mf) *
             qspecial::qpoch_guarded(mp.xpow(2.0 * k + 4 + 2 * u), b, tr, mf);
  if (mf < tr.eps) throw pole_error("rho: product pole", cplx(u));
  cplx n = qspecial::qpoch(mp.xpow(2.0 * k + 2 + 2 * u), b, tr);
  return (n * n / den).real();
}

double rho(double u, const ModelParams& mp, const Truncation& tr) {
  const int k = mp.k();
  return mp.xpow(2.0 * u / (k * (k + 2))) * rho_plus(u, mp, tr) / rho_plus(-u, mp, tr);
}

double weight(const HeightQuad& q, const ModelParams& mp, const Truncation& tr) {
  if (!admissible(q, mp.k())) return 0.0;
  return rho(q.u, mp, tr) * wbar(q, mp, tr);
}

double RelationReport::max() const {
  return std::max({unitarity, second_inversion, ybe, rho_inverse, rho_crossing});
}

namespace {

// All weights at one spectral parameter; heights 0..k+2 so that +-1 probes
// outside the range read zeros.
struct Table {
  int n;
  std::vector<double> w;
  Table(const ModelParams& mp, double u, const Truncation& tr) : n(mp.k() + 3) {
    w.assign(std::size_t(n) * n * n * n, 0.0);
    const int k = mp.k();
    double r = rho(u, mp, tr);
    for (int a = 1; a <= k + 1; ++a)
      for (int b : {a - 1, a + 1})
        for (int c : {a - 1, a + 1})
          for (int d : {b - 1, b + 1}) {
            HeightQuad q{a, b, c, d, u};
            if (admissible(q, k)) at(a, b, c, d) = r * wbar(q, mp, tr);
          }
  }
  double& at(int a, int b, int c, int d) { return w[((std::size_t(a) * n + b) * n + c) * n + d]; }
  double operator()(int a, int b, int c, int d) const {
    if (a < 0 || b < 0 || c < 0 || d < 0 || a >= n || b >= n || c >= n || d >= n) return 0.0;
    return w[((std::size_t(a) * n + b) * n + c) * n + d];
  }
};

}  // namespace

RelationReport verify_relations(const ModelParams& mp, const std::vector<double>& us,
                                const Truncation& tr) {
  RelationReport rep;
  const int k = mp.k();
  const int H = k + 1;
  std::vector<double> brk(H + 3, 0.0);
  for (int h = 1; h <= H; ++h) brk[h] = br(h, mp, tr);

  for (double u : us) {
    Table P(mp, u, tr), M(mp, -u, tr), X(mp, -k - u, tr);
    for (int a = 1; a <= H; ++a)
      for (int b = 1; b <= H; ++b)
        for (int c = 1; c <= H; ++c)
          for (int d = 1; d <= H; ++d) {
            // unitarity: sum_g W(a b; g c|u) W(a g; d c|-u) = delta_bd
            if (std::abs(a - b) == 1 && std::abs(a - d) == 1 && std::abs(b - c) == 1 &&
                std::abs(d - c) == 1) {
              double s = 0;
              for (int g = 1; g <= H; ++g) s += P(a, b, g, c) * M(a, g, d, c);
              rep.unitarity = std::max(rep.unitarity, std::abs(s - (b == d ? 1.0 : 0.0)));
            }
            // second inversion
            if (std::abs(a - b) == 1 && std::abs(a - c) == 1 && std::abs(d - c) == 1 &&
                std::abs(d - b) == 1) {
              double s = 0;
              for (int g = 1; g <= H; ++g)
                s += brk[g] / brk[c] * X(d, c, b, g) * P(a, b, c, g);
              double t = (a == d) ? brk[b] / brk[d] : 0.0;
              rep.second_inversion = std::max(rep.second_inversion, std::abs(s - t));
            }
          }
    double r1 = rho(u, mp, tr), r2 = rho(-u, mp, tr), r3 = rho(-k - u, mp, tr);
    rep.rho_inverse = std::max(rep.rho_inverse, std::abs(r1 * r2 - 1.0));
    double b1 = br(1 - u, mp, tr);
    double t = b1 * b1 / (br(-u, mp, tr) * br(2 - u, mp, tr));
    rep.rho_crossing = std::max(rep.rho_crossing, std::abs(r1 * r3 - t) / std::max(1.0, std::abs(t)));
  }

  for (std::size_t i = 0; i + 2 < us.size(); i += 3) {
    double u1 = us[i], u2 = us[i + 1], u3 = us[i + 2];
    Table A(mp, u1 - u2, tr), B(mp, u1 - u3, tr), C(mp, u2 - u3, tr);
    for (int a = 1; a <= H; ++a)
      for (int b = 1; b <= H; ++b) {
        if (std::abs(a - b) != 1) continue;
        for (int c = 1; c <= H; ++c) {
          if (std::abs(b - c) != 1) continue;
          for (int d = 1; d <= H; ++d) {
            if (std::abs(c - d) != 1) continue;
            for (int e = 1; e <= H; ++e) {
              if (std::abs(a - e) != 1) continue;
              for (int f = 1; f <= H; ++f) {
                if (std::abs(e - f) != 1 || std::abs(f - d) != 1) continue;
                double L = 0, R = 0;
                for (int g = 1; g <= H; ++g) {
                  L += A(b, g, c, d) * B(a, e, b, g) * C(e, f, g, d);
                  R += C(a, g, b, c) * B(g, f, c, d) * A(a, e, g, f);
                }
                rep.ybe = std::max(rep.ybe, std::abs(L - R));
              }
            }
          }
        }
      }
  }
  return rep;
}

}  // namespace abf::weights
