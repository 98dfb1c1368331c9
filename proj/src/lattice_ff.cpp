#include "abf/lattice_ff.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace abf::lattice_ff {

using qspecial::bracket;
using qspecial::bracket_star;
using qspecial::f_pair;

namespace {

void require_level(const ModelParams& mp) {
  if (mp.k() < 3)
    throw domain_error(
        "k = 2 (Ising) is excluded: the trace contractions have no common domain of "
        "convergence; k >= 3 is required");
}

cplx checked_den(cplx d, const char* what, cplx at, const Truncation& tr) {
  if (std::abs(d) < tr.eps) throw pole_error(what, at);
  return d;
}

// Coefficients of the trace grouped by the aggregates (mu, nu): the sum over
// all sign vectors of prod mu_i nu_i times the three bracket/F blocks.
struct Prepared {
  int n = 0;
  cplx vtot = 0.0;
  std::vector<cplx> agg;  // index (mu+n)/2 * (n+1) + (nu+n)/2
  cplx& at(int mu, int nu) { return agg[((mu + n) / 2) * (n + 1) + (nu + n) / 2]; }
  cplx at(int mu, int nu) const { return agg[((mu + n) / 2) * (n + 1) + (nu + n) / 2]; }
};

Prepared prepare(const std::vector<cplx>& v, const std::vector<cplx>& vp, const ModelParams& mp,
                 const Truncation& tr) {
  if (v.size() != vp.size()) throw domain_error("trace: v and v' must have equal length");
  const int n = static_cast<int>(v.size());
  if (n > 12) throw domain_error("trace: n > 12 is not supported");
  const double k = mp.k();
  Prepared P;
  P.n = n;
  P.agg.assign(std::size_t(n + 1) * (n + 1), 0.0);
  for (int i = 0; i < n; ++i) P.vtot += vp[i] - v[i];

  const cplx F0 = f_pair(0.0, mp, tr);
  cplx common = 1.0;
  // numerator tables, offset index delta+1 for delta in {-1,0,1}
  std::vector<std::array<cplx, 3>> nu_u(n * n), nu_p(n * n), nu_x(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cplx d = v[j] - v[i], dp = vp[j] - vp[i];
      common *= f_pair(d, mp, tr) / F0 /
                checked_den(bracket_star(d - 1.0, mp, tr), "trace: [v_j-v_i-1]* vanishes", d, tr);
      common *= f_pair(dp, mp, tr) / F0 /
                checked_den(bracket_star(dp - 1.0, mp, tr), "trace: [v'_j-v'_i-1]* vanishes", dp, tr);
      for (int e = -1; e <= 1; ++e) {
        nu_u[i * n + j][e + 1] = bracket_star(d + double(e), mp, tr);
        nu_p[i * n + j][e + 1] = bracket_star(dp - double(e), mp, tr);
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx w = vp[j] - v[i] - k / 2.0;
      common *= F0 /
                checked_den(f_pair(w, mp, tr), "trace: F(v'_j-v_i-k/2) vanishes", w, tr) /
                checked_den(bracket_star(w, mp, tr), "trace: [v'_j-v_i-k/2]* vanishes", w, tr);
      for (int e = -1; e <= 1; ++e) nu_x[i * n + j][e + 1] = bracket_star(w - double(e), mp, tr);
    }

  const unsigned N = 1u << n;
  std::vector<int> mu(n), nu(n);
  for (unsigned A = 0; A < N; ++A) {
    int mt = 0;
    for (int i = 0; i < n; ++i) mt += mu[i] = (A >> i & 1u) ? -1 : 1;
    for (unsigned B = 0; B < N; ++B) {
      int nt = 0, sg = 1;
      for (int i = 0; i < n; ++i) {
        nt += nu[i] = (B >> i & 1u) ? -1 : 1;
        sg *= mu[i] * nu[i];
      }
      cplx t = double(sg);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          t *= nu_u[i * n + j][(mu[i] - mu[j]) / 2 + 1];
          t *= nu_p[i * n + j][(nu[i] - nu[j]) / 2 + 1];
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t *= nu_x[i * n + j][(mu[i] + nu[j]) / 2 + 1];
      P.at(mt, nt) += t;
    }
  }
  for (auto& c : P.agg) c *= common;
  return P;
}

// x-power of kappa that depends on the aggregates
cplx kappa_pow(int mu, int nu, cplx v, const ModelParams& mp) {
  const double k = mp.k();
  return mp.xpow((mu + nu) / k * v + (mu * mu + nu * nu) / (4.0 * k) - (k + 1) * mu * nu / (2.0 * k));
}

// [a]-free prefactor (1/Z)(-i tau eta^3/[1]*)^n x^{-2nv/k + n^2/2 - kn/4 + kc/12}
cplx kappa_base(int n, cplx v, const ModelParams& mp, const Truncation& tr) {
  const double k = mp.k();
  const double q = mp.xpow(2.0 * k);
  cplx Z = mp.xpow(-(k + 1) / (k + 2)) * qspecial::qpoch(cplx(q), {q}, tr);
  cplx e = qspecial::eta(mp, tr);
  cplx b = -kI * mp.tau() * e * e * e / bracket_star(1.0, mp, tr);
  cplx r = 1.0 / Z;
  for (int i = 0; i < n; ++i) r *= b;
  return r * mp.xpow(-2.0 * n * v / k + n * n / 2.0 - k * n / 4.0 + k * mp.central_charge() / 12.0);
}

void trace_y(int mu, int nu, cplx v, const ModelParams& mp, cplx& y1, cplx& y2) {
  const double k = mp.k();
  const cplx t = mp.tau();
  y1 = t * double(mu - nu) / (2.0 * k);
  y2 = t / k * (2.0 * v / k - (mu + nu) / 2.0);
}

lhp::Apex trace_apex(int a, int m, cplx v, const ModelParams& mp) {
  const double k = mp.k();
  return lhp::centred_apex(mp.k(), m, a - 1, 0.0, mp.tau() * (2.0 * v / k) / k, mp.tau());
}

// cond, if given, receives sum |term| / |sum| over all zero-mode terms
cplx trace_from(const Prepared& P, int a, int m, const lhp::Apex* apex, const ModelParams& mp,
                const Truncation& tr, double* cond = nullptr) {
  if ((a - m) % 2 == 0) return 0.0;
  const int n = P.n;
  lhp::Apex ap = apex ? *apex : trace_apex(a, m, P.vtot, mp);
  cplx e = qspecial::eta(mp, tr);
  std::vector<cplx> terms;
  double abs_total = 0.0;
  for (int mu = -n; mu <= n; mu += 2)
    for (int nu = -n; nu <= n; nu += 2) {
      cplx c = P.at(mu, nu);
      if (c == cplx(0.0)) continue;
      cplx y1, y2;
      trace_y(mu, nu, P.vtot, mp, y1, y2);
      cplx w = c * kappa_pow(mu, nu, P.vtot, mp);
      double mag = 0.0;
      terms.push_back(w * lhp::gamma_region(mp.k(), m, a - 1, y1, y2, mp.tau(), ap, tr, &mag));
      abs_total += std::abs(w) * mag;
    }
  cplx sum = qspecial::pairwise_sum(terms);
  if (cond) *cond = abs_total / std::abs(sum);
  return bracket(cplx(a), mp, tr) * kappa_base(n, P.vtot, mp, tr) * sum / (e * e);
}

// Gamma_{m',l'}(y1/tau, y2/tau | -1/tau), apex centred at y = 0
cplx gamma_dual(int mp_, int lp, cplx y1, cplx y2, const ModelParams& mp, const Truncation& tr) {
  const cplx t = mp.tau(), td = -1.0 / t;
  lhp::Apex ap = lhp::centred_apex(mp.k(), mp_, lp, 0.0, 0.0, td);
  cplx e = qspecial::dedekind_eta(td, tr);
  return lhp::gamma_region(mp.k(), mp_, lp, y1 / t, y2 / t, td, ap, tr) / (e * e);
}

// C(s) = K [s = 0 mod 2K] - (1 + (-1)^s)/2 : sum_{a'=0}^{K-1} cos(pi s a'/K) shifted
long csum(long s, long K) {
  long mod = ((s % (2 * K)) + 2 * K) % (2 * K);
  return (mod == 0 ? K : 0) - ((s % 2 == 0) ? 1 : 0);
}

// 4 T(n,l') = 4 sum_{a'} sin(pi a a'/K)/sin(pi a'/K) sin((2n-1)pi a'/K) sin((l'+1)pi a'/K)
long t4(int a, long n, int lp, long K) {
  long q = 2 * n - 1, r = lp + 1, tot = 0;
  for (int j = 0; j < a; ++j) {
    long p = a - 1 - 2 * j;
    tot += csum(p - (q - r), K) + csum(p + (q - r), K) - csum(p - (q + r), K) - csum(p + q + r, K);
  }
  return tot;
}

}  // namespace

int ComponentAssignment::mu_total() const { return std::accumulate(mu.begin(), mu.end(), 0); }
int ComponentAssignment::nu_total() const { return std::accumulate(nu.begin(), nu.end(), 0); }

bool in_convergence_window(const Insertion& i1, const Insertion& i2, const ModelParams& mp) {
  // |z1/z2| = x^{2 Re(v1-v2)}; x < 1 reverses the inequalities on exponents
  double e = 2.0 * (i1.v - i2.v).real();
  double lo = i2.eps - i1.eps - 2.0 * mp.k(), hi = i2.eps - i1.eps;
  return lo < e && e < hi;
}

cplx pair_contraction(const Insertion& i1, const Insertion& i2, const ModelParams& mp,
                      const Truncation& tr, bool analytic_continuation) {
  require_level(mp);
  if (std::abs(i1.sign) != 1 || std::abs(i2.sign) != 1 || std::abs(i1.eps) != 1 ||
      std::abs(i2.eps) != 1)
    throw domain_error("pair_contraction: signs and components must be +1 or -1");
  if (!analytic_continuation && !in_convergence_window(i1, i2, mp))
    throw domain_error("pair_contraction: arguments outside the convergence window");
  const double k = mp.k();
  const cplx v = i2.v - i1.v;
  const double C = qspecial::constants(mp, tr).C;
  const double C2 = C * C;
  double e1 = i1.eps, e2 = i2.eps;
  if (i1.sign < 0) e1 = -e1, e2 = -e2;
  if (i1.sign == i2.sign) {
    cplx den = checked_den(bracket_star(v - 1.0, mp, tr), "contraction: [v-1]* vanishes", v, tr);
    return C2 * f_pair(v, mp, tr) * bracket_star(v + (e1 - e2) / 2, mp, tr) / den *
           mp.xpow(-2.0 / k * (1 + (e1 - e2) / 2) * v + (1 + e1 * e2) / (2 * k) + 1.0 + (e1 - e2) / 2);
  }
  const cplx w = v - k / 2;
  cplx den = checked_den(bracket_star(w, mp, tr), "contraction: [v-k/2]* vanishes", v, tr);
  cplx F = checked_den(f_pair(w, mp, tr), "contraction: F(v-k/2) vanishes", v, tr);
  return C2 / F * bracket_star(w - (e1 + e2) / 2, mp, tr) / den *
         mp.xpow((e1 + e2) / k * v - (1 + k) / (2 * k) * (1 + e1 * e2) - (e1 + e2) / 2);
}

cplx wick_product(const std::vector<Insertion>& ins, const ModelParams& mp, const Truncation& tr,
                  bool analytic_continuation) {
  int s = 0;
  for (auto& i : ins) s += i.sign;
  if (s != 0) throw domain_error("wick_product: signs must sum to zero");
  if (ins.empty()) return 1.0;
  const double C = qspecial::constants(mp, tr).C;
  cplx r = std::pow(C, double(ins.size()));
  for (std::size_t i = 0; i < ins.size(); ++i)
    for (std::size_t j = i + 1; j < ins.size(); ++j)
      r *= pair_contraction(ins[i], ins[j], mp, tr, analytic_continuation) / (C * C);
  return r;
}

cplx q_trace(const TraceRequest& req, const ModelParams& mp, const Truncation& tr) {
  require_level(mp);
  if ((req.a - req.m) % 2 == 0) return 0.0;
  return trace_from(prepare(req.v, req.vp, mp, tr), req.a, req.m, nullptr, mp, tr);
}

cplx q_trace_at(const TraceRequest& req, lhp::Apex apex, const ModelParams& mp,
                const Truncation& tr, double* cond) {
  require_level(mp);
  if (cond) *cond = 1.0;
  if ((req.a - req.m) % 2 == 0) return 0.0;
  return trace_from(prepare(req.v, req.vp, mp, tr), req.a, req.m, &apex, mp, tr, cond);
}

cplx g_shift(cplx u, const std::vector<cplx>& v, const std::vector<cplx>& vp, const ModelParams& mp,
             const Truncation& tr) {
  const double k = mp.k();
  cplx r = 1.0;
  for (cplx vj : v)
    r *= bracket_star(u - vj + 0.5 + k / 2, mp, tr) /
         checked_den(bracket_star(u - vj - 0.5 + k / 2, mp, tr), "g_shift: pole", u, tr);
  for (cplx vj : vp)
    r *= bracket_star(u - vj - 0.5, mp, tr) /
         checked_den(bracket_star(u - vj + 0.5, mp, tr), "g_shift: pole", u, tr);
  return r;
}

cplx q_neighbor(int b, int a, int m, cplx u, const std::vector<cplx>& v,
                const std::vector<cplx>& vp, const ModelParams& mp, const Truncation& tr) {
  require_level(mp);
  const int k = mp.k();
  if (std::abs(b - a) != 1) throw domain_error("q_neighbor: heights must differ by 1");
  if (a < 1 || a > k + 2 || b < 0 || b > k + 2 || (a == k + 2 && b != k + 1))
    throw domain_error("q_neighbor: height out of range");
  Prepared P = prepare(v, vp, mp, tr);
  cplx G = g_shift(u, v, vp, mp, tr);
  const int top = (b == a + 1) ? a : a - 1;
  const double sg = (b == a + 1) ? 1.0 : -1.0;
  cplx r = 0.0;
  for (int s = 1; s <= top; ++s) {
    if ((a - s) % 2 == 0)
      r += sg * trace_from(P, s, m, nullptr, mp, tr);
    else
      r -= sg * trace_from(P, s, m + 1, nullptr, mp, tr) * G;
  }
  return r;
}

cplx f_poly(int mu, int nu, const std::vector<cplx>& u, const std::vector<cplx>& v,
            const ModelParams& mp, const Truncation& tr) {
  if (u.size() != v.size()) throw domain_error("f_poly: u and v must have equal length");
  const int n = static_cast<int>(u.size());
  if (std::abs(mu) > n || std::abs(nu) > n) return 0.0;
  if (n > 12) throw domain_error("f_poly: n > 12 is not supported");
  std::vector<cplx> du(n * n), dv(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      du[i * n + j] = checked_den(bracket_star(u[i] - u[j], mp, tr), "f_poly: u_i = u_j", u[i], tr);
      dv[i * n + j] = checked_den(bracket_star(v[i] - v[j], mp, tr), "f_poly: v_i = v_j", v[i], tr);
    }
  const unsigned N = 1u << n;
  std::vector<int> m(n), q(n);
  std::vector<cplx> terms;
  for (unsigned A = 0; A < N; ++A) {
    int mt = 0;
    for (int i = 0; i < n; ++i) mt += m[i] = (A >> i & 1u) ? -1 : 1;
    if (mt != mu) continue;
    for (unsigned B = 0; B < N; ++B) {
      int nt = 0, sg = 1;
      for (int i = 0; i < n; ++i) {
        nt += q[i] = (B >> i & 1u) ? -1 : 1;
        sg *= m[i] * q[i];
      }
      if (nt != nu) continue;
      cplx t = double(sg);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t *= bracket_star(u[i] + v[j] + (m[i] + q[j]) / 2.0, mp, tr);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          t *= bracket_star(u[i] - u[j] - (m[i] - m[j]) / 2.0, mp, tr) / du[i * n + j];
          t *= bracket_star(v[i] - v[j] - (q[i] - q[j]) / 2.0, mp, tr) / dv[i * n + j];
        }
      terms.push_back(t);
    }
  }
  return qspecial::pairwise_sum(terms);
}

cplx g_poly(int mu, int nu, const std::vector<cplx>& u, const std::vector<cplx>& v,
            const ModelParams& mp, const Truncation& tr) {
  return f_poly(mu, nu, u, v, mp, tr) - f_poly(nu, mu, u, v, mp, tr);
}

cplx hat_q(int a, const std::vector<cplx>& v, const std::vector<cplx>& vp, const ModelParams& mp,
           const Truncation& tr, HatQPath path) {
  require_level(mp);
  const int k = mp.k(), K = k + 2;
  if (a < 1 || a > k + 1) throw domain_error("hat_q: height out of range");
  Prepared P = prepare(v, vp, mp, tr);

  if (path == HatQPath::direct) {
    std::vector<cplx> terms;
    for (int ap = 1; ap <= k + 1; ++ap) {
      double w = std::sin(kPi * a * ap / K) / std::sin(kPi * ap / K);
      for (int m = -k; m < k; ++m) terms.push_back(w * trace_from(P, ap, m, nullptr, mp, tr));
    }
    return -qspecial::pairwise_sum(terms) / (2.0 * k);
  }

  // The m-sum gives 2k delta_{m',0}; the a'-sum against the theta series of
  // [a'] reduces to the integer cosine sums t4.
  const cplx t = mp.tau();
  const cplx tpp = -double(k) / (t * double(K));
  const cplx bpref = std::sqrt(kI * double(k) / (t * double(K))) * std::exp(-kI * kPi * t * double(K) / (4.0 * k));
  std::vector<cplx> A(k + 1, 0.0);
  for (int lp = 0; lp <= k; lp += 2) {
    std::vector<cplx> s;
    for (long nn = 1; nn <= tr.max_terms; ++nn) {
      double h = nn - 0.5;
      cplx g = std::exp(kI * kPi * tpp * h * h);
      long T = t4(a, nn, lp, K);
      if (T != 0) s.push_back(((nn % 2) ? 2.0 : -2.0) * g * (T / 4.0));
      if (std::abs(g) < tr.eps * 1e-3) break;
    }
    A[lp] = bpref * qspecial::pairwise_sum(s);
  }
  std::vector<cplx> terms;
  for (int mu = -P.n; mu <= P.n; mu += 2)
    for (int nu = -P.n; nu <= P.n; nu += 2) {
      cplx c = P.at(mu, nu);
      if (c == cplx(0.0)) continue;
      cplx y1, y2;
      trace_y(mu, nu, P.vtot, mp, y1, y2);
      for (int lp = 0; lp <= k; lp += 2)
        terms.push_back(c * A[lp] * gamma_dual(0, lp, y1, y2, mp, tr));
    }
  return -kappa_base(P.n, P.vtot, mp, tr) / std::sqrt(double(k) * K) *
         mp.xpow(2.0 * P.vtot * P.vtot / double(k * k)) * qspecial::pairwise_sum(terms);
}

cplx rapidity_to_v(cplx beta, const ModelParams& mp) {
  return kI * double(mp.k()) / (2 * kPi) * beta - kI * kPi / (2.0 * mp.log_x());
}

cplx rewritten_q11(int a, int m, cplx beta, const ModelParams& mp, const Truncation& tr) {
  require_level(mp);
  const int k = mp.k(), K = k + 2;
  const cplx t = mp.tau(), td = -1.0 / t;
  using qspecial::theta1;
  cplx w = kI * beta / kPi + 1.0;
  cplx ed = qspecial::dedekind_eta(td, tr);
  cplx pre = std::exp(kI * kPi / (2.0 * k) * t * w * w) / double(K) * ed * ed;
  pre *= theta1(kPi * a / K, -double(k) / (t * double(K)), tr) / theta1(kPi / k, td, tr);
  pre *= f_pair(0.0, mp, tr) / f_pair(double(k) / (2 * kPi * kI) * (beta - kI * kPi), mp, tr);
  cplx base = theta1(kI * beta / 2.0 + kPi / 2, td, tr);
  std::vector<cplx> terms;
  for (int mu : {1, -1})
    for (int nu : {1, -1}) {
      cplx wt = double(mu * nu) * theta1(kI * beta / 2.0 + kPi / (2.0 * k) * (mu + nu) + kPi / 2, td, tr) / base;
      for (int lp = 0; lp <= k; ++lp)
        for (int mq = 0; mq < k; ++mq) {
          if ((lp - mq) % 2) continue;
          lhp::Apex ap = lhp::centred_apex(k, mq, lp, 0.0, 0.0, td);
          cplx y1 = double(mu - nu) / (2.0 * k);
          cplx y2 = -kI * beta / (kPi * k) - double(mu + nu) / (2.0 * k);
          cplx g = lhp::gamma_region(k, mq, lp, y1, y2, td, ap, tr) / (ed * ed);
          terms.push_back(wt * 2.0 * std::sin(kPi * a * (lp + 1) / K) *
                          std::exp(-kI * kPi * double(m * mq) / double(k)) * g);
        }
    }
  return pre * qspecial::pairwise_sum(terms);
}

double ModularReport::max() const {
  return std::max({residual, folded_residual, has_rewritten ? rewritten_residual : 0.0});
}

ModularReport modular_check(const TraceRequest& req, const ModelParams& mp, const Truncation& tr) {
  require_level(mp);
  const int k = mp.k(), K = k + 2;
  const int l = req.a - 1, m = req.m;
  Prepared P = prepare(req.v, req.vp, mp, tr);
  const cplx t = mp.tau();
  lhp::Apex ap = trace_apex(req.a, m, P.vtot, mp);
  cplx e = qspecial::eta(mp, tr);
  std::vector<cplx> L, R, Rf;
  for (int mu = -P.n; mu <= P.n; mu += 2)
    for (int nu = -P.n; nu <= P.n; nu += 2) {
      cplx c = P.at(mu, nu);
      if (c == cplx(0.0)) continue;
      c *= kappa_pow(mu, nu, P.vtot, mp);
      cplx y1, y2;
      trace_y(mu, nu, P.vtot, mp, y1, y2);
      L.push_back(c * lhp::gamma_region(k, m, l, y1, y2, t, ap, tr) / (e * e));
      cplx gauss = std::exp(-kI * kPi / (2.0 * t) * (double(K) * y1 * y1 - double(k) * y2 * y2));
      std::vector<cplx> s, sf;
      for (int lp = 0; lp <= k; ++lp)
        for (int mq = -k; mq < k; ++mq) {
          if ((lp - mq) % 2) continue;
          cplx g = std::sin(kPi * (l + 1) * (lp + 1) / K) *
                   std::exp(-kI * kPi * double(m * mq) / double(k)) * gamma_dual(mq, lp, y1, y2, mp, tr);
          s.push_back(g);
          if (mq >= 0) sf.push_back(2.0 * g);
        }
      R.push_back(c * gauss * qspecial::pairwise_sum(s));
      Rf.push_back(c * gauss * qspecial::pairwise_sum(sf));
    }
  ModularReport rep;
  const double norm = 1.0 / std::sqrt(double(k) * K);
  rep.lhs = qspecial::pairwise_sum(L);
  rep.rhs = norm * qspecial::pairwise_sum(R);
  rep.rhs_folded = norm * qspecial::pairwise_sum(Rf);
  double scale = std::max(std::abs(rep.lhs), 1e-300);
  rep.residual = std::abs(rep.lhs - rep.rhs) / scale;
  rep.folded_residual = std::abs(rep.rhs - rep.rhs_folded) / scale;
  if (P.n == 1 && (req.a - req.m) % 2 != 0) {
    rep.has_rewritten = true;
    rep.direct = trace_from(P, req.a, m, nullptr, mp, tr);
    cplx beta = -kI * (2 * kPi / k) * (req.v[0] - req.vp[0]);
    rep.rewritten = rewritten_q11(req.a, m, beta, mp, tr);
    rep.rewritten_residual =
        std::abs(rep.direct - rep.rewritten) / std::max(std::abs(rep.direct), 1e-300);
  }
  return rep;
}

}  // namespace abf::lattice_ff
