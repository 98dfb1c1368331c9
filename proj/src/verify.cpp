#include "abf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "abf/continuum_ff.hpp"
#include "abf/lattice_ff.hpp"
#include "abf/lhp.hpp"
#include "abf/weights.hpp"

namespace abf::verify {

bool Check::pass() const { return exact ? residual == 0.0 : residual < threshold; }

bool Suite::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

const Check* Suite::worst() const {
  const Check* w = nullptr;
  double best = -1.0;
  for (auto& c : checks) {
    double score = c.exact ? (c.residual == 0.0 ? 0.0 : INFINITY)
                           : (std::isnan(c.residual) ? INFINITY : c.residual / c.threshold);
    if (score > best) best = score, w = &c;
  }
  return w;
}

void Suite::add(std::string n, double r, double t) { checks.push_back({std::move(n), r, t, false}); }
void Suite::add_exact(std::string n, double r) { checks.push_back({std::move(n), r, 0.0, true}); }

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

std::string tag(int k, double x) { return "k=" + std::to_string(k) + fmt(" x=%g", x); }

template <class F>
Suite timed(std::string name, F&& body) {
  Suite s;
  s.name = std::move(name);
  auto t0 = Clock::now();
  body(s);
  s.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return s;
}

double rel(cplx a, cplx b, double scale) { return std::abs(a - b) / scale; }

cplx rand_c(std::mt19937_64& g, double re, double im) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  return {re * U(g), im * U(g)};
}

}  // namespace

Suite weights_suite(const std::vector<int>& ks, const std::vector<double>& xs, int n_u,
                    std::uint64_t seed, const Truncation& tr) {
  return timed("weights", [&](Suite& s) {
    std::mt19937_64 g(seed);
    for (int k : ks)
      for (double x : xs) {
        ModelParams mp(k, x);
        std::uniform_real_distribution<double> U(-0.5 * k, 0.0);
        std::vector<double> us(n_u);
        for (auto& u : us) u = U(g);
        auto r = weights::verify_relations(mp, us, tr);
        auto t = tag(k, x);
        s.add("unitarity " + t, r.unitarity, 1e-10);
        s.add("second inversion " + t, r.second_inversion, 1e-10);
        s.add("YBE " + t, r.ybe, 1e-10);
        s.add("rho(u)rho(-u)=1 " + t, r.rho_inverse, 1e-10);
        s.add("rho crossing " + t, r.rho_crossing, 1e-10);
      }
  });
}

Suite lhp_suite(const std::vector<int>& ks, const std::vector<double>& xs, const Truncation& tr) {
  return timed("lhp", [&](Suite& s) {
    for (int k : ks)
      for (double x : xs) {
        ModelParams mp(k, x);
        auto P = [&](int a, int m) { return lhp::one_point_lhp(a, m, mp, tr); };
        auto P2 = [&](int b, int a, int m) {
          if (a < 1) return 0.0;
          return lhp::two_point_lhp(b, a, m, mp, tr);
        };
        double sum = 0, sym = 0, par = 0, neg = 0, row = 0, col = 0, bnd = 0, top = 0;
        for (int m = -k; m <= k; ++m) {
          double t = 0;
          for (int a = 1; a <= k + 1; ++a) {
            double p = P(a, m);
            t += p;
            sym = std::max(sym, std::abs(P(a, -m) - p));
            if ((a - m) % 2 == 0) par = std::max(par, std::abs(p));
            neg = std::max(neg, -p);
            row = std::max(row, std::abs(P2(a - 1, a, m) + P2(a + 1, a, m) - p));
            col = std::max(col, std::abs(P2(a, a - 1, m) + P2(a, a + 1, m) - P(a, m + 1)));
          }
          sum = std::max(sum, std::abs(t - 1.0));
          bnd = std::max({bnd, std::abs(P2(2, 1, m) - P(1, m)), std::abs(P2(1, 2, m) - P(1, m + 1))});
          top = std::max({top, std::abs(P2(k + 2, k + 1, m)), std::abs(P2(k + 1, k + 2, m))});
        }
        auto t = tag(k, x);
        s.add("sum_a P_a(m) = 1 " + t, sum, 1e-8);
        s.add("P_a(-m) = P_a(m) " + t, sym, 1e-10);
        s.add_exact("parity zeros " + t, par);
        s.add_exact("positivity " + t, std::max(neg, 0.0));
        s.add("row rule " + t, row, 1e-10);
        s.add("column rule " + t, col, 1e-10);
        s.add("P_{2,1}, P_{1,2} boundary " + t, bnd, 1e-10);
        s.add("P_{k+2,k+1} = P_{k+1,k+2} = 0 " + t, top, 1e-12);
      }
  });
}

Suite partition_suite(const std::vector<int>& ks, const std::vector<double>& xs,
                      const Truncation& tr) {
  return timed("partition function", [&](Suite& s) {
    for (int k : ks)
      for (double x : xs) {
        auto z = lhp::partition_fn(ModelParams(k, x), tr);
        s.add("Z sum form = closed form " + tag(k, x),
              std::abs(z.difference()) / std::abs(z.closed_form), 1e-10);
      }
  });
}

Suite gamma_suite(int k, double x, const Truncation& tr) {
  return timed("gamma", [&](Suite& s) {
    ModelParams mp(k, x);
    const cplx t = mp.tau();
    auto G = [&](double h, double hp, cplx y1, cplx y2, int m, int l) {
      return lhp::gamma_sector({h, hp, y1, y2, t}, {m, l}, mp, tr);
    };
    const cplx y1s[] = {0.0, 0.1, {-0.07, 0.05}};
    const cplx y2s[] = {0.0, 0.08, {0.05, -0.04}};
    const double offs[][2] = {{0.0, 0.0}, {0.5, 0.3}};
    double s1 = 0, s2 = 0, par = 0, et = 0;
    for (int l = 0; l <= k; ++l)
      for (int m = -k; m <= k; ++m) {
        if ((l - m) % 2 != 0) {
          par = std::max(par, std::abs(G(0, 0, 0.1, 0.08, m, l)));
          continue;
        }
        for (cplx y1 : y1s)
          for (cplx y2 : y2s)
            for (auto& o : offs) {
              auto c1 = lhp::centred_apex(k, m + 2 * k, l, y1, y2, t);
              double h = c1.H + o[0], hp = c1.Hp + o[1];
              cplx a = G(h, hp, y1, y2, m + 2 * k, l);
              s1 = std::max(s1, rel(a, G(h + 1, hp - 1, y1, y2, m, l), std::abs(a)));

              auto c2 = lhp::centred_apex(k, m + k, k - l, -y1, y2, t);
              h = c2.H + o[0], hp = c2.Hp + o[1];
              double e = (h == std::floor(h)) ? -1.0 : 0.0;
              double ep = (hp == std::floor(hp)) ? 0.0 : 1.0;
              cplx b = G(h, hp, -y1, y2, m + k, k - l);
              s2 = std::max(s2, rel(b, G(-hp + ep, -h + e, y1, y2, m, l), std::abs(b)));
            }
        auto c0 = lhp::centred_apex(k, m, l, 0.0, 0.0, t);
        if ((c0.H == 0 && c0.Hp == 0) || (l == 2 && m == 0)) {
          cplx g0 = G(0, 0, 0.0, 0.0, m, l);
          cplx ref = qspecial::dedekind_eta(t, tr) * lhp::string_fn(l, m, mp, tr);
          et = std::max(et, rel(g0, ref, std::abs(ref)));
        }
      }
    auto tg = tag(k, x);
    s.add("Gamsym1 " + tg, s1, 1e-10);
    s.add("Gamsym2 " + tg, s2, 1e-10);
    s.add_exact("Gamma parity zero " + tg, par);
    s.add("Gamma^(0,0)(0,0) = eta * string_fn " + tg, et, 1e-10);

    if (k < 3) return;
    // (h,h') independence of the assembled trace sum. Sectors whose zero-mode
    // terms cancel by more than 1e4 relative to the result are reported only.
    const std::vector<cplx> v1{{0.3, 0.2}, {-0.2, 0.1}}, w1{{0.1, -0.15}, {0.25, 0.05}};
    for (int n = 1; n <= 2; ++n) {
      double worst = 0.0, max_cond = 0.0, max_ratio = 0.0;
      int asserted = 0, skipped = 0;
      for (int a = 1; a <= k + 1; ++a)
        for (int m = -k; m <= k; ++m) {
          if ((a - m) % 2 == 0) continue;
          lattice_ff::TraceRequest r{a, m, {v1.begin(), v1.begin() + n}, {w1.begin(), w1.begin() + n}};
          cplx ref = lattice_ff::q_trace(r, mp, tr);
          double err = 0.0, cond = 0.0;
          for (auto [h, hp] : {std::pair{0.0, 0.0}, std::pair{0.5, 0.3}, std::pair{1.0, -1.0}}) {
            lhp::Apex ap{long(std::floor(h)), long(std::floor(hp))};
            double c = 0.0;
            cplx q = lattice_ff::q_trace_at(r, ap, mp, tr, &c);
            err = std::max(err, rel(q, ref, std::abs(ref)));
            cond = std::max(cond, c * std::abs(q) / std::abs(ref));
          }
          if (cond <= 1e4) {
            worst = std::max(worst, err);
            ++asserted;
          } else {
            ++skipped;
            max_cond = std::max(max_cond, cond);
            max_ratio = std::max(max_ratio, err / (cond * std::numeric_limits<double>::epsilon()));
          }
        }
      if (skipped) {
        char b[200];
        std::snprintf(b, sizeof b,
                      "h-independence n=%d %s: %d sectors not asserted (cancellation up to %.1e); "
                      "their differences stay within %.0f x cancellation x machine eps",
                      n, tg.c_str(), skipped, max_cond, max_ratio);
        s.notes.push_back(b);
      }
      s.add("(h,h') independence n=" + std::to_string(n) + " " + tg + " (" +
                std::to_string(asserted) + " sectors)",
            asserted ? worst : NAN, 1e-10);
    }
  });
}

Suite fpoly_suite(const std::vector<int>& ks, double x, int n_max, std::uint64_t seed,
                  const Truncation& tr) {
  return timed("f polynomials", [&](Suite& s) {
    std::mt19937_64 g(seed);
    for (int k : ks) {
      ModelParams mp(k, x);
      const cplx tau = mp.tau();
      for (int n = 1; n <= n_max; ++n) {
        std::vector<cplx> u(n), v(n);
        for (auto& z : u) z = rand_c(g, 1.0, 0.5);
        for (auto& z : v) z = rand_c(g, 1.0, 0.5);
        double scale = 0.0;
        for (int mu = -n; mu <= n; mu += 2)
          for (int nu = -n; nu <= n; nu += 2)
            scale = std::max(scale, std::abs(lattice_ff::f_poly(mu, nu, u, v, mp, tr)));
        double sym = 0, swap = 0, per = 0, qper = 0, rec = 0;
        cplx sv = 0.0;
        for (auto z : v) sv += z;
        for (int mu = -n; mu <= n; mu += 2)
          for (int nu = -n; nu <= n; nu += 2) {
            cplx f = lattice_ff::f_poly(mu, nu, u, v, mp, tr);
            sym = std::max(sym, rel(f, lattice_ff::f_poly(nu, mu, u, v, mp, tr), scale));
            swap = std::max(swap, rel(f, lattice_ff::f_poly(nu, mu, v, u, mp, tr), scale));
            auto u2 = u;
            u2[0] += double(k);
            per = std::max(per, rel(lattice_ff::f_poly(mu, nu, u2, v, mp, tr),
                                    (n % 2 ? -1.0 : 1.0) * f, scale));
            auto u3 = u;
            u3[0] += double(k) / tau;
            cplx fac = std::pow(-std::exp(kI * kPi / tau), double(n)) *
                       std::exp(2.0 * kPi * kI / double(k) * (double(n) * u[0] + sv + (mu + nu) / 2.0));
            qper = std::max(qper, rel(lattice_ff::f_poly(mu, nu, u3, v, mp, tr), fac * f,
                                      std::abs(fac) * scale));
            if (n >= 2) {
              cplx w = u[n - 1];
              auto vv = v;
              vv[n - 1] = -w;
              std::vector<cplx> ur(u.begin(), u.end() - 1), vr(v.begin(), v.end() - 1);
              cplx lhs = lattice_ff::f_poly(mu, nu, u, vv, mp, tr), rhs = 0.0;
              for (int mn : {1, -1}) {
                cplx c = qspecial::bracket_star(double(mn), mp, tr);
                for (int i = 0; i < n - 1; ++i)
                  c *= qspecial::bracket_star(u[i] - w + double(mn), mp, tr) *
                       qspecial::bracket_star(v[i] + w + double(mn), mp, tr);
                rhs += c * lattice_ff::f_poly(mu - mn, nu - mn, ur, vr, mp, tr);
              }
              rec = std::max(rec, rel(lhs, rhs, std::max(std::abs(lhs), std::abs(rhs)) + scale));
            }
          }
        auto t = "n=" + std::to_string(n) + " " + tag(k, x);
        s.add("f_{mu,nu} = f_{nu,mu} " + t, sym, 1e-9);
        s.add("block swap " + t, swap, 1e-9);
        s.add("u1 -> u1+k " + t, per, 1e-9);
        s.add("u1 -> u1+k/tau " + t, qper, 1e-9);
        if (n >= 2) s.add("v_n = -u_n recursion " + t, rec, 1e-9);
      }
    }
  });
}

Suite trace_suite(int k, double x, std::uint64_t seed, const Truncation& tr) {
  return timed("traces", [&](Suite& s) {
    ModelParams mp(k, x);
    std::mt19937_64 g(seed);
    using lattice_ff::q_neighbor;
    using lattice_ff::q_trace;
    double red = 0, par = 0;
    for (int a = 1; a <= k + 1; ++a)
      for (int m = -k; m <= k; ++m) {
        cplx q = q_trace({a, m, {}, {}}, mp, tr);
        red = std::max(red, std::abs(q - lhp::one_point_lhp(a, m, mp, tr)));
      }
    std::vector<cplx> v{cplx(0.3, 0.2) + rand_c(g, 0.05, 0.05)};
    std::vector<cplx> vp{cplx(0.1, -0.15) + rand_c(g, 0.05, 0.05)};
    cplx u = cplx(0.2, 0.1) + rand_c(g, 0.05, 0.05);
    auto Q = [&](int a, int m) { return q_trace({a, m, v, vp}, mp, tr); };
    auto N = [&](int b, int a, int m) -> cplx {
      if (a < 1) return 0.0;
      return q_neighbor(b, a, m, u, v, vp, mp, tr);
    };
    const cplx G = lattice_ff::g_shift(u, v, vp, mp, tr);
    double scale = 0;
    for (int a = 1; a <= k + 1; ++a)
      for (int m = -k; m <= k; ++m) scale = std::max(scale, std::abs(Q(a, m)));
    double per = 0, refl = 0, q1 = 0, q2 = 0, bnd = 0;
    for (int a = 1; a <= k + 1; ++a)
      for (int m = -k; m <= k; ++m) {
        cplx q = Q(a, m);
        if ((a - m) % 2 == 0) par = std::max(par, std::abs(q));
        per = std::max(per, rel(Q(a, m + 2 * k), q, scale));
        refl = std::max(refl, rel(Q(k + 2 - a, m + k), q, scale));
        q1 = std::max(q1, rel(N(a + 1, a, m) + N(a - 1, a, m), q, scale));
        q2 = std::max(q2, rel(N(a, a - 1, m) + N(a, a + 1, m), Q(a, m + 1) * G, scale * std::abs(G)));
      }
    for (int m = -k; m <= k; ++m)
      bnd = std::max({bnd, rel(N(2, 1, m), Q(1, m), scale),
                      std::abs(N(k + 2, k + 1, m)) / scale, std::abs(N(k + 1, k + 2, m)) / scale});
    auto t = tag(k, x);
    s.add("Q^(0,0) = P " + t, red, 1e-10);
    s.add_exact("Q parity zeros n=1 " + t, par);
    s.add("Q_a(m+2k) = Q_a(m) n=1 " + t, per, 1e-9);
    s.add("Q_{k+2-a}(m+k) = Q_a(m) n=1 " + t, refl, 1e-9);
    s.add("neighbour rule Q1 n=1 " + t, q1, 1e-9);
    s.add("neighbour rule Q2 n=1 " + t, q2, 1e-9);
    s.add("Q_{2,1} = Q_1, Q_{k+2,k+1} = Q_{k+1,k+2} = 0 " + t, bnd, 1e-9);
  });
}

Suite modular_suite(int k, const std::vector<double>& xs, const Truncation& tr) {
  return timed("modular", [&](Suite& s) {
    for (double x : xs) {
      ModelParams mp(k, x);
      double res = 0, fold = 0, rw = 0;
      for (int a = 1; a <= k + 1; ++a)
        for (int m = -k + 1; m <= k; ++m) {
          if ((a - m) % 2 == 0) continue;
          auto rep = lattice_ff::modular_check({a, m, {cplx(0.3, 0.2)}, {cplx(0.1, -0.15)}}, mp, tr);
          res = std::max(res, rep.residual);
          fold = std::max(fold, rep.folded_residual);
          if (rep.has_rewritten) rw = std::max(rw, rep.rewritten_residual);
        }
      auto t = "n=1 " + tag(k, x);
      s.add("modular relation " + t, res, 1e-8);
      s.add("folded half-range sum " + t, fold, 1e-10);
      s.add("rewritten Q^(1,1) = direct " + t, rw, 1e-8);
    }
  });
}

Suite continuum_suite(const std::vector<int>& ks) {
  return timed("continuum algebra", [&](Suite& s) {
    using namespace continuum_ff;
    std::vector<double> grid;
    for (int i = -20; i <= 20; ++i) grid.push_back(0.17 * i + 0.013);
    for (int k : ks) {
      double uni = 0, cross = 0, prod = 0, mass_c = 0, w11 = 0, w1b = 0, p11 = 0, p1b = 0;
      for (int a = 1; a <= k - 1; ++a) {
        mass_c = std::max(mass_c, std::abs(mass(a, k) - mass(k - a, k)));
        for (int b = 1; b <= k - 1; ++b)
          for (double be : grid) {
            cplx S = s_matrix(a, b, be, k);
            uni = std::max(uni, std::abs(S * s_matrix(a, b, -be, k) - 1.0));
            prod = std::max(prod, std::abs(S - s_matrix_product(a, b, be, k)));
          }
      }
      for (double be : grid) {
        cplx S11 = s_matrix(1, 1, be, k), S1b = s_matrix(1, k - 1, be, k);
        cross = std::max(cross, std::abs(S1b - s_matrix(1, 1, cplx(-be, kPi), k)));
        w11 = std::max(w11, std::abs(fmin_11(be, k) / fmin_11(-be, k) - S11));
        w1b = std::max(w1b, std::abs(fmin_1bar1(be, k) / fmin_1bar1(-be, k) - S1b));
        cplx f = fmin_11(cplx(be, 2 * kPi), k), r = fmin_11(-be, k);
        p11 = std::max(p11, std::abs(f - r) / std::max(1.0, std::abs(r)));
        f = fmin_1bar1(cplx(be, 2 * kPi), k), r = fmin_1bar1(-be, k);
        p1b = std::max(p1b, std::abs(f - r) / std::max(1.0, std::abs(r)));
      }
      auto t = "k=" + std::to_string(k);
      s.add("S unitarity " + t, uni, 1e-10);
      s.add("S crossing " + t, cross, 1e-10);
      s.add("S_ab = double-product form " + t, prod, 1e-10);
      s.add("mass conjugation " + t, mass_c, 1e-12);
      s.add("Watson F11 " + t, w11, 1e-9);
      s.add("Watson F1bar1 " + t, w1b, 1e-9);
      s.add("F11 2 pi i periodicity " + t, p11, 1e-9);
      s.add("F1bar1 2 pi i periodicity " + t, p1b, 1e-9);
      s.add_exact("F1bar1(i pi) = 1 " + t, std::abs(fmin_1bar1(cplx(0.0, kPi), k) - 1.0));
    }
  });
}

namespace {

std::vector<rational> rand_q(std::mt19937_64& g, int n) {
  std::uniform_int_distribution<int> num(1, 40), den(1, 13), sg(0, 1);
  std::vector<rational> r;
  while (int(r.size()) < n) {
    rational q(num(g) * (sg(g) ? 1 : -1), den(g));
    if (std::find(r.begin(), r.end(), q) == r.end()) r.push_back(q);
  }
  return r;
}

std::vector<cplx> to_c(const std::vector<rational>& v) {
  std::vector<cplx> r;
  for (auto& q : v) r.push_back(q.convert_to<double>());
  return r;
}

// printed R^{(n,n)}_alpha for n <= 3
cplx printed_r(int n, int al, const std::vector<cplx>& x, const std::vector<cplx>& y, int k) {
  using continuum_ff::brace;
  auto s = continuum_ff::elementary_symmetric(x), t = continuum_ff::elementary_symmetric(y);
  cplx a = brace(al, k), am1 = brace(al - 1, k), am2 = brace(al - 2, k), am3 = brace(al - 3, k);
  cplx ap1 = brace(al + 1, k), ap2 = brace(al + 2, k);
  if (n == 1) return a * am1 * (s[1] + t[1]);
  if (n == 2)
    return a * am1 *
           (a * am1 * (s[1] + t[1]) * (s[2] * t[1] + s[1] * t[2]) + ap1 * am2 * (s[2] - t[2]) * (s[2] - t[2]));
  cplx S1 = s[1] + t[1], S3 = s[3] + t[3], X = s[3] * t[2] + s[2] * t[3];
  cplx D = s[3] * t[1] - s[1] * t[3], E = s[2] - t[2];
  return a * a * a * am1 * am1 * am1 * S1 * (s[3] + s[2] * t[1] + s[1] * t[2] + t[3]) * X -
         ap2 * a * a * am1 * am1 * am3 * S1 * S3 * X +
         ap1 * ap1 * a * am1 * am2 * am2 * (s[2] * t[1] + s[1] * t[2]) * S3 * S3 +
         ap1 * a * a * am1 * am1 * am2 * (S1 * D * D + E * E * X - 3.0 * S1 * S3 * X) +
         ap2 * ap1 * a * am1 * am2 * am3 * S3 * S3 * S3;
}

}  // namespace

Suite rpoly_suite(const std::vector<int>& ks, std::uint64_t seed) {
  return timed("R polynomials", [&](Suite& s) {
    using namespace continuum_ff;
    std::mt19937_64 g(seed);
    for (int k : ks) {
      auto t = "k=" + std::to_string(k);
      double num = 0, printed = 0, r1 = 0;
      double exact_neq = 0, r1_exact = 0;
      for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
          auto xq = rand_q(g, m), yq = rand_q(g, n);
          auto x = to_c(xq), y = to_c(yq);
          // some (alpha, m, n) vanish identically; scale by the largest alpha
          std::vector<cplx> d(k + 1);
          double sc = 0;
          for (int al = 2; al <= k; ++al) sc = std::max(sc, std::abs(d[al] = r_poly_direct(al, x, y, k)));
          for (int al = 2; al <= k; ++al) {
            num = std::max(num, std::abs(d[al] - r_poly_det(al, x, y, k)) / sc);
            if (!(r_poly_direct_exact(al, xq, yq, k) == r_poly_det_exact(al, xq, yq, k)))
              exact_neq = 1;
          }
        }
      for (int n = 1; n <= 4; ++n) {
        auto xq = rand_q(g, n), yq = rand_q(g, n);
        auto x = to_c(xq), y = to_c(yq);
        double sc = std::abs(r_poly_direct(2, x, y, k));
        r1 = std::max(r1, std::abs(r_poly_direct(1, x, y, k)) / sc);
        if (!r_poly_direct_exact(1, xq, yq, k).is_zero()) r1_exact = 1;
        if (n <= 3) {
          std::vector<cplx> p(k + 1);
          double psc = 0;
          for (int al = 1; al <= k; ++al) psc = std::max(psc, std::abs(p[al] = printed_r(n, al, x, y, k)));
          for (int al = 1; al <= k; ++al)
            printed = std::max(printed, std::abs(r_poly_direct(al, x, y, k) - p[al]) / psc);
        }
      }
      s.add("R det = R direct (numeric, m,n<=3) " + t, num, 1e-10);
      s.add_exact("R det = R direct (exact, m,n<=3) " + t, exact_neq);
      s.add("R_1^(n,n) = 0 (numeric, n<=4) " + t, r1, 1e-10);
      s.add_exact("R_1^(n,n) = 0 (exact, n<=4) " + t, r1_exact);
      s.add("printed R^(1,1), R^(2,2), R^(3,3) " + t, printed, 1e-10);

      // a = 3: R_2^(n,n) vanishes on both factor hypersurfaces, not identically
      double div = 0;
      for (int n = 2; n <= 3; ++n)
        for (int rep = 0; rep < 3; ++rep) {
          auto xq = rand_q(g, n), yq = rand_q(g, n - 1);
          rational sx = 0, inv = 0;
          for (auto& q : xq) sx += q, inv += 1 / q;
          for (auto& q : yq) sx += q, inv += 1 / q;
          auto y1 = yq, y2 = yq;
          y1.push_back(-sx);   // sigma_1 + tau_1 = 0
          y2.push_back(-1 / inv);  // sigma_{n-1} tau_n + sigma_n tau_{n-1} = 0
          auto yg = yq;
          yg.push_back(rational(37, 11));
          bool ok = sx != 0 && inv != 0 && r_poly_direct_exact(2, xq, y1, k).is_zero() &&
                    r_poly_direct_exact(2, xq, y2, k).is_zero() &&
                    !r_poly_direct_exact(2, xq, yg, k).is_zero();
          if (!ok) div = 1;
        }
      s.add_exact("a=3 stress-tensor factor n=2,3 (exact) " + t, div);
    }
  });
}

Suite dual_path_suite(const std::vector<int>& ks, int n_sets, std::uint64_t seed) {
  return timed("dual path", [&](Suite& s) {
    using namespace continuum_ff;
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int k : ks)
      for (int n = 1; n <= 2; ++n) {
        double worst = 0, zero = 0;
        for (int i = 0; i < n_sets; ++i) {
          std::vector<cplx> b(n), bp(n);
          for (auto& z : b) z = U(g);
          for (auto& z : bp) z = U(g);
          for (int a = 3; a <= k + 1; a += 2) {
            cplx w = continuum_ff_wick(a, b, bp, k), c = continuum_ff_closed(a, b, bp, k);
            worst = std::max(worst, std::abs(w - c) / std::abs(c));
          }
          double sc = std::abs(continuum_ff_closed(3, b, bp, k));
          zero = std::max({zero, std::abs(continuum_ff_wick(1, b, bp, k)) / sc,
                           std::abs(continuum_ff_closed(1, b, bp, k)) / sc});
        }
        auto t = "n=" + std::to_string(n) + " k=" + std::to_string(k);
        s.add("Wick = closed form " + t, worst, 1e-10);
        s.add("a=1 vanishes " + t, zero, 1e-10);
      }
  });
}

Suite scaling_suite(int k, int a, double beta, const std::vector<double>& xs,
                    const Truncation& tr) {
  return timed("scaling limit", [&](Suite& s) {
    auto tab = continuum_ff::scaling_compare(a, {beta}, {0.0}, k, xs, tr);
    for (auto& r : tab.rows) {
      char b[200];
      std::snprintf(b, sizeof b, "x=%.2f rel.err %.3e  F-ratio errs %.3e %.3e", r.x, r.rel_err,
                    r.ratio_1bar1_err, r.ratio_11_err);
      s.notes.push_back(b);
    }
    auto t = "k=" + std::to_string(k) + " a=" + std::to_string(a);
    s.add_exact("relative error decreases monotonically " + t, tab.monotone ? 0.0 : 1.0);
    s.add("final relative error " + t, tab.rows.empty() ? NAN : tab.rows.back().rel_err, 5e-2);
    s.add_exact("F-ratio limits converge monotonically " + t, tab.ratios_monotone ? 0.0 : 1.0);
  });
}

std::vector<Suite> full_suite(int k, double x, const Truncation& tr) {
  std::vector<Suite> r;
  r.push_back(weights_suite({k}, {x}, 30, 1, tr));
  r.push_back(lhp_suite({k}, {x}, tr));
  r.push_back(partition_suite({k}, {x}, tr));
  r.push_back(gamma_suite(k, x, tr));
  if (k >= 3) {
    r.push_back(fpoly_suite({k}, x, 3, 2, tr));
    r.push_back(trace_suite(k, x, 3, tr));
    r.push_back(modular_suite(k, {x}, tr));
    r.push_back(continuum_suite({k}));
    r.push_back(rpoly_suite({k}, 4));
    r.push_back(dual_path_suite({k}, 5, 5));
  }
  return r;
}

}  // namespace abf::verify
