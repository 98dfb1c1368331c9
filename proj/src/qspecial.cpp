#include "abf/qspecial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace abf {

ModelParams::ModelParams(int k, double x) : k_(k), x_(x) {
  if (k < 2) throw domain_error("level k must be an integer >= 2");
  if (!(x > 0.0 && x < 1.0)) throw domain_error("x must lie in (0,1)");
  lx_ = std::log(x);
  tau_ = cplx(0.0, -k * lx_ / kPi);
  p_ = std::exp(kPi * kPi / ((k + 2) * lx_));
  omega_ = std::polar(1.0, kPi / k);
}

Truncation default_truncation() {
  Truncation t;
  if (const char* e = std::getenv("ABF_EPS")) {
    double v = std::strtod(e, nullptr);
    if (v > 0) t.eps = v;
  }
  if (const char* e = std::getenv("ABF_MAX_TERMS")) {
    long v = std::strtol(e, nullptr, 10);
    if (v >= 1) t.max_terms = static_cast<int>(v);
  }
  return t;
}

namespace qspecial {

namespace {

// Product over the last bases for argument z; `scale` is the tail factor
// 1/prod(1-p_i) of the remaining bases, used for the stopping rule.
cplx qpoch_rec(cplx z, std::span<const double> b, const Truncation& tr,
               double& min_factor) {
  if (b.empty()) {
    cplx f = 1.0 - z;
    min_factor = std::min(min_factor, std::abs(f));
    return f;
  }
  double p = b[0];
  auto rest = b.subspan(1);
  double tail = 1.0 / (1.0 - p);
  for (double q : rest) tail /= (1.0 - q);
  cplx prod = 1.0;
  double pw = 1.0;
  for (int l = 0; l < tr.max_terms; ++l) {
    double mag = std::abs(z) * pw;
    // remaining factors contribute 1 + O(mag * tail)
    if (mag * tail < tr.eps * 1e-2 && l > 0) break;
    prod *= qpoch_rec(z * pw, rest, tr, min_factor);
    pw *= p;
  }
  return prod;
}

}  // namespace

cplx qpoch_guarded(cplx z, std::span<const double> bases, const Truncation& tr,
                   double& min_factor) {
  for (double p : bases)
    if (!(p > 0.0 && p < 1.0)) throw domain_error("qpoch: every base must lie in (0,1)");
  if (z == cplx(0.0)) return 1.0;
  return qpoch_rec(z, bases, tr, min_factor);
}

cplx qpoch(cplx z, std::span<const double> bases, const Truncation& tr) {
  double mf = std::numeric_limits<double>::infinity();
  return qpoch_guarded(z, bases, tr, mf);
}

cplx qpoch(cplx z, std::initializer_list<double> bases, const Truncation& tr) {
  std::vector<double> b(bases);
  return qpoch(z, std::span<const double>(b), tr);
}

cplx theta_p(cplx z, double p, const Truncation& tr) {
  if (z == cplx(0.0)) throw domain_error("theta_p: z = 0");
  return qpoch(z, {p}, tr) * qpoch(p / z, {p}, tr) * qpoch(cplx(p), {p}, tr);
}

cplx bracket(cplx u, const ModelParams& mp, const Truncation& tr) {
  const int r = mp.k() + 2;
  return mp.xpow(u * u / double(r) - u) * theta_p(mp.xpow(2.0 * u), mp.xpow(2.0 * r), tr);
}

cplx bracket_star(cplx u, const ModelParams& mp, const Truncation& tr) {
  const int k = mp.k();
  return mp.xpow(u * u / double(k) - u) * theta_p(mp.xpow(2.0 * u), mp.xpow(2.0 * k), tr);
}

cplx pairwise_sum(std::span<const cplx> v) {
  if (v.empty()) return 0.0;
  if (v.size() <= 8) {
    cplx s = 0.0;
    for (auto& t : v) s += t;
    return s;
  }
  auto h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

cplx theta1(cplx u, cplx t, const Truncation& tr) {
  if (!(t.imag() > 0.0)) throw domain_error("theta1: Im(modular argument) must be positive");
  std::vector<cplx> terms;
  double grow = std::abs(u.imag());
  double peak = 0.0;
  for (int n = 1; n <= tr.max_terms; ++n) {
    double h = n - 0.5;
    cplx g = std::exp(kI * kPi * t * h * h);
    double bound = std::abs(g) * std::exp((2 * n - 1) * grow);
    cplx term = ((n % 2) ? 1.0 : -1.0) * g * std::sin(double(2 * n - 1) * u);
    terms.push_back(term);
    peak = std::max(peak, bound);
    // Gaussian decay beats the sin growth once the bound starts to fall
    double next = std::exp(-kPi * t.imag() * (2 * n) + 2 * grow);
    if (bound < tr.eps * 1e-3 * peak && next < 1.0) break;
  }
  return 2.0 * pairwise_sum(terms);
}

cplx dedekind_eta(cplx t, const Truncation& tr) {
  if (!(t.imag() > 0.0)) throw domain_error("dedekind_eta: Im(modular argument) must be positive");
  cplx q = std::exp(2.0 * kI * kPi * t);
  // (q;q) with complex q: direct product
  cplx prod = 1.0, pw = q;
  for (int n = 1; n <= tr.max_terms; ++n) {
    prod *= (1.0 - pw);
    if (std::abs(pw) < tr.eps * 1e-2) break;
    pw *= q;
  }
  return std::exp(2.0 * kI * kPi * t / 24.0) * prod;
}

cplx eta(const ModelParams& mp, const Truncation& tr) {
  double q = mp.xpow(2.0 * mp.k());
  return std::pow(q, 1.0 / 24.0) * qpoch(cplx(q), {q}, tr);
}

cplx f_pair(cplx v, const ModelParams& mp, const Truncation& tr) {
  const int k = mp.k();
  const double b = mp.xpow(2.0 * k);
  const double bb[2] = {b, b};
  std::span<const double> bs(bb, 2);
  double mf = std::numeric_limits<double>::infinity();
  cplx den = qpoch_guarded(mp.xpow(2.0 * (k - 1.0 + v)), bs, tr, mf) *
             qpoch_guarded(mp.xpow(2.0 * (k - 1.0 - v)), bs, tr, mf);
  if (mf < tr.eps) throw pole_error("f_pair: denominator factor vanishes", v);
  double unused = std::numeric_limits<double>::infinity();
  cplx num = qpoch_guarded(mp.xpow(2.0 * (k + 1.0 + v)), bs, tr, unused) *
             qpoch_guarded(mp.xpow(2.0 * (k + 1.0 - v)), bs, tr, unused);
  return num / den;
}

Constants constants(const ModelParams& mp, const Truncation& tr) {
  const int k = mp.k();
  const double x = mp.x();
  auto X = [&](double w) { return mp.xpow(w); };
  Constants c{};
  const double b2k = X(2.0 * k), b2k4 = X(2.0 * k + 4);
  {
    double bb[2] = {b2k, b2k4};
    std::span<const double> s(bb, 2);
    cplx num = qpoch(X(2.0 * k + 2), s, tr) * qpoch(X(4.0 * k + 2), s, tr);
    cplx den = qpoch(X(2.0 * k), s, tr) * qpoch(X(4.0 * k + 4), s, tr);
    cplx a = qpoch(X(2.0 * k + 2), {b2k4}, tr);
    cplx val = (x - 1.0 / x) * X(-1.0 / (k + 2)) * num / den * a * a *
               qpoch(cplx(b2k4), {b2k4}, tr);
    c.g = val.real();
  }
  c.g_star = (kPi / (k * mp.log_x()) * qpoch(X(2.0 * k - 2), {b2k}, tr) /
              qpoch(X(2.0), {b2k}, tr)).real();
  {
    double bb[2] = {b2k, b2k};
    std::span<const double> s(bb, 2);
    cplx v = qpoch(cplx(b2k), {b2k}, tr) * qpoch(X(2.0 + 4.0 * k), s, tr) /
             qpoch(X(2.0 * k - 2), s, tr);
    c.C = v.real();
  }
  c.C1 = 1.0 / std::sqrt(2.0 * std::sin(kPi / k));
  return c;
}

}  // namespace qspecial
}  // namespace abf
