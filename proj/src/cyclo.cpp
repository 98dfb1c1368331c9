#include "abf/cyclo.hpp"

#include <cmath>
#include <stdexcept>

namespace abf {

namespace {

using Poly = std::vector<rational>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// exact division of monic-divisor polynomials
Poly divide(Poly a, const Poly& b) {
  trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, rational(0));
  for (long i = long(a.size()) - long(b.size()); i >= 0; --i) {
    rational c = a[i + b.size() - 1] / b.back();
    q[i] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  return q;
}

Poly cyclotomic(int n) {
  Poly p(n + 1, rational(0));
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide(p, cyclotomic(d));
  trim(p);
  return p;
}

}  // namespace

CycloField::CycloField(int k) : k_(k) {
  if (k < 1) throw std::domain_error("CycloField: k must be positive");
  phi_ = cyclotomic(2 * k);
}

Cyclo::Cyclo(std::shared_ptr<const CycloField> f, rational r) : f_(std::move(f)) {
  c_.assign(f_->degree(), rational(0));
  c_[0] = r;
}

void Cyclo::reduce(Poly p) {
  const Poly& phi = f_->modulus();
  const std::size_t d = f_->degree();
  for (long i = long(p.size()) - 1; i >= long(d); --i) {
    rational c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= c * phi[j];
  }
  p.resize(d, rational(0));
  c_ = std::move(p);
}

Cyclo Cyclo::omega_pow(std::shared_ptr<const CycloField> f, long p) {
  const long n = 2L * f->k();
  p = ((p % n) + n) % n;
  Cyclo r(f);
  Poly q(p + 1, rational(0));
  q[p] = 1;
  r.reduce(std::move(q));
  return r;
}

Cyclo Cyclo::brace(std::shared_ptr<const CycloField> f, long l) {
  return omega_pow(f, l) - omega_pow(f, -l);
}

bool Cyclo::is_zero() const {
  for (auto& c : c_)
    if (c != 0) return false;
  return true;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  Poly p(c_.size() + o.c_.size(), rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) p[i + j] += c_[i] * o.c_[j];
  }
  reduce(std::move(p));
  return *this;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

bool operator==(const Cyclo& a, const Cyclo& b) { return a.c_ == b.c_; }

// Solve (a * b) = 1 for b: column j of the matrix is a * omega^j.
Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclo: division by zero");
  const int d = f_->degree();
  std::vector<Poly> M(d, Poly(d + 1, rational(0)));
  for (int j = 0; j < d; ++j) {
    Cyclo col = *this * omega_pow(f_, j);
    for (int i = 0; i < d; ++i) M[i][j] = col.c_[i];
  }
  M[0][d] = 1;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    while (piv < d && M[piv][c] == 0) ++piv;
    if (piv == d) throw std::domain_error("Cyclo: singular element");
    std::swap(M[piv], M[c]);
    for (int r = 0; r < d; ++r) {
      if (r == c || M[r][c] == 0) continue;
      rational f = M[r][c] / M[c][c];
      for (int j = c; j <= d; ++j) M[r][j] -= f * M[c][j];
    }
  }
  Cyclo r(f_);
  for (int i = 0; i < d; ++i) r.c_[i] = M[i][d] / M[i][i];
  return r;
}

std::complex<double> Cyclo::to_complex() const {
  const double pi = 3.14159265358979323846;
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i)
    s += c_[i].convert_to<double>() * std::polar(1.0, pi * double(i) / f_->k());
  return s;
}

}  // namespace abf
