#pragma once
// Exact arithmetic in Q(omega), omega = exp(i pi/k), reduced modulo the
// cyclotomic polynomial Phi_{2k}.

#include <complex>
#include <memory>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace abf {

using rational = boost::multiprecision::cpp_rational;

class CycloField {
 public:
  explicit CycloField(int k);
  int k() const { return k_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  // monic Phi_{2k}, lowest coefficient first
  const std::vector<rational>& modulus() const { return phi_; }

 private:
  int k_;
  std::vector<rational> phi_;
};

class Cyclo {
 public:
  Cyclo() = default;
  Cyclo(std::shared_ptr<const CycloField> f, rational r = 0);

  static Cyclo omega_pow(std::shared_ptr<const CycloField> f, long p);
  // {l} = omega^l - omega^{-l}
  static Cyclo brace(std::shared_ptr<const CycloField> f, long l);

  const std::shared_ptr<const CycloField>& field() const { return f_; }
  const std::vector<rational>& coeffs() const { return c_; }
  bool is_zero() const;
  Cyclo inverse() const;
  std::complex<double> to_complex() const;

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o) { return *this *= o.inverse(); }
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  Cyclo operator-() const;
  friend bool operator==(const Cyclo& a, const Cyclo& b);

 private:
  void reduce(std::vector<rational> p);
  std::shared_ptr<const CycloField> f_;
  std::vector<rational> c_;
};

}  // namespace abf
