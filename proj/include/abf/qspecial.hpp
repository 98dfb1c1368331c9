#pragma once
// q-series primitives for the ABF model in regime II.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace abf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised when a denominator factor of an infinite product (or a bracket in a
// ratio) vanishes; `where` is the offending argument.
struct pole_error : std::runtime_error {
  cplx where;
  pole_error(const std::string& what, cplx at)
      : std::runtime_error(what), where(at) {}
};

struct Truncation {
  double eps = 1e-14;
  int max_terms = 4096;
};

Truncation default_truncation();  // honours ABF_EPS / ABF_MAX_TERMS

class ModelParams {
 public:
  ModelParams(int k, double x);

  int k() const { return k_; }
  double x() const { return x_; }
  int r() const { return k_ + 2; }
  double log_x() const { return lx_; }
  cplx tau() const { return tau_; }
  double p() const { return p_; }
  cplx omega() const { return omega_; }
  double central_charge() const { return 2.0 * (k_ - 1) / (k_ + 2); }
  double dim(int l) const { return ((l + 1.0) * (l + 1.0) - 1.0) / (4.0 * (k_ + 2)); }

  // x^w on the real branch of log x
  cplx xpow(cplx w) const { return std::exp(w * lx_); }
  double xpow(double w) const { return std::exp(w * lx_); }

 private:
  int k_;
  double x_, lx_, p_;
  cplx tau_, omega_;
};

namespace qspecial {

cplx qpoch(cplx z, std::span<const double> bases, const Truncation& tr = {});
cplx qpoch(cplx z, std::initializer_list<double> bases, const Truncation& tr = {});

// Same product, plus the smallest |factor| encountered.
cplx qpoch_guarded(cplx z, std::span<const double> bases, const Truncation& tr,
                   double& min_factor);

cplx theta_p(cplx z, double p, const Truncation& tr = {});

cplx bracket(cplx u, const ModelParams& mp, const Truncation& tr = {});
cplx bracket_star(cplx u, const ModelParams& mp, const Truncation& tr = {});

// theta_1(u; t) = 2 sum_{n>=1} (-1)^{n-1} e^{i pi t (n-1/2)^2} sin((2n-1)u)
cplx theta1(cplx u, cplx t, const Truncation& tr = {});

cplx dedekind_eta(cplx t, const Truncation& tr = {});
// eta at the model's own tau, from the product form
cplx eta(const ModelParams& mp, const Truncation& tr = {});

cplx f_pair(cplx v, const ModelParams& mp, const Truncation& tr = {});

struct Constants {
  double g, g_star, C, C1;
};
Constants constants(const ModelParams& mp, const Truncation& tr = {});

// Pairwise summation, fixed tree order.
cplx pairwise_sum(std::span<const cplx> v);

}  // namespace qspecial
}  // namespace abf
