#pragma once
// Z_k scaling theory: masses, S-matrices, minimal form factors, the
// R-polynomials and the Zamolodchikov-Faddeev contraction calculus.

#include <vector>

#include "abf/cyclo.hpp"
#include "abf/qspecial.hpp"

namespace abf::continuum_ff {

double mass(int a, int k, double M = 1.0);

// f_A(beta) = sinh(beta/2 + i pi A/2k) / sinh(beta/2 - i pi A/2k)
cplx f_block(int A, cplx beta, int k);
cplx s_matrix(int a, int b, cplx beta, int k);
// the same amplitude as a double product over fused constituents
cplx s_matrix_product(int a, int b, cplx beta, int k);

cplx fmin_11(cplx beta, int k);
cplx fmin_1bar1(cplx beta, int k);

// sigma_0 .. sigma_n of prod (t + x_j) = sum t^{n-r} sigma_r
std::vector<cplx> elementary_symmetric(const std::vector<cplx>& values);
std::vector<rational> elementary_symmetric(const std::vector<rational>& values);

// {l} = omega^l - omega^{-l}
cplx brace(long l, int k);

struct Partition {
  std::vector<int> parts;  // weakly decreasing, trailing zeros allowed
  std::vector<int> conjugate(int length) const;
  // (m - lambda'_n, ..., m - lambda'_1) for lambda in Lambda(m, n)
  Partition tilde_conjugate(int m, int n) const;
  bool operator==(const Partition&) const = default;
};

// partitions with m parts (zeros allowed), each <= n, in decreasing lexicographic order
std::vector<Partition> partitions_in_box(int m, int n);

cplx r_poly_direct(int alpha, const std::vector<cplx>& x, const std::vector<cplx>& y, int k);
cplx r_poly_det(int alpha, const std::vector<cplx>& x, const std::vector<cplx>& y, int k);
Cyclo r_poly_direct_exact(int alpha, const std::vector<rational>& x,
                          const std::vector<rational>& y, int k);
Cyclo r_poly_det_exact(int alpha, const std::vector<rational>& x, const std::vector<rational>& y,
                       int k);

// det( {A - l'_i + i - 2j}/{A - i} sigma_{l'_i - i + j} ), 1 <= i,j <= N;
// N = 0 means the length of lambda'.
cplx schur_like(const Partition& lambda, const std::vector<cplx>& values, int A, int k, int N = 0);

enum class Species { one, bar };

cplx zf_contraction(Species s1, int mu, Species s2, int nu, cplx beta, int k);

cplx continuum_ff_wick(int a, const std::vector<cplx>& beta, const std::vector<cplx>& betap,
                       int k);
cplx continuum_ff_closed(int a, const std::vector<cplx>& beta, const std::vector<cplx>& betap,
                         int k);

struct ScalingRow {
  double x;
  cplx lattice, closed;
  double rel_err;
  cplx ratio_1bar1, ratio_11;  // F-ratio limits and their continuum targets
  double ratio_1bar1_err, ratio_11_err;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  bool monotone = false;
  bool ratios_monotone = false;
};

ScalingTable scaling_compare(int a, const std::vector<cplx>& beta, const std::vector<cplx>& betap,
                             int k, const std::vector<double>& xs, const Truncation& tr = {});

}  // namespace abf::continuum_ff
