#pragma once
// Lattice form factors as Fock-space traces: contractions, the Wick rule,
// Q_a^{(n,n)}(m), neighbouring-height traces and the Fourier transform.

#include <vector>

#include "abf/lhp.hpp"
#include "abf/qspecial.hpp"

namespace abf::lattice_ff {

struct TraceRequest {
  int a = 1;
  int m = 0;
  std::vector<cplx> v;   // Psi_+ insertions
  std::vector<cplx> vp;  // Psi_- insertions
  int n() const { return static_cast<int>(v.size()); }
};

struct ComponentAssignment {
  std::vector<int> mu, nu;
  int mu_total() const;
  int nu_total() const;
};

// One exponential insertion: sign = +1 for Psi_+, -1 for Psi_-; eps = component.
struct Insertion {
  int sign;
  int eps;
  cplx v;
};

// x^{e2-e1} < |z1/z2| < x^{e2-e1-2k} with z = x^{2v}
bool in_convergence_window(const Insertion& i1, const Insertion& i2, const ModelParams& mp);

cplx pair_contraction(const Insertion& i1, const Insertion& i2, const ModelParams& mp,
                      const Truncation& tr = {}, bool analytic_continuation = false);

// <<O_1 ... O_N>> assembled from pair contractions; signs must sum to zero.
cplx wick_product(const std::vector<Insertion>& ins, const ModelParams& mp,
                  const Truncation& tr = {}, bool analytic_continuation = true);

cplx q_trace(const TraceRequest& req, const ModelParams& mp, const Truncation& tr = {});
// Same sum with an explicit region apex (floor h, floor h'). cond, if given,
// receives sum|term|/|sum| over the zero-mode terms.
cplx q_trace_at(const TraceRequest& req, lhp::Apex apex, const ModelParams& mp,
                const Truncation& tr = {}, double* cond = nullptr);

cplx g_shift(cplx u, const std::vector<cplx>& v, const std::vector<cplx>& vp,
             const ModelParams& mp, const Truncation& tr = {});

// Q_{b,a}(m); req.a is ignored in favour of a.
cplx q_neighbor(int b, int a, int m, cplx u, const std::vector<cplx>& v,
                const std::vector<cplx>& vp, const ModelParams& mp, const Truncation& tr = {});

cplx f_poly(int mu, int nu, const std::vector<cplx>& u, const std::vector<cplx>& v,
            const ModelParams& mp, const Truncation& tr = {});
// f_{mu,nu} - f_{nu,mu}
cplx g_poly(int mu, int nu, const std::vector<cplx>& u, const std::vector<cplx>& v,
            const ModelParams& mp, const Truncation& tr = {});

enum class HatQPath { direct, modular };

cplx hat_q(int a, const std::vector<cplx>& v, const std::vector<cplx>& vp,
           const ModelParams& mp, const Truncation& tr = {},
           HatQPath path = HatQPath::modular);

// v = (ik/2pi) beta - i pi/(2 log x)
cplx rapidity_to_v(cplx beta, const ModelParams& mp);

// Q_a^{(1,1)}(m) in conjugate-modulus form, beta = beta_1 - beta'_1.
cplx rewritten_q11(int a, int m, cplx beta, const ModelParams& mp, const Truncation& tr = {});

struct ModularReport {
  cplx lhs, rhs, rhs_folded;
  double residual = 0, folded_residual = 0;
  bool has_rewritten = false;
  cplx direct, rewritten;
  double rewritten_residual = 0;
  double max() const;
};

// Both sides of the tau -> -1/tau relation for the assembled trace sum; for
// n = 1 also the rewritten Q^{(1,1)} against the direct trace.
ModularReport modular_check(const TraceRequest& req, const ModelParams& mp,
                            const Truncation& tr = {});

}  // namespace abf::lattice_ff
