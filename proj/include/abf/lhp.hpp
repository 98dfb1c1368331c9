#pragma once
// String functions, local height probabilities and the zero-mode sum Gamma.

#include "abf/qspecial.hpp"

namespace abf::lhp {

struct SectorLabel {
  int m = 0;
  int l = 0;
};

struct GammaArgs {
  double h = 0.0, hp = 0.0;
  cplx y1 = 0.0, y2 = 0.0;
  cplx modular_arg{0.0, 1.0};
};

// Integer apex (floor h, floor h') of the summation region.
struct Apex {
  long H = 0, Hp = 0;
};

// Apex at the floor of the Gaussian saddle point; every term of the region
// sum is then bounded by the saddle value.
Apex centred_apex(int k, int m, int l, cplx y1, cplx y2, cplx t);

// Region sum without the eta^{-2} factor. abs_sum, if given, receives the
// sum of term moduli (cancellation diagnostic).
cplx gamma_region(int k, int m, int l, cplx y1, cplx y2, cplx t, Apex apex,
                  const Truncation& tr = {}, double* abs_sum = nullptr);

// Gamma^{(h,h')}_{m,l}(y1,y2|t), the requested region exactly.
cplx gamma_sector(const GammaArgs& g, const SectorLabel& s, const ModelParams& mp,
                  const Truncation& tr = {});

double string_fn(int l, int m, const ModelParams& mp, const Truncation& tr = {});
double one_point_lhp(int a, int m, const ModelParams& mp, const Truncation& tr = {});

struct PartitionFn {
  double sum_form, closed_form;
  double difference() const { return sum_form - closed_form; }
};
PartitionFn partition_fn(const ModelParams& mp, const Truncation& tr = {});

// P_{b,a}(m), |b-a| = 1
double two_point_lhp(int b, int a, int m, const ModelParams& mp, const Truncation& tr = {});

}  // namespace abf::lhp
