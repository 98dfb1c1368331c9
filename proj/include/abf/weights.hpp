#pragma once
// Face weights of the ABF model, regime II.

#include <vector>

#include "abf/qspecial.hpp"

namespace abf::weights {

// a top-left, b top-right, c bottom-left, d bottom-right
struct HeightQuad {
  int a, b, c, d;
  double u;
};

bool admissible(const HeightQuad& q, int k);

double wbar(const HeightQuad& q, const ModelParams& mp, const Truncation& tr = {});
double rho(double u, const ModelParams& mp, const Truncation& tr = {});
double weight(const HeightQuad& q, const ModelParams& mp, const Truncation& tr = {});

struct RelationReport {
  double unitarity = 0, second_inversion = 0, ybe = 0;
  double rho_inverse = 0, rho_crossing = 0;
  double max() const;
};

// us: spectral parameters; YBE uses consecutive triples (u1,u2,u3) from us
RelationReport verify_relations(const ModelParams& mp, const std::vector<double>& us,
                                const Truncation& tr = {});

}  // namespace abf::weights
