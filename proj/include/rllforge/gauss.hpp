#pragma once
// Gauss decomposition of 2x2 block matrices into (f, k, e) triangular factors
// and the explicit block inverse.

#include <Eigen/Dense>

#include "rllforge/types.hpp"

namespace rllf {

using Block = Eigen::MatrixXcd;

struct BlockMatrix2 {
  Block m11, m12, m21, m22;
  int dim() const { return static_cast<int>(m11.rows()); }
};

struct GaussFactors {
  Block k1, k2, e, f;
};

// k1 = L11, e = k1^-1 L12, f = L21 k1^-1, k2 = L22 - f k1 e.
// Rejects blocks whose condition estimate exceeds cond_bound.
GaussFactors decompose(const BlockMatrix2& L, double cond_bound = 1e12);

// L11 = k1, L12 = k1 e, L21 = f k1, L22 = k2 + f k1 e.
BlockMatrix2 compose(const GaussFactors& g);

// Explicit inverse: [[k1^-1 + e k2^-1 f, -e k2^-1], [-k2^-1 f, k2^-1]].
BlockMatrix2 invert(const GaussFactors& g, double cond_bound = 1e12);

double condition_estimate(const Block& m);

}  // namespace rllf
