#include "rllforge/gauss.hpp"

namespace rllf {

double condition_estimate(const Block& m) {
  Eigen::JacobiSVD<Block> svd(m);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

namespace {

Block checked_inverse(const Block& m, const char* label, double cond_bound) {
  double cond = condition_estimate(m);
  if (!(cond < cond_bound))
    throw SingularBlockError(std::string(label) + " block singular, condition " +
                             std::to_string(cond));
  return m.inverse();
}

void check_dims(const BlockMatrix2& L) {
  auto sq = [](const Block& b) { return b.rows() == b.cols(); };
  if (!sq(L.m11) || !sq(L.m12) || !sq(L.m21) || !sq(L.m22) ||
      L.m11.rows() != L.m12.rows() || L.m11.rows() != L.m21.rows() ||
      L.m11.rows() != L.m22.rows())
    throw std::invalid_argument("blocks must be square with a shared dimension");
}

}  // namespace

GaussFactors decompose(const BlockMatrix2& L, double cond_bound) {
  check_dims(L);
  GaussFactors g;
  g.k1 = L.m11;
  Block k1inv = checked_inverse(g.k1, "k1", cond_bound);
  g.e = k1inv * L.m12;
  g.f = L.m21 * k1inv;
  g.k2 = L.m22 - g.f * g.k1 * g.e;
  double cond = condition_estimate(g.k2);
  if (!(cond < cond_bound))
    throw SingularBlockError("k2 block singular, condition " +
                             std::to_string(cond));
  return g;
}

BlockMatrix2 compose(const GaussFactors& g) {
  BlockMatrix2 L;
  L.m11 = g.k1;
  L.m12 = g.k1 * g.e;
  L.m21 = g.f * g.k1;
  L.m22 = g.k2 + g.f * g.k1 * g.e;
  return L;
}

BlockMatrix2 invert(const GaussFactors& g, double cond_bound) {
  Block k1inv = checked_inverse(g.k1, "k1", cond_bound);
  Block k2inv = checked_inverse(g.k2, "k2", cond_bound);
  BlockMatrix2 L;
  L.m11 = k1inv + g.e * k2inv * g.f;
  L.m12 = -g.e * k2inv;
  L.m21 = -k2inv * g.f;
  L.m22 = k2inv;
  return L;
}

}  // namespace rllf
