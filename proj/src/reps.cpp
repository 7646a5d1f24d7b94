#include "rllforge/reps.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace rllf {

namespace {

MatX kron(const MatX& A, const MatX& B) {
  MatX out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index r = 0; r < A.rows(); ++r)
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      out.block(r * B.rows(), c * B.cols(), B.rows(), B.cols()) = A(r, c) * B;
  return out;
}

void check_aux_square(const MatX& m, int qdim, const char* who) {
  if (m.rows() != 2 * qdim || m.cols() != 2 * qdim)
    throw std::invalid_argument(std::string(who) +
                                ": generator dimension mismatch");
}

}  // namespace

MatX EvalL::block(cplx u, int a, int b) const {
  MatX m = generator(u);
  check_aux_square(m, qdim, "EvalL");
  return m.block(a * qdim, b * qdim, qdim, qdim);
}

EvalL eval_L(const StructuredR& R, cplx w, int index_n, bool identity_family) {
  EvalL L;
  L.qdim = 2;
  L.index_n = index_n;
  L.inhomogeneity = w;
  L.identity_family = identity_family;
  L.generator = [R, w](cplx u) -> MatX { return eval_r(R, u - w); };
  return L;
}

namespace {

// (A .x. B)^a_b = sum_c A^a_c (x) B^c_b evaluated at possibly distinct
// spectral points.
MatX dot_eval(const EvalL& A, cplx ua, const EvalL& B, cplx ub) {
  const MatX ma = A.generator(ua);
  const MatX mb = B.generator(ub);
  check_aux_square(ma, A.qdim, "dot");
  check_aux_square(mb, B.qdim, "dot");
  const int qa = A.qdim, qb = B.qdim, q = qa * qb;
  MatX out = MatX::Zero(2 * q, 2 * q);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      MatX blk = MatX::Zero(q, q);
      for (int c = 0; c < 2; ++c)
        blk += kron(ma.block(a * qa, c * qa, qa, qa),
                    mb.block(c * qb, b * qb, qb, qb));
      out.block(a * q, b * q, q, q) = blk;
    }
  return out;
}

}  // namespace

EvalL dot_tensor(const EvalL& A, const EvalL& B) {
  EvalL out;
  out.qdim = A.qdim * B.qdim;
  out.index_n = A.index_n;
  out.center = A.center + B.center;
  out.identity_family = A.identity_family && B.identity_family;
  out.generator = [A, B](cplx u) { return dot_eval(A, u, B, u); };
  return out;
}

EvalL coproduct_compose(const EvalL& La, const EvalL& Lb, cplx cn, cplx cn1,
                        cplx hbar, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("coproduct sign must be +1 or -1");
  EvalL out;
  out.qdim = La.qdim * Lb.qdim;
  out.index_n = La.index_n;
  out.center = cn + cn1;
  out.identity_family = La.identity_family && Lb.identity_family;
  const cplx sa = static_cast<double>(sign) * hbar * cn1 / 4.0;
  const cplx sb = static_cast<double>(sign) * hbar * cn / 4.0;
  out.generator = [La, Lb, sa, sb](cplx u) {
    return dot_eval(La, u + sa, Lb, u - sb);
  };
  return out;
}

EvalL antipode(const EvalL& L, int dir) {
  if (dir != 1 && dir != -1)
    throw std::invalid_argument("antipode direction must be +1 or -1");
  EvalL out = L;
  out.index_n = L.index_n + dir;
  out.generator = [L](cplx u) -> MatX {
    const MatX m = L.generator(u);
    Eigen::FullPivLU<MatX> lu(m);
    if (!lu.isInvertible())
      throw SingularBlockError("antipode: L(u) is singular");
    return lu.inverse();
  };
  return out;
}

MatX counit(const EvalL& L, cplx u) {
  const MatX m = L.generator(u);
  return MatX::Identity(m.rows(), m.cols());
}

EvalL counit_leg(int index_n) {
  EvalL out;
  out.qdim = 1;
  out.index_n = index_n;
  out.generator = [](cplx) -> MatX { return MatX::Identity(2, 2); };
  return out;
}

TransferEval trace_transfer(const std::vector<EvalL>& chain, cplx u) {
  if (chain.empty()) throw std::invalid_argument("empty transfer chain");
  EvalL prod = chain.front();
  bool warn = !chain.front().identity_family;
  for (std::size_t k = 1; k < chain.size(); ++k) {
    prod = dot_tensor(prod, chain[k]);
    warn = warn || !chain[k].identity_family;
  }
  const MatX m = prod.generator(u);
  const int q = prod.qdim;
  TransferEval out;
  out.value = m.block(0, 0, q, q) + m.block(q, q, q, q);
  out.nondegenerate_warning = warn;
  return out;
}

MatX pairing(const std::vector<MatX>& Y, const std::vector<MatX>& X) {
  if (Y.size() != X.size() || Y.empty())
    throw std::invalid_argument("pairing: component counts differ");
  MatX acc;
  for (std::size_t a = 0; a < Y.size(); ++a) {
    if (Y[a].cols() != X[a].rows())
      throw std::invalid_argument("pairing: dimension mismatch");
    MatX term = Y[a] * X[a];
    acc = a == 0 ? term : MatX(acc + term);
  }
  return acc;
}

TransferChain::TransferChain(std::vector<MatX> Y_, std::vector<EvalL> chain_,
                             std::vector<MatX> X_)
    : Y(std::move(Y_)), chain(std::move(chain_)), X(std::move(X_)) {
  if (Y.size() != 2 || X.size() != 2)
    throw std::invalid_argument("transfer chain needs 2 covector and 2 vector components");
  for (std::size_t k = 1; k < chain.size(); ++k)
    if (chain[k].index_n != chain[k - 1].index_n + 1)
      throw RangeError("transfer chain indices must be consecutive");
}

MatX transfer(const TransferChain& tc, cplx u) {
  // Chain contraction C^a_b, identity blocks for the empty chain.
  MatX C;
  int q = 1;
  if (tc.chain.empty()) {
    C = MatX::Identity(2, 2);
  } else {
    EvalL prod = tc.chain.front();
    for (std::size_t k = 1; k < tc.chain.size(); ++k)
      prod = dot_tensor(prod, tc.chain[k]);
    C = prod.generator(u);
    q = prod.qdim;
  }
  MatX acc;
  bool first = true;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const MatX term =
          kron(tc.Y[static_cast<std::size_t>(a)],
               kron(C.block(a * q, b * q, q, q), tc.X[static_cast<std::size_t>(b)]));
      if (first) {
        acc = term;
        first = false;
      } else {
        if (acc.rows() != term.rows() || acc.cols() != term.cols())
          throw std::invalid_argument("transfer: component dimension mismatch");
        acc += term;
      }
    }
  return acc;
}

TransferChain extend_transfer(const TransferChain& tc, const EvalL& L) {
  std::vector<EvalL> chain = tc.chain;
  chain.push_back(L);
  return TransferChain(tc.Y, std::move(chain), tc.X);
}

double rll_residual(const StructuredR& Rn, const StructuredR& Rm,
                    const EvalL& La, const EvalL& Lb, cplx u, cplx v) {
  if (La.qdim != Lb.qdim)
    throw std::invalid_argument("rll_residual: quantum dimensions differ");
  const int d = La.qdim;
  const int N = 4 * d;  // aux1(2) x aux2(2) x quantum(d)
  const MatX ma = La.generator(u);
  const MatX mb = Lb.generator(v);
  const Matrix4 rn = eval_r(Rn, u - v);
  const Matrix4 rm = eval_r(Rm, u - v);
  auto row = [d](int a1, int a2, int i) { return a1 * 2 * d + a2 * d + i; };
  MatX L1 = MatX::Zero(N, N), L2 = MatX::Zero(N, N);
  MatX Rn_big = MatX::Zero(N, N), Rm_big = MatX::Zero(N, N);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            L1(row(a1, a2, i), row(b1, a2, j)) = ma(a1 * d + i, b1 * d + j);
            L2(row(a2, a1, i), row(a2, b1, j)) = mb(a1 * d + i, b1 * d + j);
          }
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
          for (int i = 0; i < d; ++i) {
            Rn_big(row(a1, a2, i), row(b1, b2, i)) = rn(2 * a1 + a2, 2 * b1 + b2);
            Rm_big(row(a1, a2, i), row(b1, b2, i)) = rm(2 * a1 + a2, 2 * b1 + b2);
          }
  const MatX lhs = Rn_big * L1 * L2;
  const MatX rhs = L2 * L1 * Rm_big;
  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), 1.0);
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

double rxx_residual(const StructuredR& R,
                    const std::function<Eigen::Vector2cd(cplx)>& X, cplx u,
                    cplx v) {
  const Eigen::Vector2cd xu = X(u), xv = X(v);
  Eigen::Vector4cd w;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) w(2 * a + b) = xu(a) * xv(b);
  const Eigen::Vector4cd lhs = eval_r(R, u - v) * w;
  const double scale = std::max(w.cwiseAbs().maxCoeff(), 1.0);
  return (lhs - w).cwiseAbs().maxCoeff() / scale;
}

double ryy_residual(const StructuredR& R,
                    const std::function<Eigen::RowVector2cd(cplx)>& Y, cplx u,
                    cplx v) {
  const Eigen::RowVector2cd yv = Y(v), yu = Y(u);
  Eigen::RowVector4cd w;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) w(2 * a + b) = yv(a) * yu(b);
  const Eigen::RowVector4cd lhs = w * eval_r(R, v - u);
  const double scale = std::max(w.cwiseAbs().maxCoeff(), 1.0);
  return (lhs - w).cwiseAbs().maxCoeff() / scale;
}

CheckReport check_commuting(const std::function<MatX(cplx)>& T,
                            const SampleSpec& spec, double tol) {
  CheckReport rep;
  rep.check = "transfer-commuting";
  rep.seed = spec.seed;
  rep.tolerance = tol;
  Sampler smp(spec.seed, spec.lo, spec.hi);
  for (int t = 0; t < spec.count; ++t) {
    const cplx u = smp.point(), v = smp.point();
    MatX tu, tv;
    try {
      tu = T(u);
      tv = T(v);
    } catch (const PoleError&) {
      continue;  // resample window skipped; count only evaluated pairs
    }
    const MatX p = tu * tv;
    const double scale = std::max(p.cwiseAbs().maxCoeff(), 1e-12);
    const double res = (p - tv * tu).cwiseAbs().maxCoeff() / scale;
    std::ostringstream where;
    where << "pair " << t;
    rep.record(where.str(), res, tol);
    rep.samples += 1;
  }
  rep.finalize();
  return rep;
}

}  // namespace rllf
