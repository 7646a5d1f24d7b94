#pragma once
// Representation-level constructions: evaluation L-matrices reshaped from an
// R-matrix, coproduct / antipode / counit at data level, the covector-vector
// pairing, and commuting transfer operators.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "rllforge/rmatrix.hpp"
#include "rllforge/sampling.hpp"
#include "rllforge/types.hpp"

namespace rllf {

using MatX = Eigen::MatrixXcd;

// L-operator on aux(2) x quantum(qdim); row index a*qdim+i, column b*qdim+j.
struct EvalL {
  std::function<MatX(cplx)> generator;
  int index_n = 0;          // family slot: maps between members n and n+1
  int qdim = 2;             // quantum-space dimension
  cplx inhomogeneity = 0.0;
  cplx center = 0.0;        // accumulated shift charge
  bool identity_family = true;  // false for members of a nontrivial orbit

  MatX operator()(cplx u) const { return generator(u); }
  MatX block(cplx u, int a, int b) const;  // L^a_b, qdim x qdim
};

// Evaluation module: L(u) = R(u - w) in aux-block form.
EvalL eval_L(const StructuredR& R, cplx w = 0.0, int index_n = 0,
             bool identity_family = true);

// Auxiliary-index contraction with quantum-space tensor product:
// (A .x. B)^a_b = sum_c A^a_c (x) B^c_b.
EvalL dot_tensor(const EvalL& A, const EvalL& B);

// Coproduct at data level: La(u + s hbar c_{n+1}/4) .x. Lb(u - s hbar c_n/4);
// the composite center is additive.
EvalL coproduct_compose(const EvalL& La, const EvalL& Lb, cplx cn, cplx cn1,
                        cplx hbar = 0.0, int sign = +1);

// Antipode: pointwise inverse with the family index stepped by dir; throws
// SingularBlockError where L(u) is not invertible.
EvalL antipode(const EvalL& L, int dir = +1);

// Counit at data level: identity of the same dimension as L(u).
MatX counit(const EvalL& L, cplx u = 0.0);

// Trivial one-dimensional leg realizing the counit inside a composite.
EvalL counit_leg(int index_n = 0);

struct TransferEval {
  MatX value;
  bool nondegenerate_warning = false;  // chain touches a nontrivial orbit
};

// t(u) = trace over the auxiliary space of the chained .x.-product.
TransferEval trace_transfer(const std::vector<EvalL>& chain, cplx u);

// Pairing of covector and vector data; matrix-valued components multiply.
MatX pairing(const std::vector<MatX>& Y, const std::vector<MatX>& X);

struct TransferChain {
  std::vector<MatX> Y;       // 2 covector components
  std::vector<EvalL> chain;  // consecutive family indices
  std::vector<MatX> X;       // 2 vector components
  TransferChain(std::vector<MatX> Y, std::vector<EvalL> chain,
                std::vector<MatX> X);
};

// T(u) = <Y, L...L X> with tensor contraction across the chain.
MatX transfer(const TransferChain& tc, cplx u);

// Comorphism step at data level: insert one more L next to the X leg.
TransferChain extend_transfer(const TransferChain& tc, const EvalL& L);

// Exchange-relation residual R_n(u-v) L1(u) L2(v) = L2(v) L1(u) R_m(u-v) on
// aux(2) x aux(2) x quantum.
double rll_residual(const StructuredR& Rn, const StructuredR& Rm,
                    const EvalL& La, const EvalL& Lb, cplx u, cplx v);

// Residual hooks for user-supplied vector / covector data: R(u-v) w = w with
// w_(ab) = X(u)^a X(v)^b, and w R(v-u) = w with w_(ab) = Y(v)_a Y(u)_b.
double rxx_residual(const StructuredR& R,
                    const std::function<Eigen::Vector2cd(cplx)>& X, cplx u,
                    cplx v);
double ryy_residual(const StructuredR& R,
                    const std::function<Eigen::RowVector2cd(cplx)>& Y, cplx u,
                    cplx v);

// Commutator check: max ||T(u)T(v) - T(v)T(u)|| / ||T(u)T(v)|| over samples.
CheckReport check_commuting(const std::function<MatX(cplx)>& T,
                            const SampleSpec& spec, double tol = 1e-10);

}  // namespace rllf
