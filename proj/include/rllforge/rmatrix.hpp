#pragma once
// Structured 4x4 R-matrices: six entry functions a,b,c,d,s,t on the sparsity
// pattern
//   a @ (11,11), b @ (12,12), t @ (12,21), s @ (21,12), c @ (21,21), d @ (22,22)
// with row index (i,j), column index (k,l). Builtins: trigonometric and
// rational six-vertex entries.

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "rllforge/sampling.hpp"
#include "rllforge/types.hpp"

namespace rllf {

using EntryFn = std::function<cplx(cplx)>;
using Matrix4 = Eigen::Matrix4cd;

struct SpectralPoint {
  cplx u;
};

enum class RKind { Trig, Rational, Custom };

// Parameter record. eta0/hbar0/member_n track the orbit provenance so family
// steps can recompute member parameters from the base in closed form (exact
// rho- after rho+ roundtrips, no floating drift).
struct RParams {
  cplx eta{0.0, 0.0};
  cplx hbar{0.0, 0.0};
  std::map<std::string, cplx> extra;
  cplx eta0{0.0, 0.0};
  cplx hbar0{0.0, 0.0};
  int member_n = 0;
};

struct StructuredR {
  RKind kind = RKind::Custom;
  RParams params;
  int eps = +1;  // grading sign; varpi = diag(1,1,1,eps)
  std::string name = "custom";
  EntryFn a, b, c, d, s, t;
  // Distance from u to the nearest pole of any entry denominator.
  std::function<double(cplx)> pole_distance;

  cplx entry(char which, cplx u) const {
    switch (which) {
      case 'a': return a(u);
      case 'b': return b(u);
      case 'c': return c(u);
      case 'd': return d(u);
      case 's': return s(u);
      case 't': return t(u);
    }
    throw std::invalid_argument("unknown entry");
  }
};

// Row/column order of the composite index: (11), (12), (21), (22).
Matrix4 eval_r(const StructuredR& R, cplx u, double pole_guard = 1e-6);

StructuredR r21(const StructuredR& R);  // swaps b<->c and s<->t

StructuredR builtin_trig(cplx eta, cplx hbar);
StructuredR builtin_rational(cplx hbar);
StructuredR identity_r();  // a=b=c=d=1, s=t=0

// Rebuild entry closures from kind + params (used by family transforms).
StructuredR make_r(RKind kind, const RParams& params, int eps = +1);

// Residual per sample: ||R12(u) R21(-u) - I||_max / max(1, ||R12 R21||_max).
CheckReport check_unitarity(const StructuredR& R, const SampleSpec& spec,
                            double tol = 1e-9);

// Yang-Baxter on the triple tensor space, each factor carrying the spectral
// difference of its own two spaces:
//   R12(u-v) R13(u-w) R23(v-w) = R23(v-w) R13(u-w) R12(u-v).
CheckReport check_ybe(const StructuredR& R, const SampleSpec& spec,
                      double tol = 1e-9);

}  // namespace rllf
