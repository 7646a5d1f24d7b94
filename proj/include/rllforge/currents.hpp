#pragma once
// Structure functions Psi_E, Psi_F, Phi of the raising/lowering currents and
// the delta normalization N, computed from a StructuredR's entries.

#include "rllforge/rmatrix.hpp"

namespace rllf {

// psi_e(u) = b(-u) d(u) / (a(-u) b(u)); the coefficient in
// E(u)E(v) = eps psi_e(u-v) E(v)E(u).
cplx psi_e(const StructuredR& R, cplx u, double pole_guard = 1e-6);

// psi_f = 1 / psi_e (the FF-relation coefficient).
cplx psi_f(const StructuredR& R, cplx u, double pole_guard = 1e-6);

// phi(u) = t(u) / b(u).
cplx phi(const StructuredR& R, cplx u, double pole_guard = 1e-6);

// N = lim_{u->0} u phi(u) via Richardson extrapolation over u in
// {1e-3, 1e-4, 1e-5}; convention: the delta function absorbs all remaining
// constants. Throws PoleError when the pole is not simple.
cplx delta_normalization(const StructuredR& R);

struct StructureFunctionSet {
  StructuredR R;
  cplx N;
  cplx psi_e(cplx u) const;
  cplx psi_f(cplx u) const;
  cplx phi(cplx u) const;
};

StructureFunctionSet structure_functions(const StructuredR& R);

// psi_e(u) psi_e(-u) = 1 and psi_f = psi_e^-1 at sampled points.
CheckReport check_psi_compatibility(const StructuredR& R, const SampleSpec& spec,
                                    double tol = 1e-9);

}  // namespace rllf
