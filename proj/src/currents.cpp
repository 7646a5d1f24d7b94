#include "rllforge/currents.hpp"

namespace rllf {

namespace {

void guard_point(const StructuredR& R, cplx u, double pole_guard) {
  if (std::abs(u) < pole_guard)
    throw PoleError("structure function pole at u=0 within guard");
  if (R.pole_distance &&
      std::min(R.pole_distance(u), R.pole_distance(-u)) < pole_guard)
    throw PoleError("entry pole within guard of structure-function argument");
}

}  // namespace

cplx psi_e(const StructuredR& R, cplx u, double pole_guard) {
  guard_point(R, u, pole_guard);
  return R.b(-u) * R.d(u) / (R.a(-u) * R.b(u));
}

cplx psi_f(const StructuredR& R, cplx u, double pole_guard) {
  guard_point(R, u, pole_guard);
  return R.a(-u) * R.b(u) / (R.b(-u) * R.d(u));
}

cplx phi(const StructuredR& R, cplx u, double pole_guard) {
  guard_point(R, u, pole_guard);
  return R.t(u) / R.b(u);
}

cplx delta_normalization(const StructuredR& R) {
  // u phi(u) has even-power error terms in u, so two Richardson levels with
  // ratio 10 remove u^2 and u^4.
  double us[3] = {1e-3, 1e-4, 1e-5};
  cplx f[3];
  for (int i = 0; i < 3; ++i) f[i] = us[i] * phi(R, cplx(us[i]), 1e-9);
  cplx r1a = (100.0 * f[1] - f[0]) / 99.0;
  cplx r1b = (100.0 * f[2] - f[1]) / 99.0;
  cplx r2 = (10000.0 * r1b - r1a) / 9999.0;
  double scale = std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2]), 1e-30});
  if (std::abs(r2 - r1b) > 1e-6 * std::max(1.0, scale))
    throw PoleError("phi pole at 0 is not simple: extrapolation diverges");
  return r2;
}

cplx StructureFunctionSet::psi_e(cplx u) const { return rllf::psi_e(R, u); }
cplx StructureFunctionSet::psi_f(cplx u) const { return rllf::psi_f(R, u); }
cplx StructureFunctionSet::phi(cplx u) const { return rllf::phi(R, u); }

StructureFunctionSet structure_functions(const StructuredR& R) {
  return StructureFunctionSet{R, delta_normalization(R)};
}

CheckReport check_psi_compatibility(const StructuredR& R, const SampleSpec& spec,
                                    double tol) {
  CheckReport rep;
  rep.check = "psi_compatibility";
  rep.seed = spec.seed;
  rep.tolerance = tol;
  rep.params["eta"] = R.params.eta;
  rep.params["hbar"] = R.params.hbar;
  Sampler smp(spec);
  auto dist = [&](cplx z) {
    double d = std::abs(z);
    if (R.pole_distance)
      d = std::min({d, R.pole_distance(z), R.pole_distance(-z)});
    return d;
  };
  for (int k = 0; k < spec.count; ++k) {
    cplx u = smp.point_guarded(dist, std::max(spec.pole_guard, 1e-3));
    cplx inv = psi_e(R, u) * psi_e(R, -u) - cplx(1.0);
    cplx rec = psi_f(R, u) * psi_e(R, u) - cplx(1.0);
    rep.record("inversion", std::abs(inv), tol);
    rep.record("reciprocal", std::abs(rec), tol);
    ++rep.samples;
  }
  return rep.finalize();
}

}  // namespace rllf
