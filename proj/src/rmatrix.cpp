#include "rllforge/rmatrix.hpp"

#include <cmath>
#include <numbers>

namespace rllf {

namespace {

// Nearest zero of sinh(pi*eta*(u + shift)): zeros at u = -shift + i*k/eta.
double sinh_zero_distance(cplx eta, cplx shift, cplx u) {
  cplx z = std::numbers::pi * eta * (u + shift);
  double k = std::round(z.imag() / std::numbers::pi);
  cplx nearest(0.0, k * std::numbers::pi);
  return std::abs(z - nearest) / std::abs(std::numbers::pi * eta);
}

}  // namespace

Matrix4 eval_r(const StructuredR& R, cplx u, double pole_guard) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
    throw std::invalid_argument("non-finite spectral point");
  if (R.pole_distance) {
    double dist = R.pole_distance(u);
    if (dist < pole_guard)
      throw PoleError("entry denominator pole within guard of u, distance " +
                      std::to_string(dist));
  }
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = R.a(u);
  m(1, 1) = R.b(u);
  m(1, 2) = R.t(u);
  m(2, 1) = R.s(u);
  m(2, 2) = R.c(u);
  m(3, 3) = R.d(u);
  return m;
}

StructuredR r21(const StructuredR& R) {
  StructuredR out = R;
  out.b = R.c;
  out.c = R.b;
  out.s = R.t;
  out.t = R.s;
  return out;
}

StructuredR builtin_trig(cplx eta, cplx hbar) {
  if (eta == cplx(0.0) || hbar == cplx(0.0))
    throw std::invalid_argument("builtin_trig requires nonzero eta and hbar");
  StructuredR R;
  R.kind = RKind::Trig;
  R.name = "builtin_trig";
  R.params.eta = R.params.eta0 = eta;
  R.params.hbar = R.params.hbar0 = hbar;
  const double pi = std::numbers::pi;
  auto den = [eta, hbar, pi](cplx u) { return std::sinh(pi * eta * (u + hbar)); };
  R.a = [](cplx) { return cplx(1.0); };
  R.d = R.a;
  R.b = [eta, den, pi](cplx u) { return std::sinh(pi * eta * u) / den(u); };
  R.c = R.b;
  R.t = [eta, hbar, den, pi](cplx u) { return std::sinh(pi * eta * hbar) / den(u); };
  R.s = R.t;
  R.pole_distance = [eta, hbar](cplx u) { return sinh_zero_distance(eta, hbar, u); };
  return R;
}

StructuredR builtin_rational(cplx hbar) {
  if (hbar == cplx(0.0))
    throw std::invalid_argument("builtin_rational requires nonzero hbar");
  StructuredR R;
  R.kind = RKind::Rational;
  R.name = "builtin_rational";
  R.params.hbar = R.params.hbar0 = hbar;
  R.a = [](cplx) { return cplx(1.0); };
  R.d = R.a;
  R.b = [hbar](cplx u) { return u / (u + hbar); };
  R.c = R.b;
  R.t = [hbar](cplx u) { return hbar / (u + hbar); };
  R.s = R.t;
  R.pole_distance = [hbar](cplx u) { return std::abs(u + hbar); };
  return R;
}

StructuredR identity_r() {
  StructuredR R;
  R.kind = RKind::Custom;
  R.name = "identity";
  auto one = [](cplx) { return cplx(1.0); };
  auto zero = [](cplx) { return cplx(0.0); };
  R.a = one;
  R.b = one;
  R.c = one;
  R.d = one;
  R.s = zero;
  R.t = zero;
  R.pole_distance = [](cplx) { return 1e30; };
  return R;
}

StructuredR make_r(RKind kind, const RParams& params, int eps) {
  StructuredR R;
  switch (kind) {
    case RKind::Trig: R = builtin_trig(params.eta, params.hbar); break;
    case RKind::Rational: R = builtin_rational(params.hbar); break;
    case RKind::Custom:
      throw MissingParameterError(
          "custom R-matrices cannot be rebuilt from parameters");
  }
  R.params = params;
  R.eps = eps;
  return R;
}

namespace {

using Matrix8 = Eigen::Matrix<cplx, 8, 8>;

double rel_residual(const Eigen::Ref<const Eigen::MatrixXcd>& diff,
                    double scale) {
  return diff.cwiseAbs().maxCoeff() / std::max(1.0, scale);
}

// Embeddings on C^2 x C^2 x C^2: R12 = R (x) I, R23 = I (x) R,
// R13 = P23 (R (x) I) P23.
Matrix8 embed(const Matrix4& r, int which) {
  Matrix8 m = Matrix8::Zero();
  auto idx = [](int a, int b, int c) { return 4 * a + 2 * b + c; };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int ap = 0; ap < 2; ++ap)
          for (int bp = 0; bp < 2; ++bp)
            for (int cp = 0; cp < 2; ++cp) {
              cplx val;
              if (which == 12)
                val = (c == cp) ? r(2 * a + b, 2 * ap + bp) : cplx(0.0);
              else if (which == 23)
                val = (a == ap) ? r(2 * b + c, 2 * bp + cp) : cplx(0.0);
              else
                val = (b == bp) ? r(2 * a + c, 2 * ap + cp) : cplx(0.0);
              if (val != cplx(0.0)) m(idx(a, b, c), idx(ap, bp, cp)) = val;
            }
  return m;
}

}  // namespace

CheckReport check_unitarity(const StructuredR& R, const SampleSpec& spec,
                            double tol) {
  CheckReport rep;
  rep.check = "unitarity";
  rep.seed = spec.seed;
  rep.tolerance = tol;
  rep.params["eta"] = R.params.eta;
  rep.params["hbar"] = R.params.hbar;
  Sampler smp(spec);
  StructuredR R21 = r21(R);
  auto guard = [&](cplx z) {
    double d = R.pole_distance ? std::min(R.pole_distance(z), R.pole_distance(-z))
                               : 1e30;
    return d;
  };
  for (int k = 0; k < spec.count; ++k) {
    cplx u = smp.point_guarded(guard, spec.pole_guard);
    Matrix4 prod = eval_r(R, u, spec.pole_guard) * eval_r(R21, -u, spec.pole_guard);
    double res = rel_residual(prod - Matrix4::Identity(), prod.cwiseAbs().maxCoeff());
    rep.record("u=(" + std::to_string(u.real()) + "," + std::to_string(u.imag()) + ")",
               res, tol);
    ++rep.samples;
  }
  return rep.finalize();
}

CheckReport check_ybe(const StructuredR& R, const SampleSpec& spec, double tol) {
  CheckReport rep;
  rep.check = "ybe";
  rep.seed = spec.seed;
  rep.tolerance = tol;
  rep.params["eta"] = R.params.eta;
  rep.params["hbar"] = R.params.hbar;
  Sampler smp(spec);
  auto guard = [&](cplx z) { return R.pole_distance ? R.pole_distance(z) : 1e30; };
  long attempts = 0;
  for (int k = 0; k < spec.count; ++k) {
    if (++attempts > 1000L * spec.count)
      throw PoleError("ybe sampler could not clear the pole guard");
    cplx u = smp.point();
    cplx v = smp.point();
    cplx w = smp.point();
    if (guard(u - v) <= spec.pole_guard || guard(u - w) <= spec.pole_guard ||
        guard(v - w) <= spec.pole_guard) {
      --k;  // resample the whole triple, deterministically for a given seed
      continue;
    }
    Matrix8 r12 = embed(eval_r(R, u - v, spec.pole_guard), 12);
    Matrix8 r13 = embed(eval_r(R, u - w, spec.pole_guard), 13);
    Matrix8 r23 = embed(eval_r(R, v - w, spec.pole_guard), 23);
    Matrix8 lhs = r12 * r13 * r23;
    Matrix8 rhs = r23 * r13 * r12;
    double res = rel_residual(lhs - rhs, lhs.cwiseAbs().maxCoeff());
    rep.record("triple#" + std::to_string(rep.samples), res, tol);
    ++rep.samples;
  }
  return rep.finalize();
}

}  // namespace rllf
