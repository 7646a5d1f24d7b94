#include "rllforge/family.hpp"

namespace rllf {

namespace {

// Fold the accumulating parameter from index 0 to n in a fixed order. The
// increment for the step k -> k+1 is inc(k); downward steps subtract the same
// increments in descending order, so any (n -> n+1 -> n) walk recomputes the
// original value bit-exactly.
cplx fold_accum(cplx base, int n, const std::function<cplx(int)>& inc) {
  cplx v = base;
  if (n >= 0) {
    for (int k = 0; k < n; ++k) v += inc(k);
  } else {
    for (int k = -1; k >= n; --k) v -= inc(k);
  }
  return v;
}

}  // namespace

RParams member_params(const RhoSpec& rho, const RParams& base, int n) {
  RParams p = base;
  p.member_n = n;
  p.eta = base.eta0;
  p.hbar = base.hbar0;
  if (n == 0) return p;  // base values verbatim, no reciprocal roundtrip
  // Uniform-kind fast paths keep the closed-form reading obvious; the mixed
  // (override) case folds step by step with per-index kinds.
  bool mixed = !rho.override_kind.empty();
  if (!mixed) {
    switch (rho.kind) {
      case RhoKind::Identity:
        return p;
      case RhoKind::PhaseShift:
        p.hbar = fold_accum(base.hbar0, n, [&](int k) { return rho.shift(k); });
        return p;
      case RhoKind::PeriodRecursion: {
        // 1/eta^{(n+1)} = 1/eta^{(n)} + hbar c_n, accumulated in 1/eta.
        cplx inv = fold_accum(cplx(1.0) / base.eta0, n,
                              [&](int k) { return base.hbar0 * rho.charge(k); });
        p.eta = cplx(1.0) / inv;
        return p;
      }
      case RhoKind::PeriodReplace: {
        if (n == 0) return p;
        auto it = rho.eta_table.find(n);
        if (it == rho.eta_table.end())
          throw MissingParameterError("period_replace table lacks index " +
                                      std::to_string(n));
        p.eta = it->second;
        return p;
      }
    }
  }
  // Mixed kinds: fold (hbar, 1/eta) jointly with the per-index step kind.
  cplx hbar = base.hbar0;
  cplx inv_eta = base.eta0 == cplx(0.0) ? cplx(0.0) : cplx(1.0) / base.eta0;
  auto step = [&](int k, int dir) {
    switch (rho.step_kind(k)) {
      case RhoKind::Identity: break;
      case RhoKind::PhaseShift: hbar += double(dir) * rho.shift(k); break;
      case RhoKind::PeriodRecursion:
        inv_eta += double(dir) * base.hbar0 * rho.charge(k);
        break;
      case RhoKind::PeriodReplace:
        throw MissingParameterError(
            "period_replace cannot appear in a per-index override");
    }
  };
  if (n >= 0)
    for (int k = 0; k < n; ++k) step(k, +1);
  else
    for (int k = -1; k >= n; --k) step(k, -1);
  p.hbar = hbar;
  if (base.eta0 != cplx(0.0)) p.eta = cplx(1.0) / inv_eta;
  return p;
}

StructuredR apply_rho(const RhoSpec& rho, int sign, int n,
                      const StructuredR& R) {
  if (sign != +1 && sign != -1)
    throw std::invalid_argument("rho sign must be +1 or -1");
  if (rho.kind == RhoKind::Identity && rho.override_kind.empty()) {
    StructuredR out = R;
    out.params.member_n = n + sign;
    return out;
  }
  if (R.kind == RKind::Custom)
    throw MissingParameterError(
        "nontrivial rho needs a parameterized (builtin) R-matrix");
  RParams next = member_params(rho, R.params, n + sign);
  return make_r(R.kind, next, R.eps);
}

FamilyOrbit::FamilyOrbit(StructuredR base, RhoSpec rho, int n_min, int n_max)
    : base_(std::move(base)), rho_(std::move(rho)), n_min_(n_min), n_max_(n_max) {
  if (n_min_ > 0 || n_max_ < 0)
    throw RangeError("orbit range must contain 0");
}

const StructuredR& FamilyOrbit::member(int n) const {
  if (n < n_min_ || n > n_max_)
    throw RangeError("orbit index " + std::to_string(n) + " outside range");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  StructuredR m;
  if ((rho_.kind == RhoKind::Identity && rho_.override_kind.empty()) || n == 0) {
    m = base_;
    m.params.member_n = n;
  } else {
    m = make_r(base_.kind, member_params(rho_, base_.params, n), base_.eps);
  }
  return memo_.emplace(n, std::move(m)).first->second;
}

cplx FamilyOrbit::charge_range(int i, int j) const {
  if (i > j) throw RangeError("charge_range requires i <= j");
  cplx c = 0.0;
  for (int k = i; k < j; ++k) c += rho_.charge(k);
  return c;
}

FamilyOrbit orbit(const StructuredR& base, const RhoSpec& rho, int n_min,
                  int n_max) {
  return FamilyOrbit(base, rho, n_min, n_max);
}

ParamMap tau(const FamilyOrbit& orb, int m, int n) {
  if (m < orb.n_min() || m > orb.n_max() || n < orb.n_min() || n > orb.n_max())
    throw RangeError("tau indices outside orbit range");
  return ParamMap{n, m};
}

ParamMap compose(const ParamMap& outer, const ParamMap& inner) {
  if (outer.from != inner.to)
    throw RangeError("tau composition index mismatch");
  return ParamMap{inner.from, outer.to};
}

RParams apply_map(const FamilyOrbit& orb, const ParamMap& map) {
  return orb.member(map.to).params;
}

CheckReport check_images_admissible(
    const std::vector<std::pair<std::string, StructuredR>>& images,
    const SampleSpec& spec, double tol) {
  CheckReport rep;
  rep.check = "rho_admissible";
  rep.seed = spec.seed;
  rep.tolerance = tol;
  for (const auto& [label, img] : images) {
    CheckReport uni = check_unitarity(img, spec, tol);
    CheckReport ybe = check_ybe(img, spec, tol);
    rep.samples += uni.samples + ybe.samples;
    rep.record(label + ":unitarity", uni.max_residual, tol);
    rep.record(label + ":ybe", ybe.max_residual, tol);
  }
  return rep.finalize();
}

CheckReport check_rho_admissible(const RhoSpec& rho, const StructuredR& R,
                                 const SampleSpec& spec, double tol) {
  std::vector<std::pair<std::string, StructuredR>> images;
  images.emplace_back("rho+", apply_rho(rho, +1, 0, R));
  images.emplace_back("rho-", apply_rho(rho, -1, 0, R));
  CheckReport rep = check_images_admissible(images, spec, tol);
  rep.params["eta"] = R.params.eta;
  rep.params["hbar"] = R.params.hbar;
  return rep.finalize();
}

}  // namespace rllf
