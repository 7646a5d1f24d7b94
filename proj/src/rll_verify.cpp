#include "rllforge/rll_verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rllf {

int sign1(SignPair p) { return p == SignPair::MM ? -1 : +1; }
int sign2(SignPair p) { return p == SignPair::PP ? +1 : -1; }

std::string to_string(SignPair p) {
  switch (p) {
    case SignPair::PP: return "++";
    case SignPair::MM: return "--";
    default: return "+-";
  }
}

namespace {

// Entries of one L-operator copy in Gauss form, 1-based (row, col):
// L11 = k1, L12 = k1 e, L21 = f k1, L22 = k2 + f k1 e.
std::array<std::array<NCPoly, 2>, 2> L_entries(int sgn, int base) {
  const CurrentSymbol k1 = sym(Kind::K1, sgn, base);
  const CurrentSymbol k2 = sym(Kind::K2, sgn, base);
  const CurrentSymbol e = sym(Kind::E, sgn, base);
  const CurrentSymbol f = sym(Kind::F, sgn, base);
  std::array<std::array<NCPoly, 2>, 2> L;
  L[0][0] = NCPoly::symbol(k1);
  L[0][1] = NCPoly::symbol(k1) * NCPoly::symbol(e);
  L[1][0] = NCPoly::symbol(f) * NCPoly::symbol(k1);
  L[1][1] = NCPoly::symbol(k2) + NCPoly::symbol(f) * NCPoly::symbol(k1) *
                                     NCPoly::symbol(e);
  return L;
}

constexpr std::array<std::pair<int, int>, 4> kIdx = {
    {{1, 1}, {1, 2}, {2, 1}, {2, 2}}};

int pos(int a, int b) { return 2 * (a - 1) + (b - 1); }

}  // namespace

ComponentSet expand_components(const RuleSet& rules, SignPair pair) {
  const int s1 = sign1(pair), s2 = sign2(pair);
  const cplx u = rules.tag_value({0, 0});
  const cplx v = rules.tag_value({1, 0});
  if (s1 != s2 && !(std::abs(u) < std::abs(v)))
    throw TagShiftError("mixed-sign exchange requires |u| < |v|; got |" +
                        std::to_string(std::abs(u)) + "| >= |" +
                        std::to_string(std::abs(v)) + "|");
  const cplx q = rules.q();
  ComponentSet cs;
  cs.delta_i = (u - static_cast<double>(s1) * q) -
               (v - static_cast<double>(s2) * q);
  cs.delta_j = (u + static_cast<double>(s1) * q) -
               (v + static_cast<double>(s2) * q);
  const Matrix4 Ri4 = eval_r(rules.Ri(), cs.delta_i);
  const Matrix4 Rj4 = eval_r(rules.Rj(), cs.delta_j);
  const auto Lu = L_entries(s1, 0);
  const auto Lv = L_entries(s2, 1);
  const double eps = static_cast<double>(rules.eps());
  auto w = [&](int a, int b) { return (a == 2 && b == 2) ? eps : 1.0; };

  for (int r = 0; r < 4; ++r) {
    const auto [al, be] = kIdx[static_cast<std::size_t>(r)];
    for (int col = 0; col < 4; ++col) {
      const auto [ga, de] = kIdx[static_cast<std::size_t>(col)];
      NCPoly lhs, rhs;
      for (const auto& [mu, nu] : kIdx) {
        const cplx rc = Ri4(r, pos(mu, nu));
        if (rc == cplx(0.0)) continue;
        lhs.add(Lu[mu - 1][ga - 1] * Lv[nu - 1][de - 1],
                rc * w(ga, nu) * w(ga, de));
      }
      for (const auto& [mu, sg] : kIdx) {
        const cplx rc = Rj4(pos(mu, sg), col);
        if (rc == cplx(0.0)) continue;
        rhs.add(Lv[be - 1][sg - 1] * Lu[al - 1][mu - 1],
                rc * w(al, be) * w(al, sg));
      }
      lhs.add(rhs, cplx(-1.0));
      cs.comps[static_cast<std::size_t>(4 * r + col)] = std::move(lhs);
    }
  }
  return cs;
}

bool weight_homogeneous(const ComponentSet& cs) {
  for (int r = 0; r < 4; ++r) {
    const auto [al, be] = kIdx[static_cast<std::size_t>(r)];
    for (int col = 0; col < 4; ++col) {
      const auto [ga, de] = kIdx[static_cast<std::size_t>(col)];
      const int want = (ga + de) - (al + be);
      const auto& comp = cs.comps[static_cast<std::size_t>(4 * r + col)];
      for (const auto& [word, c] : comp.terms)
        if (ef_weight(word) != want) return false;
    }
  }
  return true;
}

namespace {

// Guarded sampling of a tag pair (|x| < |y|): every reachable shifted
// difference stays clear of coincidence and of entry poles of both matrices.
std::pair<cplx, cplx> sample_tag_pair(Sampler& smp, const StructuredR& Ri,
                                      const StructuredR& Rj, cplx q,
                                      double min_sep, double pole_guard) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    cplx x = smp.point();
    cplx y = smp.point();
    if (std::abs(x) > std::abs(y)) std::swap(x, y);
    bool ok = std::abs(x) > min_sep && std::abs(y) > min_sep &&
              std::abs(std::abs(x) - std::abs(y)) > min_sep;
    for (int k = -6; ok && k <= 6; ++k) {
      const cplx d = x - y + static_cast<double>(k) * q;
      if (std::abs(d) < min_sep) ok = false;
      for (const cplx z : {d, -d}) {
        if (Ri.pole_distance(z) < pole_guard) ok = false;
        if (Rj.pole_distance(z) < pole_guard) ok = false;
      }
    }
    if (ok) return {x, y};
  }
  throw PoleError("could not sample an admissible tag pair in 1000 attempts");
}

std::string comp_label(int r, int col) {
  std::ostringstream os;
  os << "(" << kIdx[static_cast<std::size_t>(r)].first
     << kIdx[static_cast<std::size_t>(r)].second << "|"
     << kIdx[static_cast<std::size_t>(col)].first
     << kIdx[static_cast<std::size_t>(col)].second << ")";
  return os.str();
}

std::string largest_word(const NCPoly& p) {
  const Word* best = nullptr;
  double mx = -1.0;
  for (const auto& [w, c] : p.terms)
    if (std::abs(c) > mx) {
      mx = std::abs(c);
      best = &w;
    }
  return best ? to_string(*best) : "<empty>";
}

}  // namespace

CheckReport verify_components(const FamilyOrbit& orbit, int i, int j, int eps,
                              const SampleSpec& spec, double tol,
                              const VerifyOptions& opt) {
  CheckReport rep;
  rep.check = "rll-components";
  rep.seed = spec.seed;
  rep.tolerance = tol;
  const StructuredR Ri = orbit.member(i);
  const StructuredR Rj = orbit.member(j);
  const cplx c = i <= j ? orbit.charge_range(i, j) : -orbit.charge_range(j, i);
  const cplx q = Ri.params.hbar * c / 4.0;
  rep.params["eta_i"] = Ri.params.eta;
  rep.params["hbar_i"] = Ri.params.hbar;
  rep.params["eta_j"] = Rj.params.eta;
  rep.params["hbar_j"] = Rj.params.hbar;
  rep.params["eps"] = static_cast<double>(eps);
  rep.params["charge"] = c;
  rep.params["quarter_shift"] = q;

  Sampler smp(spec.seed, spec.lo, spec.hi);
  const double min_sep = std::max(opt.rules.min_tag_sep, 5e-2);
  const double guard = std::max(spec.pole_guard, 1e-3);

  ReduceOptions det;
  det.strategy = ReduceStrategy::Deterministic;
  det.budget = opt.budget;
  det.prune_rel = opt.prune_rel;

  for (int t = 0; t < spec.count; ++t) {
    const auto [x, y] = sample_tag_pair(smp, Ri, Rj, q, min_sep, guard);
    RuleSet rules = instantiate_catalog(Ri, Rj, eps, {x, y}, c, opt.rules);
    for (SignPair sp : {SignPair::PP, SignPair::MM, SignPair::PM}) {
      ComponentSet cs = expand_components(rules, sp);
      for (int idx = 0; idx < 16; ++idx) {
        const auto& comp = cs.comps[static_cast<std::size_t>(idx)];
        ReduceOptions rnd = det;
        rnd.strategy = ReduceStrategy::SeededRandom;
        rnd.seed = spec.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(
                                   48 * t + 16 * static_cast<int>(sp) + idx);
        NCPoly nf_det, nf_rnd;
        const double res_det =
            reduction_residual(comp, rules, det, &nf_det);
        const double res_rnd = reduction_residual(comp, rules, rnd, &nf_rnd);
        std::ostringstream where;
        where << "sample " << t << " pair " << to_string(sp) << " comp "
              << comp_label(idx / 4, idx % 4);
        const double res = std::max(res_det, res_rnd);
        if (res > tol) {
          NCPoly& bad = res_det >= res_rnd ? nf_det : nf_rnd;
          rep.record(where.str() + " word " + largest_word(bad), res, tol);
        } else {
          rep.record(where.str(), res, tol);
        }
        NCPoly diff = nf_det;
        diff.add(nf_rnd, cplx(-1.0));
        const double cross = diff.max_abs() / std::max(1.0, nf_det.max_abs());
        rep.record(where.str() + " cross-order", cross, opt.cross_tol);
      }
    }
    rep.samples += 3;
  }
  rep.finalize();
  return rep;
}

namespace {

NCPoly current_E(int base, int mult) {
  NCPoly p = NCPoly::symbol(sym(Kind::E, +1, base, -mult));
  p.add(NCPoly::symbol(sym(Kind::E, -1, base, +mult)), cplx(-1.0));
  return p;
}

NCPoly current_F(int base, int mult) {
  NCPoly p = NCPoly::symbol(sym(Kind::F, +1, base, +mult));
  p.add(NCPoly::symbol(sym(Kind::F, -1, base, -mult)), cplx(-1.0));
  return p;
}

}  // namespace

CheckReport verify_EF_relations(const FamilyOrbit& orbit, int i, int j,
                                int eps, cplx c, const SampleSpec& spec,
                                double tol, const EFOptions& opt) {
  CheckReport rep;
  rep.check = "ef-relations";
  rep.seed = spec.seed;
  rep.tolerance = tol;
  const StructuredR Ri = orbit.member(i);
  const StructuredR Rj = orbit.member(j);
  const cplx q = Ri.params.hbar * c / 4.0;
  rep.params["eta_i"] = Ri.params.eta;
  rep.params["hbar_i"] = Ri.params.hbar;
  rep.params["eta_j"] = Rj.params.eta;
  rep.params["hbar_j"] = Rj.params.hbar;
  rep.params["eps"] = static_cast<double>(eps);
  rep.params["charge"] = c;
  rep.params["quarter_shift"] = q;

  Sampler smp(spec.seed, spec.lo, spec.hi);
  const double min_sep = std::max(opt.rules.min_tag_sep, 5e-2);
  const double guard = std::max(spec.pole_guard, 1e-3);
  const int mult = opt.wrong_shift ? 2 : 1;

  ReduceOptions det;
  det.strategy = ReduceStrategy::Deterministic;
  det.budget = opt.budget;
  det.prune_rel = opt.prune_rel;

  for (int t = 0; t < spec.count; ++t) {
    const auto [x, y] = sample_tag_pair(smp, Ri, Rj, q, min_sep, guard);
    RuleSet rules = instantiate_catalog(Ri, Rj, eps, {x, y}, c, opt.rules);
    const cplx vm = y - q, vp = y + q;
    const NCPoly k1p = NCPoly::symbol(sym(Kind::K1, +1, 0));
    const NCPoly k2p = NCPoly::symbol(sym(Kind::K2, +1, 0));
    const NCPoly k1m = NCPoly::symbol(sym(Kind::K1, -1, 1));
    const NCPoly k2m = NCPoly::symbol(sym(Kind::K2, -1, 1));
    const NCPoly E0 = current_E(0, mult), E1 = current_E(1, mult);
    const NCPoly F0 = current_F(0, mult), F1 = current_F(1, mult);
    auto a_i = [&](cplx z) { return Ri.entry('a', z); };
    auto b_i = [&](cplx z) { return Ri.entry('b', z); };
    auto d_i = [&](cplx z) { return Ri.entry('d', z); };
    auto a_j = [&](cplx z) { return Rj.entry('a', z); };
    auto b_j = [&](cplx z) { return Rj.entry('b', z); };
    auto d_j = [&](cplx z) { return Rj.entry('d', z); };

    std::vector<std::pair<std::string, NCPoly>> rels;
    auto rel = [&](const std::string& name, cplx cl, NCPoly lhs, cplx cr,
                   NCPoly rhs) {
      NCPoly p = lhs * cl;
      p.add(rhs, -cr);
      rels.emplace_back(name, std::move(p));
    };
    rel("ke1", a_j(x - vm), k1p * E1, b_j(x - vm), E1 * k1p);
    rel("ke2", b_i(x - vp), k1p * F1, a_i(x - vp), F1 * k1p);
    rel("ke3", b_j(vm - x), E0 * k1m, a_j(vm - x), k1m * E0);
    rel("ke4", b_i(vp - x), k1m * F0, a_i(vp - x), F0 * k1m);
    rel("kf1", b_j(vm - x), E1 * k2p, d_j(vm - x), k2p * E1);
    rel("kf2", d_i(vp - x), F1 * k2p, b_i(vp - x), k2p * F1);
    rel("kf3", b_j(x - vm), E0 * k2m, d_j(x - vm), k2m * E0);
    rel("kf4", d_i(x - vp), F0 * k2m, b_i(x - vp), k2m * F0);

    int rk = 0;
    for (auto& [name, p] : rels) {
      ReduceOptions rnd = det;
      rnd.strategy = ReduceStrategy::SeededRandom;
      rnd.seed = spec.seed + 0x9e3779b97f4a7c15ull *
                                 static_cast<std::uint64_t>(8 * t + rk++);
      NCPoly nf_det, nf_rnd;
      const double res_det = reduction_residual(p, rules, det, &nf_det);
      const double res_rnd = reduction_residual(p, rules, rnd, &nf_rnd);
      std::ostringstream where;
      where << "sample " << t << " relation " << name;
      const double res = std::max(res_det, res_rnd);
      if (res > tol) {
        NCPoly& bad = res_det >= res_rnd ? nf_det : nf_rnd;
        rep.record(where.str() + " word " + largest_word(bad), res, tol);
      } else {
        rep.record(where.str(), res, tol);
      }
      NCPoly diff = nf_det;
      diff.add(nf_rnd, cplx(-1.0));
      const double cross = diff.max_abs() / std::max(1.0, nf_det.max_abs());
      rep.record(where.str() + " cross-order", cross, opt.cross_tol);
    }
    rep.samples += 1;
  }
  rep.finalize();
  return rep;
}

}  // namespace rllf
