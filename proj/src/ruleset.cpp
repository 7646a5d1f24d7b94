#include "rllforge/ruleset.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rllforge/types.hpp"

namespace rllf {

namespace {

std::string fmt_c(cplx z) {
  std::ostringstream os;
  os << "(" << z.real() << "," << z.imag() << ")";
  return os.str();
}

}  // namespace

RuleSet::RuleSet(StructuredR Ri, StructuredR Rj, int eps,
                 std::vector<cplx> tags, cplx c, RuleSetOptions opt)
    : Ri_(std::move(Ri)),
      Rj_(std::move(Rj)),
      eps_(eps),
      tags_(std::move(tags)),
      q_(0.0),
      opt_(opt) {
  if (eps_ != 1 && eps_ != -1)
    throw std::invalid_argument("grading sign must be +1 or -1");
  q_ = Ri_.params.hbar * c / 4.0;
}

cplx RuleSet::tag_value(const SpectralTag& t) const {
  if (t.base_index < 0 || t.base_index >= static_cast<int>(tags_.size()))
    throw RangeError("tag base index " + std::to_string(t.base_index) +
                     " outside table of size " + std::to_string(tags_.size()));
  return tags_[static_cast<std::size_t>(t.base_index)] +
         static_cast<double>(t.shift_quanta) * q_;
}

cplx RuleSet::ei(char which, cplx z) const { return Ri_.entry(which, z); }
cplx RuleSet::ej(char which, cplx z) const { return Rj_.entry(which, z); }

cplx RuleSet::guarded_div(cplx num, cplx den, const char* rule, cplx z) const {
  // Entry closures can themselves blow up (their own denominator poles); a
  // non-finite value in either slot is a pole hit, not a usable coefficient.
  auto finite = [](cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  };
  if (!finite(num) || !finite(den) || std::abs(den) < opt_.pole_guard)
    throw PoleError(std::string("vanishing denominator in rule ") + rule +
                    " at argument " + fmt_c(z));
  return num / den;
}

std::optional<RuleOutput> RuleSet::site_rule(const CurrentSymbol& A,
                                             const CurrentSymbol& B) const {
  const int rA = kind_rank(A.kind);
  const int rB = kind_rank(B.kind);
  if (rA < rB) return std::nullopt;  // already ordered

  const cplx x = tag_value(A.tag);
  const cplx y = tag_value(B.tag);
  const cplx sA = static_cast<double>(A.sign);
  const cplx sB = static_cast<double>(B.sign);

  // K-K block: cancellation, swap, stable ties.
  if (rA == 1 && rB == 1) {
    if (A.kind == B.kind && A.sign == B.sign && A.tag == B.tag) {
      if (A.inverted != B.inverted)
        return RuleOutput{{Word{}, cplx(1.0)}};  // X^{-1} X -> 1
      return std::nullopt;                       // equal factors: stable
    }
    if (tag_key(A) <= tag_key(B)) return std::nullopt;  // ordered or tie
    const cplx argJ = (x + sA * q_) - (y + sB * q_);
    const cplx argI = (x - sA * q_) - (y - sB * q_);
    cplx lam;
    if (A.kind == Kind::K1 && B.kind == Kind::K1) {
      lam = guarded_div(ej('a', argJ), ei('a', argI), "k1k1", argI);
    } else if (A.kind == Kind::K2 && B.kind == Kind::K2) {
      lam = guarded_div(ej('d', argJ), ei('d', argI), "k2k2", argI);
    } else if (A.kind == Kind::K1 && B.kind == Kind::K2) {
      lam = guarded_div(ej('b', argJ), ei('b', argI), "k1k2", argI);
      if (opt_.corrupt_kk3) lam = 1.0 / lam;
    } else {  // K2 before K1
      lam = guarded_div(ei('b', -argI), ej('b', -argJ), "k2k1", argJ);
      if (opt_.corrupt_kk3) lam = 1.0 / lam;
    }
    if (A.inverted != B.inverted) lam = 1.0 / lam;
    return RuleOutput{{Word{B, A}, lam}};
  }

  // e past K: e(x) k(y) -> k(y) e(x) + k(y) e(y-part).
  if (rA == 2 && rB == 1) {
    if (B.inverted)
      throw DeltaSectorError(
          "raising symbol adjacent to inverted diagonal factor " +
          to_string(B) + "; clear inverses before ordering");
    CurrentSymbol rep = sym(Kind::E, B.sign, B.tag.base_index,
                            B.tag.shift_quanta);
    if (B.kind == Kind::K1) {
      const cplx d = (y + sB * q_) - (x + sA * q_);
      const cplx al = guarded_div(ej('a', d), ej('b', d), "ek1", d);
      const cplx be = guarded_div(-ej('s', d), ej('b', d), "ek1", d);
      return RuleOutput{{Word{B, A}, al}, {Word{B, rep}, be}};
    }
    const cplx d = (x + sA * q_) - (y + sB * q_);
    const cplx al = guarded_div(ej('d', d), ej('b', d), "ek2", d);
    const cplx be =
        guarded_div(-static_cast<double>(eps_) * ej('t', d), ej('b', d), "ek2", d);
    return RuleOutput{{Word{B, A}, al}, {Word{B, rep}, be}};
  }

  // K past f: k(x) f(y) -> f(y) k(x) + f(x-part) k(x).
  if (rA == 1 && rB == 0) {
    if (A.inverted)
      throw DeltaSectorError(
          "lowering symbol adjacent to inverted diagonal factor " +
          to_string(A) + "; clear inverses before ordering");
    CurrentSymbol rep = sym(Kind::F, A.sign, A.tag.base_index,
                            A.tag.shift_quanta);
    if (A.kind == Kind::K1) {
      const cplx d = (x - sA * q_) - (y - sB * q_);
      const cplx al = guarded_div(ei('a', d), ei('b', d), "k1f", d);
      const cplx be = guarded_div(-ei('t', d), ei('b', d), "k1f", d);
      return RuleOutput{{Word{B, A}, al}, {Word{rep, A}, be}};
    }
    const cplx d = (y - sB * q_) - (x - sA * q_);
    const cplx al = guarded_div(ei('d', d), ei('b', d), "k2f", d);
    const cplx be =
        guarded_div(-static_cast<double>(eps_) * ei('s', d), ei('b', d), "k2f", d);
    return RuleOutput{{Word{B, A}, al}, {Word{rep, A}, be}};
  }

  // e-f exchange: e(x) f(y) -> eps f(y) e(x) + diagonal bilinears.
  if (rA == 2 && rB == 0) {
    const cplx di = (x - sA * q_) - (y - sB * q_);
    const cplx dj = (x + sA * q_) - (y + sB * q_);
    const cplx phi_i = guarded_div(ei('t', di), ei('b', di), "ef", di);
    const cplx phi_j = guarded_div(ej('t', dj), ej('b', dj), "ef", dj);
    const double e = static_cast<double>(eps_);
    CurrentSymbol k1a = sym(Kind::K1, A.sign, A.tag.base_index,
                            A.tag.shift_quanta, true);
    CurrentSymbol k2a =
        sym(Kind::K2, A.sign, A.tag.base_index, A.tag.shift_quanta);
    CurrentSymbol k2b =
        sym(Kind::K2, B.sign, B.tag.base_index, B.tag.shift_quanta);
    CurrentSymbol k1b = sym(Kind::K1, B.sign, B.tag.base_index,
                            B.tag.shift_quanta, true);
    return RuleOutput{{Word{B, A}, cplx(e)},
                      {Word{k1a, k2a}, -e * phi_i},
                      {Word{k2b, k1b}, e * phi_j}};
  }

  // e-e swap, entries from R^{(j)} only.
  if (rA == 2 && rB == 2) {
    if (tag_key(A) <= tag_key(B)) return std::nullopt;
    const cplx d = (x + sA * q_) - (y + sB * q_);
    const double e = static_cast<double>(eps_);
    const cplx bp = ej('b', d), bm = ej('b', -d);
    const cplx ap = ej('a', d), am = ej('a', -d);
    const cplx c_ba =
        e * guarded_div(ej('d', d) * bm, bp * am, "ee", d);
    const cplx c_bb = guarded_div(ej('s', -d), am, "ee", -d);
    const cplx c_aa =
        -e * guarded_div(ej('d', d) * ej('s', d) * bm, ap * bp * am, "ee", d);
    return RuleOutput{
        {Word{B, A}, c_ba}, {Word{B, B}, c_bb}, {Word{A, A}, c_aa}};
  }

  // f-f swap, entries from R^{(i)} only.
  if (rA == 0 && rB == 0) {
    if (tag_key(A) <= tag_key(B)) return std::nullopt;
    const cplx d = (x - sA * q_) - (y - sB * q_);
    const double e = static_cast<double>(eps_);
    const cplx bp = ei('b', d), bm = ei('b', -d);
    const cplx c_ba = e * guarded_div(ei('a', -d) * bp, bm * ei('d', d), "ff", d);
    const cplx c_aa = guarded_div(ei('t', d), ei('a', d), "ff", d);
    const cplx c_bb =
        -e * guarded_div(ei('t', -d) * bp, bm * ei('d', d), "ff", -d);
    return RuleOutput{
        {Word{B, A}, c_ba}, {Word{A, A}, c_aa}, {Word{B, B}, c_bb}};
  }

  return std::nullopt;
}

void RuleSet::precheck() const {
  const int n = static_cast<int>(tags_.size());
  // Shifted copies of distinct base tags must stay separated and clear of
  // entry poles; quanta differences reachable by words plus rule shifts span
  // k in [-6, 6].
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      for (int k = -6; k <= 6; ++k) {
        const cplx d = tags_[static_cast<std::size_t>(a)] -
                       tags_[static_cast<std::size_t>(b)] +
                       static_cast<double>(k) * q_;
        if (std::abs(d) < opt_.min_tag_sep)
          throw TagCollisionError(
              "tags " + std::to_string(a) + " and " + std::to_string(b) +
              " collide at quanta offset " + std::to_string(k) +
              " (separation " + std::to_string(std::abs(d)) + ")");
        for (const StructuredR* R : {&Ri_, &Rj_}) {
          for (char w : {'a', 'b', 'd'}) {
            if (std::abs(R->entry(w, d)) < opt_.pole_guard)
              throw PoleError(std::string("rule denominator entry ") + w +
                              " of " + R->name + " vanishes at " + fmt_c(d));
          }
        }
      }
    }
  }
}

RuleSet make_gate_twin(const RuleSet& rs) {
  RuleSet twin(rs.Ri_, rs.Ri_, +1, rs.tags_, 0.0, rs.opt_);
  twin.q_ = 0.0;
  twin.gate_twin_ = true;
  return twin;
}

void RuleSet::sanity_gate() const {
  if (gate_twin_ || tags_.size() < 2) return;
  // Degenerate twin (R_i on both slots, eps=+1, zero shift): every swap must
  // collapse to the commutative identity, i.e. output coefficients sum to 1.
  RuleSet twin = make_gate_twin(*this);
  auto coeff_sum = [&](const CurrentSymbol& A, const CurrentSymbol& B) {
    auto out = twin.site_rule(A, B);
    if (!out)
      throw std::logic_error("sanity gate: expected rule to fire for " +
                             to_string(A) + " " + to_string(B));
    cplx s = 0.0;
    for (const auto& [w, c] : *out) s += c;
    return s;
  };
  const double tol = 1e-9;
  auto expect_one = [&](const char* label, cplx s) {
    if (std::abs(s - 1.0) > tol)
      throw std::logic_error(std::string("sanity gate failed for ") + label +
                             ": coefficient sum " + fmt_c(s));
  };
  expect_one("k1k1", coeff_sum(sym(Kind::K1, +1, 1), sym(Kind::K1, +1, 0)));
  expect_one("k2k2", coeff_sum(sym(Kind::K2, +1, 1), sym(Kind::K2, +1, 0)));
  expect_one("k1k2", coeff_sum(sym(Kind::K1, +1, 1), sym(Kind::K2, +1, 0)));
  expect_one("k2k1", coeff_sum(sym(Kind::K2, +1, 1), sym(Kind::K1, +1, 0)));
  expect_one("ef", coeff_sum(sym(Kind::E, +1, 1), sym(Kind::F, +1, 0)));
  expect_one("cancel",
             coeff_sum(sym(Kind::K1, +1, 0, 0, true), sym(Kind::K1, +1, 0)));
}

RuleSet instantiate_catalog(const StructuredR& Ri, const StructuredR& Rj,
                            int eps, const std::vector<cplx>& tags, cplx c,
                            const RuleSetOptions& opt) {
  RuleSet rs(Ri, Rj, eps, tags, c, opt);
  rs.precheck();
  rs.sanity_gate();
  return rs;
}

}  // namespace rllf
