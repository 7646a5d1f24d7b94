#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rllforge/rewrite.hpp"
#include "rllforge/sampling.hpp"

using namespace rllf;

namespace {

const cplx kEta = 1.0 / 3.141592653589793238462643383279502884;
const cplx kHbar = 0.3;

RuleSet degenerate_rules(std::vector<cplx> tags, int eps = +1) {
  StructuredR R = builtin_trig(kEta, kHbar);
  return instantiate_catalog(R, R, eps, tags, 0.0, {});
}

NCPoly word_poly(const Word& w, cplx coeff = cplx(1.0)) {
  NCPoly p;
  p.terms[w] = coeff;
  return p;
}

cplx coeff_of(const NCPoly& p, const Word& w) {
  auto it = p.terms.find(w);
  return it == p.terms.end() ? cplx(0.0) : it->second;
}

}  // namespace

TEST_CASE("tag values combine base table and quarter-shift quanta") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RuleSet rules = instantiate_catalog(R, R, +1, {0.5, 1.43}, 2.0, {});
  CHECK(rules.q() == kHbar * 2.0 / 4.0);
  CHECK(rules.tag_value({0, 0}) == cplx(0.5));
  CHECK(rules.tag_value({1, 0}) == cplx(1.43));
  CHECK(rules.tag_value({1, -1}) == cplx(1.43) - rules.q());
  CHECK(rules.tag_value({0, 3}) == cplx(0.5) + 3.0 * rules.q());
}

TEST_CASE("like-kind diagonal reorder has unit coefficient for trig a=1") {
  RuleSet rules = degenerate_rules({0.0, 0.7});
  Word w{sym(Kind::K1, +1, 1), sym(Kind::K1, +1, 0)};
  NCPoly nf = normal_order(word_poly(w), rules);
  REQUIRE(nf.terms.size() == 1);
  Word want{sym(Kind::K1, +1, 0), sym(Kind::K1, +1, 1)};
  CHECK(std::abs(coeff_of(nf, want) - 1.0) < 1e-15);
}

TEST_CASE("raising symbol moves past a diagonal with the two-term rule") {
  // e+(v) k1+(u) -> (a/b)(u-v) k1+(u) e+(v) - (s/b)(u-v) k1+(u) e+(u)
  RuleSet rules = degenerate_rules({1.3, 0.6});  // tag0 = u, tag1 = v
  const StructuredR& R = rules.Ri();
  Word w{sym(Kind::E, +1, 1), sym(Kind::K1, +1, 0)};
  NCPoly nf = normal_order(word_poly(w), rules);
  REQUIRE(nf.terms.size() == 2);
  cplx d = cplx(1.3) - cplx(0.6);
  Word keep{sym(Kind::K1, +1, 0), sym(Kind::E, +1, 1)};
  Word repl{sym(Kind::K1, +1, 0), sym(Kind::E, +1, 0)};
  CHECK(std::abs(coeff_of(nf, keep) - R.a(d) / R.b(d)) < 1e-14);
  CHECK(std::abs(coeff_of(nf, repl) + R.s(d) / R.b(d)) < 1e-14);
}

TEST_CASE("raising-lowering exchange emits the two diagonal bilinears") {
  for (int eps : {+1, -1}) {
    RuleSet rules = degenerate_rules({1.3, 0.6}, eps);
    const StructuredR& R = rules.Ri();
    cplx d = cplx(1.3) - cplx(0.6);
    cplx Phi = R.t(d) / R.b(d);
    Word w{sym(Kind::E, +1, 0), sym(Kind::F, +1, 1)};
    NCPoly nf = normal_order(word_poly(w), rules);
    REQUIRE(nf.terms.size() == 3);
    Word swapped{sym(Kind::F, +1, 1), sym(Kind::E, +1, 0)};
    Word ku{sym(Kind::K1, +1, 0, 0, true), sym(Kind::K2, +1, 0)};
    Word kv{sym(Kind::K2, +1, 1), sym(Kind::K1, +1, 1, 0, true)};
    const cplx e = static_cast<double>(eps);
    CHECK(std::abs(coeff_of(nf, swapped) - e) < 1e-15);
    CHECK(std::abs(coeff_of(nf, ku) + e * Phi) < 1e-14);
    CHECK(std::abs(coeff_of(nf, kv) - e * Phi) < 1e-14);
  }
}

TEST_CASE("k1 past k2 between neighbor members carries the frozen ratio") {
  StructuredR Ri = builtin_trig(kEta, 0.3);
  StructuredR Rj = builtin_trig(kEta, 0.4);
  Word w{sym(Kind::K1, +1, 1), sym(Kind::K2, +1, 0)};
  SUBCASE("straight") {
    RuleSet rules = instantiate_catalog(Ri, Rj, +1, {0.0, 0.7}, 0.0, {});
    NCPoly nf = normal_order(word_poly(w), rules);
    REQUIRE(nf.terms.size() == 1);
    Word want{sym(Kind::K2, +1, 0), sym(Kind::K1, +1, 1)};
    // b_j(0.7)/b_i(0.7) = sinh(1.0)/sinh(1.1)
    CHECK(std::abs(coeff_of(nf, want) - cplx(0.8798737840116908)) < 1e-13);
  }
  SUBCASE("corrupted fixture inverts the ratio") {
    RuleSetOptions opt;
    opt.corrupt_kk3 = true;
    RuleSet rules = instantiate_catalog(Ri, Rj, +1, {0.0, 0.7}, 0.0, opt);
    NCPoly nf = normal_order(word_poly(w), rules);
    Word want{sym(Kind::K2, +1, 0), sym(Kind::K1, +1, 1)};
    CHECK(std::abs(coeff_of(nf, want) - cplx(1.0) / cplx(0.8798737840116908)) <
          1e-13);
  }
}

TEST_CASE("inverse pairs cancel to the empty word") {
  RuleSet rules = degenerate_rules({0.0, 0.7});
  Word left{sym(Kind::K1, +1, 0, 0, true), sym(Kind::K1, +1, 0)};
  Word right{sym(Kind::K1, +1, 0), sym(Kind::K1, +1, 0, 0, true)};
  for (const Word& w : {left, right}) {
    NCPoly nf = normal_order(word_poly(w), rules);
    REQUIRE(nf.terms.size() == 1);
    CHECK(std::abs(coeff_of(nf, Word{}) - 1.0) < 1e-15);
  }
  // like-signed like-tag pair with equal inversion is already stable
  Word stable{sym(Kind::K2, -1, 1), sym(Kind::K2, -1, 1)};
  NCPoly nf = normal_order(word_poly(stable), rules);
  CHECK(nf.terms.count(stable) == 1);
}

TEST_CASE("raising or lowering next to an inverted diagonal is out of sector") {
  RuleSet rules = degenerate_rules({0.0, 0.7});
  Word w{sym(Kind::E, +1, 1), sym(Kind::K1, +1, 0, 0, true)};
  CHECK_THROWS_AS(normal_order(word_poly(w), rules), DeltaSectorError);
  Word v{sym(Kind::K2, +1, 0, 0, true), sym(Kind::F, +1, 1)};
  CHECK_THROWS_AS(normal_order(word_poly(v), rules), DeltaSectorError);
}

TEST_CASE("construction-time guards") {
  StructuredR R = builtin_trig(kEta, kHbar);
  SUBCASE("tag collision") {
    CHECK_THROWS_AS(instantiate_catalog(R, R, +1, {0.5, 0.5 + 1e-6}, 0.0, {}),
                    TagCollisionError);
  }
  SUBCASE("vanishing rule denominator") {
    // b(i*pi) = sinh(i*pi)/sinh(i*pi + 0.3) = 0 for eta = 1/pi
    CHECK_THROWS_AS(
        instantiate_catalog(R, R, +1, {cplx(0.0), cplx(0.0, 3.141592653589793)},
                            0.0, {}),
        PoleError);
  }
  SUBCASE("builtins clear the gate") {
    CHECK_NOTHROW(instantiate_catalog(R, R, -1, {0.05, 0.85}, 1.0, {}));
    CHECK_NOTHROW(instantiate_catalog(builtin_rational(kHbar),
                                      builtin_rational(kHbar), +1, {0.1, 0.8},
                                      1.0, {}));
  }
}

TEST_CASE("step budget exhaustion names the offending word") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RuleSet rules = instantiate_catalog(R, R, +1, {0.0, 0.7}, 1.0, {});
  Word w{sym(Kind::E, +1, 1), sym(Kind::K1, +1, 0), sym(Kind::F, -1, 1)};
  ReduceOptions opt;
  opt.budget = 2;
  CHECK_THROWS_AS(normal_order(word_poly(w), rules, opt), NonTerminationError);
}

TEST_CASE("normal forms are idempotent fixed points") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RuleSet rules = instantiate_catalog(R, R, +1, {0.2, 1.1}, 1.0, {});
  Word w{sym(Kind::E, +1, 1), sym(Kind::K1, +1, 0), sym(Kind::F, -1, 1)};
  NCPoly nf = normal_order(word_poly(w), rules);
  CHECK(nf.terms.size() > 1);  // nontrivial reduction happened
  NCPoly again = normal_order(nf, rules);
  NCPoly diff = again - nf;
  CHECK(diff.max_abs() <= 1e-12 * std::max(1.0, nf.max_abs()));
}

TEST_CASE("deterministic and seeded-random orders agree on random words") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RuleSet rules = instantiate_catalog(R, R, -1, {0.0, 0.9}, 1.0, {});
  Sampler smp(4242);
  const Kind kinds[4] = {Kind::F, Kind::K1, Kind::K2, Kind::E};
  int accepted = 0;
  int attempts = 0;
  while (accepted < 100 && attempts < 20000) {
    ++attempts;
    // Random words over the domain the catalog is designed for: the shapes
    // two-copy expansions and diagonal-current relations produce. Each base
    // index carries one sign, diagonals sit at quanta 0, at most two raising
    // and two lowering currents appear (three same-kind currents cycle under
    // the quadratic exchange rule), and quarter-shifted currents occur only
    // in diagonal-current pairs.
    int len = 1 + int(smp.raw() % 5);
    int sign_of_base[2] = {(smp.raw() % 2) ? +1 : -1,
                           (smp.raw() % 2) ? +1 : -1};
    std::vector<std::pair<Kind, int>> draws;
    int n_cur = 0;
    for (int i = 0; i < len; ++i) {
      Kind k = kinds[smp.raw() % 4];
      n_cur += (k == Kind::E || k == Kind::F);
      draws.emplace_back(k, int(smp.raw() % 2));
    }
    int n_e = 0, n_f = 0;
    for (auto& [k, b] : draws) {
      (void)b;
      n_e += k == Kind::E;
      n_f += k == Kind::F;
    }
    if (n_e > 2 || n_f > 2) continue;
    Word w;
    for (auto& [k, b] : draws) {
      int quanta = 0;
      if ((k == Kind::E || k == Kind::F) && n_cur == 1 && len - n_cur <= 1)
        quanta = int(smp.raw() % 3) - 1;
      w.push_back(sym(k, sign_of_base[b], b, quanta));
    }
    try {
      ReduceOptions det;
      ReduceStats stats;
      NCPoly a = normal_order(word_poly(w), rules, det, &stats);
      ReduceOptions rnd;
      rnd.strategy = ReduceStrategy::SeededRandom;
      rnd.seed = 1000 + accepted;
      NCPoly b = normal_order(word_poly(w), rules, rnd);
      NCPoly diff = a - b;
      CHECK(diff.max_abs() <= 1e-10 * std::max(1.0, stats.max_coeff));
      // grading conservation: every surviving word keeps the input weight
      for (const auto& [word, coeff] : a.terms) {
        (void)coeff;
        CHECK(ef_weight(word) == ef_weight(w));
      }
      ++accepted;
    } catch (const PoleError&) {
      // coincident shifted tags inside a rule argument; skip this word
    } catch (const DeltaSectorError&) {
      // exchange bilinears introduce inverted diagonals; words that then
      // require a current to cross one lie outside the ordering domain
    } catch (const NonTerminationError&) {
      // defensive: skip any residual non-terminating shape
    }
  }
  CHECK(accepted == 100);
}

TEST_CASE("pruning drops relatively tiny coefficients") {
  NCPoly p;
  p.terms[{sym(Kind::K1, +1, 0)}] = 1.0;
  p.terms[{sym(Kind::K1, +1, 1)}] = 1e-20;
  p.prune(1e-14);
  CHECK(p.terms.size() == 1);
  CHECK(p.terms.count({sym(Kind::K1, +1, 0)}) == 1);
}

TEST_CASE("polynomial arithmetic basics") {
  NCPoly a = NCPoly::symbol(sym(Kind::E, +1, 0));
  NCPoly b = NCPoly::symbol(sym(Kind::F, +1, 1));
  NCPoly prod = a * b;
  REQUIRE(prod.terms.size() == 1);
  Word w{sym(Kind::E, +1, 0), sym(Kind::F, +1, 1)};
  CHECK(prod.terms.count(w) == 1);
  NCPoly zero = prod - prod;
  CHECK(zero.is_zero());
  CHECK(ef_weight(w) == 0);
  CHECK(ef_weight({sym(Kind::E, +1, 0), sym(Kind::E, -1, 1)}) == 2);
  CHECK(to_string(w) != to_string(Word{}));
}
