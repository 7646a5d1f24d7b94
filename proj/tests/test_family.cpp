#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rllforge/family.hpp"

using namespace rllf;

namespace {

const double kPi = 3.141592653589793238462643383279502884;
const cplx kEta = 1.0 / kPi;
const cplx kHbar = 0.3;

RhoSpec phase_shift(cplx xi) {
  RhoSpec rho;
  rho.kind = RhoKind::PhaseShift;
  rho.shift.def = xi;
  return rho;
}

RhoSpec period_recursion(cplx c) {
  RhoSpec rho;
  rho.kind = RhoKind::PeriodRecursion;
  rho.charge.def = c;
  return rho;
}

}  // namespace

TEST_CASE("period recursion accumulates the reciprocal period") {
  StructuredR R = builtin_trig(kEta, kHbar);
  StructuredR up = apply_rho(period_recursion(1.0), +1, 0, R);
  // 1/eta' = 1/eta + hbar*c = pi + 0.3
  CHECK(std::abs(cplx(1.0) / up.params.eta - cplx(kPi + 0.3)) < 1e-15);
  CHECK(up.params.hbar == kHbar);
  CHECK(up.params.member_n == 1);
}

TEST_CASE("phase shift moves hbar and inverts exactly") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RhoSpec rho = phase_shift(0.1);
  StructuredR up = apply_rho(rho, +1, 0, R);
  CHECK(up.params.hbar == cplx(0.4));
  CHECK(up.params.eta == kEta);
  StructuredR back = apply_rho(rho, -1, 1, up);
  CHECK(back.params.hbar == kHbar);  // bit-exact roundtrip
  CHECK(back.params.eta == kEta);
  CHECK(back.params.member_n == 0);
}

TEST_CASE("identity rho returns parameter-identical members") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RhoSpec rho;  // Identity
  StructuredR up = apply_rho(rho, +1, 0, R);
  CHECK(up.params.eta == R.params.eta);
  CHECK(up.params.hbar == R.params.hbar);
  FamilyOrbit orb = orbit(R, rho, -3, 3);
  for (int n = -3; n <= 3; ++n) {
    CHECK(orb.member(n).params.eta == R.params.eta);
    CHECK(orb.member(n).params.hbar == R.params.hbar);
  }
}

TEST_CASE("phase shift orbit enumerates the arithmetic hbar ladder") {
  StructuredR R = builtin_trig(kEta, kHbar);
  FamilyOrbit orb = orbit(R, phase_shift(0.1), -2, 2);
  const double want[5] = {0.1, 0.2, 0.3, 0.4, 0.5};
  for (int n = -2; n <= 2; ++n)
    CHECK(std::abs(orb.member(n).params.hbar - cplx(want[n + 2])) < 1e-15);
  CHECK(orb.member(0).params.hbar == kHbar);  // base verbatim
}

TEST_CASE("period recursion roundtrip is bit-exact across the range") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RhoSpec rho = period_recursion(1.0);
  FamilyOrbit orb = orbit(R, rho, -3, 3);
  for (int n = -3; n <= 2; ++n) {
    StructuredR up = apply_rho(rho, +1, n, orb.member(n));
    StructuredR back = apply_rho(rho, -1, n + 1, up);
    CHECK(back.params.eta == orb.member(n).params.eta);
    CHECK(back.params.hbar == orb.member(n).params.hbar);
    // single step from member(n) agrees with the direct member(n+1)
    CHECK(up.params.eta == orb.member(n + 1).params.eta);
  }
}

TEST_CASE("mostly-identity family is nontrivial at one site only") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RhoSpec rho;  // Identity everywhere ...
  rho.override_kind[0] = RhoKind::PhaseShift;  // ... except the step 0 -> 1
  rho.shift.at[0] = 0.1;
  FamilyOrbit orb = orbit(R, rho, -2, 2);
  CHECK(orb.member(-2).params.hbar == kHbar);
  CHECK(orb.member(-1).params.hbar == kHbar);
  CHECK(orb.member(0).params.hbar == kHbar);
  CHECK(std::abs(orb.member(1).params.hbar - cplx(0.4)) < 1e-15);
  // identity steps above 1 keep the shifted value (plateau)
  CHECK(orb.member(2).params.hbar == orb.member(1).params.hbar);
}

TEST_CASE("period replace looks up the table and reports missing entries") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RhoSpec rho;
  rho.kind = RhoKind::PeriodReplace;
  rho.eta_table[1] = 0.5;
  rho.eta_table[-1] = 2.0;
  StructuredR up = apply_rho(rho, +1, 0, R);
  CHECK(up.params.eta == cplx(0.5));
  CHECK(up.params.hbar == kHbar);
  StructuredR dn = apply_rho(rho, -1, 0, R);
  CHECK(dn.params.eta == cplx(2.0));
  RhoSpec sparse;
  sparse.kind = RhoKind::PeriodReplace;
  sparse.eta_table[1] = 0.5;
  CHECK_THROWS_AS(apply_rho(sparse, -1, 0, R), MissingParameterError);
}

TEST_CASE("admissibility passes for builtin-preserving rules") {
  SampleSpec spec;
  spec.seed = 41;
  spec.count = 15;
  StructuredR R = builtin_trig(kEta, kHbar);
  SUBCASE("phase shift") {
    CheckReport rep = check_rho_admissible(phase_shift(0.1), R, spec, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.max_residual < 1e-10);
  }
  SUBCASE("period recursion") {
    CheckReport rep = check_rho_admissible(period_recursion(1.0), R, spec, 1e-9);
    CHECK(rep.pass);
  }
  SUBCASE("period replace") {
    RhoSpec rho;
    rho.kind = RhoKind::PeriodReplace;
    rho.eta_table[1] = 0.5;
    rho.eta_table[-1] = 2.0;
    CheckReport rep = check_rho_admissible(rho, R, spec, 1e-9);
    CHECK(rep.pass);
  }
}

TEST_CASE("rescaling only the t entry is not admissible") {
  SampleSpec spec;
  spec.seed = 43;
  spec.count = 15;
  StructuredR R = builtin_trig(kEta, kHbar);
  StructuredR img = R;
  EntryFn t = R.t;
  img.t = [t](cplx u) { return 1.3 * t(u); };
  CheckReport rep = check_images_admissible({{"t-rescale", img}}, spec, 1e-9);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_residual > 1e-3);
  bool unit_failed = false;
  for (const auto& f : rep.failures)
    if (f.where.find("unitarity") != std::string::npos) unit_failed = true;
  CHECK(unit_failed);
}

TEST_CASE("tau maps compose, invert, and act exactly") {
  StructuredR R = builtin_trig(kEta, kHbar);
  FamilyOrbit orb = orbit(R, phase_shift(0.1), -3, 3);
  ParamMap t21 = tau(orb, 2, 1);
  ParamMap t10 = tau(orb, 1, 0);
  ParamMap t20 = compose(t21, t10);
  CHECK(t20 == tau(orb, 2, 0));
  // inverse composition collapses to the identity map on the index
  ParamMap t12 = tau(orb, 1, 2);
  ParamMap id2 = compose(t21, t12);
  CHECK(id2 == tau(orb, 2, 2));
  CHECK(apply_map(orb, id2).hbar == orb.member(2).params.hbar);
  // action: tau(m,n) produces member(m) parameters, bit-exact
  CHECK(apply_map(orb, t20).hbar == orb.member(2).params.hbar);
  CHECK(apply_map(orb, tau(orb, -3, 0)).hbar == orb.member(-3).params.hbar);
  // identity-orbit taus act as the identity on parameters for all (m,n)
  FamilyOrbit iorb = orbit(R, RhoSpec{}, -2, 2);
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) {
      RParams p = apply_map(iorb, tau(iorb, m, n));
      CHECK(p.eta == R.params.eta);
      CHECK(p.hbar == R.params.hbar);
    }
  CHECK_THROWS_AS(compose(tau(orb, 2, 1), tau(orb, 0, -1)), RangeError);
}

TEST_CASE("range violations are rejected") {
  StructuredR R = builtin_trig(kEta, kHbar);
  FamilyOrbit orb = orbit(R, phase_shift(0.1), -2, 2);
  CHECK_THROWS_AS(orb.member(3), RangeError);
  CHECK_THROWS_AS(orb.member(-3), RangeError);
  CHECK_THROWS_AS(tau(orb, 3, 0), RangeError);
  CHECK_THROWS_AS(orbit(R, phase_shift(0.1), 1, 3), RangeError);
  CHECK_THROWS_AS(apply_rho(phase_shift(0.1), 0, 0, R), std::invalid_argument);
}

TEST_CASE("charge bookkeeping sums the window") {
  StructuredR R = builtin_trig(kEta, kHbar);
  RhoSpec rho = period_recursion(1.0);
  rho.charge.at[1] = 3.0;
  FamilyOrbit orb = orbit(R, rho, -2, 2);
  CHECK(orb.charge_range(0, 0) == cplx(0.0));
  CHECK(orb.charge_range(0, 1) == cplx(1.0));
  CHECK(orb.charge_range(0, 2) == cplx(4.0));  // c_0 + c_1 = 1 + 3
  CHECK_THROWS_AS(orb.charge_range(2, 0), RangeError);
}
