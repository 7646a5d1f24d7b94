#pragma once
// Machine verification of the graded exchange relation between two L-operator
// copies: expand both sides componentwise over the symbol algebra, reduce to
// normal form, and require cancellation.

#include <array>
#include <cstdint>
#include <string>

#include "rllforge/family.hpp"
#include "rllforge/rewrite.hpp"
#include "rllforge/ruleset.hpp"
#include "rllforge/sampling.hpp"
#include "rllforge/types.hpp"

namespace rllf {

// Sign assignment (s1 for the u-copy, s2 for the v-copy).
enum class SignPair { PP, MM, PM };
int sign1(SignPair p);
int sign2(SignPair p);
std::string to_string(SignPair p);

// The 16 components of R(u,v) L1 W L2 W - W L2 W L1 R(u,v), rows and columns
// ordered (11),(12),(21),(22). Mixed signs require |u| < |v| (TagShiftError
// otherwise). Tag 0 carries u, tag 1 carries v.
struct ComponentSet {
  std::array<NCPoly, 16> comps;
  cplx delta_i = 0.0, delta_j = 0.0;  // spectral arguments fed to R_i, R_j
};
ComponentSet expand_components(const RuleSet& rules, SignPair pair);

// Every word in component (row, col) carries raising-minus-lowering weight
// (col row-sum) - (row row-sum); violations indicate a corrupted expansion.
bool weight_homogeneous(const ComponentSet& cs);

struct VerifyOptions {
  RuleSetOptions rules;
  long budget = 100000;
  double prune_rel = 1e-14;
  double cross_tol = 1e-10;  // deterministic vs seeded-random agreement
};

// Exchange-relation check for orbit members (i, j); the shift charge is the
// accumulated orbit charge between i and j. Samples tag pairs, runs all three
// sign assignments, reduces every component under both strategies.
CheckReport verify_components(const FamilyOrbit& orbit, int i, int j, int eps,
                              const SampleSpec& spec, double tol = 1e-9,
                              const VerifyOptions& opt = {});

struct EFOptions {
  RuleSetOptions rules;
  long budget = 100000;
  double prune_rel = 1e-14;
  double cross_tol = 1e-10;
  bool wrong_shift = false;  // negative control: double the quarter-shift
};

// Crossed-sign exchange between diagonal factors and the combined raising /
// lowering currents E(v) = e+(v-) - e-(v+), F(v) = f+(v+) - f-(v-); the eight
// relations ke1..ke4, kf1..kf4 must reduce to zero.
CheckReport verify_EF_relations(const FamilyOrbit& orbit, int i, int j,
                                int eps, cplx c, const SampleSpec& spec,
                                double tol = 1e-9, const EFOptions& opt = {});

}  // namespace rllf
