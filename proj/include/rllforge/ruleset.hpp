#pragma once
// Oriented rewrite rules instantiated from the current-relation catalog at
// fixed numeric tags. Rule output coefficients are complex numbers built from
// entry ratios of the two R-matrices R^{(i)} (left slot, f/F moves) and
// R^{(j)} (right slot, e/E moves).

#include <optional>
#include <utility>
#include <vector>

#include "rllforge/ncpoly.hpp"
#include "rllforge/rmatrix.hpp"

namespace rllf {

struct RuleSetOptions {
  bool corrupt_kk3 = false;   // negative-control fixture: invert the k1-k2 ratio
  double pole_guard = 1e-8;   // minimum |entry value| for rule denominators
  double min_tag_sep = 1e-4;  // minimum distance between shifted tag values
};

// A fired rule: list of (replacement fragment, coefficient) for one adjacent
// symbol pair; the fragment splices in place of the pair.
using RuleOutput = std::vector<std::pair<Word, cplx>>;

class RuleSet {
 public:
  RuleSet(StructuredR Ri, StructuredR Rj, int eps, std::vector<cplx> tags,
          cplx c, RuleSetOptions opt = {});

  cplx tag_value(const SpectralTag& t) const;
  cplx q() const { return q_; }
  int eps() const { return eps_; }
  const StructuredR& Ri() const { return Ri_; }
  const StructuredR& Rj() const { return Rj_; }
  const std::vector<cplx>& tags() const { return tags_; }
  const RuleSetOptions& options() const { return opt_; }

  // nullopt when (A,B) already respects the canonical order (including stable
  // ties); otherwise the oriented replacement for the pair A B.
  std::optional<RuleOutput> site_rule(const CurrentSymbol& A,
                                      const CurrentSymbol& B) const;

 private:
  cplx ei(char which, cplx z) const;  // guarded entry of R^{(i)}
  cplx ej(char which, cplx z) const;  // guarded entry of R^{(j)}
  cplx guarded_div(cplx num, cplx den, const char* rule, cplx z) const;
  void precheck() const;
  void sanity_gate() const;

  StructuredR Ri_, Rj_;
  int eps_;
  std::vector<cplx> tags_;
  cplx q_;
  RuleSetOptions opt_;
  bool gate_twin_ = false;  // suppresses recursion while gating
  friend RuleSet make_gate_twin(const RuleSet&);
  friend RuleSet instantiate_catalog(const StructuredR&, const StructuredR&,
                                     int, const std::vector<cplx>&, cplx,
                                     const RuleSetOptions&);
};

// Catalog instantiation with construction-time checks: tag-collision guard,
// denominator pre-check over reachable differences, and the commutative
// collapse sanity gate on the degenerate twin.
RuleSet instantiate_catalog(const StructuredR& Ri, const StructuredR& Rj,
                            int eps, const std::vector<cplx>& tags, cplx c,
                            const RuleSetOptions& opt = {});

}  // namespace rllf
