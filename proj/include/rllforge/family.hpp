#pragma once
// Family-generating operators rho_n^{+-} and morphism bookkeeping tau^{(m,n)}.
// Member parameters are recomputed from the base in closed form (fixed fold
// order), so rho^- after rho^+ returns bit-identical parameters.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "rllforge/rmatrix.hpp"

namespace rllf {

enum class RhoKind { Identity, PeriodRecursion, PeriodReplace, PhaseShift };

// Per-index complex value with a default (c_n charges, xi_n shifts).
struct IndexedValue {
  cplx def{0.0, 0.0};
  std::map<int, cplx> at;
  cplx operator()(int n) const {
    auto it = at.find(n);
    return it == at.end() ? def : it->second;
  }
};

struct RhoSpec {
  RhoKind kind = RhoKind::Identity;
  IndexedValue charge;              // c_n: period recursion increments, u+- shifts
  IndexedValue shift;               // xi_n: phase-shift increments
  std::map<int, cplx> eta_table;    // explicit eta^(n) for period_replace
  std::map<int, RhoKind> override_kind;  // per-index step-kind overrides

  RhoKind step_kind(int n) const {
    auto it = override_kind.find(n);
    return it == override_kind.end() ? kind : it->second;
  }
};

// Closed-form member parameters at index n from the base record.
RParams member_params(const RhoSpec& rho, const RParams& base, int n);

// Single orbit step. n is the index of R (must match R's provenance when R
// carries one); returns member(n + sign).
StructuredR apply_rho(const RhoSpec& rho, int sign, int n, const StructuredR& R);

class FamilyOrbit {
 public:
  FamilyOrbit(StructuredR base, RhoSpec rho, int n_min, int n_max);

  const StructuredR& member(int n) const;  // memoized, exact recomputation
  cplx charge(int n) const { return rho_.charge(n); }
  // c^{(i,j)} = c_i + ... + c_{j-1} for i <= j (0 when i == j).
  cplx charge_range(int i, int j) const;
  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  const RhoSpec& rho() const { return rho_; }
  const StructuredR& base() const { return base_; }

 private:
  StructuredR base_;
  RhoSpec rho_;
  int n_min_, n_max_;
  mutable std::map<int, StructuredR> memo_;
  mutable std::mutex mu_;
};

FamilyOrbit orbit(const StructuredR& base, const RhoSpec& rho, int n_min,
                  int n_max);

// tau^{(m,n)}: the parameter map taking member(n) data to member(m) data.
struct ParamMap {
  int from = 0;
  int to = 0;
  bool operator==(const ParamMap&) const = default;
};

ParamMap tau(const FamilyOrbit& orb, int m, int n);
// tau(m,p) composed with tau(p,n) -> tau(m,n); throws on index mismatch.
ParamMap compose(const ParamMap& outer, const ParamMap& inner);
// Apply the map: recompute member(map.to) parameters from the orbit base.
RParams apply_map(const FamilyOrbit& orb, const ParamMap& map);

// Unitarity + YBE on a set of named R images (admissibility core).
CheckReport check_images_admissible(
    const std::vector<std::pair<std::string, StructuredR>>& images,
    const SampleSpec& spec, double tol = 1e-9);

// Runs the core on apply_rho(+,0,R) and apply_rho(-,0,R).
CheckReport check_rho_admissible(const RhoSpec& rho, const StructuredR& R,
                                 const SampleSpec& spec, double tol = 1e-9);

}  // namespace rllf
