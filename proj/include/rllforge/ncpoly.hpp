#pragma once
// Noncommutative polynomials in Gauss-current symbols. Words are sequences of
// CurrentSymbol; the canonical target order is F-kinds, then K-kinds, then
// E-kinds (mirroring the Gauss triangular form), each kind sorted by
// (sign, base_index, shift_quanta) with + before -.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rllforge/types.hpp"

namespace rllf {

// Numeric value = table[base_index] + shift_quanta * (hbar c / 4).
struct SpectralTag {
  std::int32_t base_index = 0;
  std::int32_t shift_quanta = 0;
  auto operator<=>(const SpectralTag&) const = default;
};

enum class Kind : std::uint8_t { F = 0, K1 = 1, K2 = 2, E = 3 };

inline int kind_rank(Kind k) {
  return k == Kind::F ? 0 : (k == Kind::E ? 2 : 1);
}

struct CurrentSymbol {
  Kind kind = Kind::K1;
  std::int8_t sign = +1;  // +1 or -1
  SpectralTag tag;
  bool inverted = false;  // only K kinds may be inverted
  auto operator<=>(const CurrentSymbol&) const = default;
};

inline CurrentSymbol sym(Kind k, int sign, std::int32_t base,
                         std::int32_t quanta = 0, bool inverted = false) {
  if (inverted && (k == Kind::E || k == Kind::F))
    throw std::invalid_argument("only K symbols may be inverted");
  return CurrentSymbol{k, static_cast<std::int8_t>(sign),
                       SpectralTag{base, quanta}, inverted};
}

// Within-kind ordering key; + sorts before -.
inline std::tuple<int, std::int32_t, std::int32_t> tag_key(const CurrentSymbol& s) {
  return {s.sign > 0 ? 0 : 1, s.tag.base_index, s.tag.shift_quanta};
}

using Word = std::vector<CurrentSymbol>;

std::string to_string(const CurrentSymbol& s);
std::string to_string(const Word& w);

// e counts +1, f counts -1; the grading conserved by every rewrite rule.
int ef_weight(const Word& w);

class NCPoly {
 public:
  std::map<Word, cplx> terms;

  static NCPoly scalar(cplx v) {
    NCPoly p;
    if (v != cplx(0.0)) p.terms[{}] = v;
    return p;
  }
  static NCPoly symbol(const CurrentSymbol& s) {
    NCPoly p;
    p.terms[{s}] = cplx(1.0);
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  double max_abs() const;

  NCPoly& add(const NCPoly& o, cplx scale = cplx(1.0));
  NCPoly operator*(const NCPoly& o) const;  // concatenation product
  NCPoly operator*(cplx v) const;
  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;

  // Drop terms below rel * max_abs() (and exact zeros).
  NCPoly& prune(double rel = 1e-14);
};

}  // namespace rllf
