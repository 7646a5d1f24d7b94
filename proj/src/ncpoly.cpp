#include "rllforge/ncpoly.hpp"

#include <sstream>

namespace rllf {

std::string to_string(const CurrentSymbol& s) {
  static const char* names[] = {"f", "k1", "k2", "e"};
  std::ostringstream os;
  os << names[static_cast<int>(s.kind)] << (s.sign > 0 ? "+" : "-") << "("
     << s.tag.base_index;
  if (s.tag.shift_quanta != 0)
    os << (s.tag.shift_quanta > 0 ? "+" : "") << s.tag.shift_quanta << "q";
  os << ")";
  if (s.inverted) os << "^-1";
  return os.str();
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += to_string(w[i]);
  }
  return out;
}

int ef_weight(const Word& w) {
  int wt = 0;
  for (const auto& s : w) {
    if (s.kind == Kind::E) ++wt;
    if (s.kind == Kind::F) --wt;
  }
  return wt;
}

double NCPoly::max_abs() const {
  double m = 0.0;
  for (const auto& [w, c] : terms) m = std::max(m, std::abs(c));
  return m;
}

NCPoly& NCPoly::add(const NCPoly& o, cplx scale) {
  for (const auto& [w, c] : o.terms) {
    auto [it, fresh] = terms.try_emplace(w, cplx(0.0));
    it->second += scale * c;
    if (it->second == cplx(0.0)) terms.erase(it);
  }
  return *this;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
  NCPoly out;
  for (const auto& [w1, c1] : terms)
    for (const auto& [w2, c2] : o.terms) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      out.terms[w] += c1 * c2;
    }
  return out;
}

NCPoly NCPoly::operator*(cplx v) const {
  NCPoly out;
  if (v == cplx(0.0)) return out;
  for (const auto& [w, c] : terms) out.terms[w] = c * v;
  return out;
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  NCPoly out = *this;
  out.add(o);
  return out;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
  NCPoly out = *this;
  out.add(o, cplx(-1.0));
  return out;
}

NCPoly& NCPoly::prune(double rel) {
  double cut = rel * max_abs();
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) <= cut)
      it = terms.erase(it);
    else
      ++it;
  }
  return *this;
}

}  // namespace rllf
