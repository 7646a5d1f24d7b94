#include "rllforge/rewrite.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "rllforge/types.hpp"

namespace rllf {

namespace {

// Adjacent positions where a rule fires on this word.
std::vector<std::size_t> firing_sites(const Word& w, const RuleSet& rules) {
  std::vector<std::size_t> sites;
  if (w.size() < 2) return sites;
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (rules.site_rule(w[k], w[k + 1]).has_value()) sites.push_back(k);
  return sites;
}

Word splice(const Word& w, std::size_t pos, const Word& frag) {
  Word out;
  out.reserve(w.size() - 2 + frag.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(pos));
  out.insert(out.end(), frag.begin(), frag.end());
  out.insert(out.end(), w.begin() + static_cast<long>(pos) + 2, w.end());
  return out;
}

}  // namespace

NCPoly normal_order(const NCPoly& p, const RuleSet& rules,
                    const ReduceOptions& opt, ReduceStats* stats) {
  std::vector<std::pair<Word, cplx>> work(p.terms.begin(), p.terms.end());
  std::mt19937_64 rng(opt.seed);
  NCPoly out;
  long steps = 0;
  double maxc = 0.0;
  for (const auto& [w, c] : work) maxc = std::max(maxc, std::abs(c));

  while (!work.empty()) {
    auto [word, coef] = std::move(work.back());
    work.pop_back();
    if (coef == cplx(0.0)) continue;
    auto sites = firing_sites(word, rules);
    if (sites.empty()) {
      auto& slot = out.terms[word];
      slot += coef;
      if (slot == cplx(0.0)) out.terms.erase(word);
      continue;
    }
    if (++steps > opt.budget)
      throw NonTerminationError("rewrite budget of " +
                                std::to_string(opt.budget) +
                                " steps exhausted on word " + to_string(word));
    std::size_t pos = sites.front();
    if (opt.strategy == ReduceStrategy::SeededRandom && sites.size() > 1)
      pos = sites[static_cast<std::size_t>(rng() % sites.size())];
    auto rewrite = rules.site_rule(word[pos], word[pos + 1]);
    for (const auto& [frag, rc] : *rewrite) {
      const cplx nc = coef * rc;
      if (nc == cplx(0.0)) continue;
      maxc = std::max(maxc, std::abs(nc));
      work.emplace_back(splice(word, pos, frag), nc);
    }
  }
  out.prune(opt.prune_rel);
  if (stats) {
    stats->steps = steps;
    stats->max_coeff = maxc;
  }
  return out;
}

double reduction_residual(const NCPoly& p, const RuleSet& rules,
                          const ReduceOptions& opt, NCPoly* normal_form) {
  ReduceStats st;
  NCPoly nf = normal_order(p, rules, opt, &st);
  const double res = nf.max_abs() / std::max(1.0, st.max_coeff);
  if (normal_form) *normal_form = std::move(nf);
  return res;
}

}  // namespace rllf
