#include "hoboq/quadratize.hpp"

#include <algorithm>
#include <stdexcept>

namespace hoboq {

VarId QuadratizationResult::aux_count() const {
  return registry.count_of_kind(VarKind::AuxProduct) +
         registry.count_of_kind(VarKind::AuxSlack);
}

void PairIndex::add_monomial(const Term& term) {
  for (std::size_t i = 0; i < term.size(); ++i)
    for (std::size_t j = i + 1; j < term.size(); ++j)
      entries_[{term[i], term[j]}].insert(term);
}

void PairIndex::remove_monomial(const Term& term) {
  for (std::size_t i = 0; i < term.size(); ++i)
    for (std::size_t j = i + 1; j < term.size(); ++j) {
      auto it = entries_.find({term[i], term[j]});
      if (it == entries_.end()) continue;
      it->second.erase(term);
      if (it->second.empty()) entries_.erase(it);
    }
}

const std::set<Term>* PairIndex::monomials_for(VarPair pair) const {
  auto it = entries_.find(pair);
  return it == entries_.end() ? nullptr : &it->second;
}

VarPair PairIndex::pick_value_count() const {
  if (entries_.empty())
    throw std::invalid_argument("no candidate pairs to pick from");
  const VarPair* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [pair, monomials] : entries_) {
    if (!best || monomials.size() > best_count) {
      best = &pair;
      best_count = monomials.size();
    }
  }
  return *best;
}

VarPair PairIndex::pick_edge_weight() const {
  if (entries_.empty())
    throw std::invalid_argument("no candidate pairs to pick from");
  const VarPair* best = nullptr;
  std::size_t best_weight = 0;
  for (const auto& [pair, monomials] : entries_) {
    std::size_t weight = 0;
    for (const Term& m : monomials) weight += m.size() - 1;
    if (!best || weight > best_weight) {
      best = &pair;
      best_weight = weight;
    }
  }
  return *best;
}

QuadratizeEngine::QuadratizeEngine(const Polynomial& p, VarRegistry registry)
    : domain_(p.domain()), registry_(std::move(registry)), reduced_(p.domain()) {
  for (const auto& [term, c] : p.terms()) {
    if (term.size() <= 2)
      reduced_.add_term(term, c);
    else
      higher_.emplace(term, c);
  }
  for (const auto& [term, c] : higher_) index_.add_monomial(term);
}

const Substitution& QuadratizeEngine::substitute_pair(VarPair pair) {
  const std::set<Term>* hit = index_.monomials_for(pair);
  if (!hit)
    throw std::invalid_argument(
        "pair is not present in any monomial of degree >= 3");
  std::vector<Term> affected(hit->begin(), hit->end());

  VarId aux = registry_.fresh_product_var();
  std::optional<VarId> slack;
  if (domain_ == Domain::Ising) slack = registry_.fresh_slack_var();
  GadgetKind kind = domain_ == Domain::Ising ? GadgetKind::IsingPair
                                             : GadgetKind::Rosenberg;
  subs_.push_back(Substitution{aux, pair, slack, kind});

  for (const Term& term : affected) {
    double c = higher_.at(term);
    higher_.erase(term);
    index_.remove_monomial(term);

    Term image;
    image.reserve(term.size() - 1);
    for (VarId v : term)
      if (v != pair.first && v != pair.second) image.push_back(v);
    image.insert(std::upper_bound(image.begin(), image.end(), aux), aux);

    if (image.size() <= 2) {
      reduced_.add_term(std::move(image), c);
    } else {
      auto [it, fresh] = higher_.try_emplace(image, 0.0);
      if (!fresh) index_.remove_monomial(image);
      it->second += c;
      if (std::abs(it->second) < kCoeffEpsilon)
        higher_.erase(it);
      else
        index_.add_monomial(image);
    }
  }
  return subs_.back();
}

const Substitution& QuadratizeEngine::step(PairHeuristic heuristic) {
  VarPair pair = heuristic == PairHeuristic::ValueCount
                     ? index_.pick_value_count()
                     : index_.pick_edge_weight();
  return substitute_pair(pair);
}

const FreedmanSub& QuadratizeEngine::substitute_freedman(const Term& term) {
  auto it = higher_.find(term);
  if (it == higher_.end())
    throw std::invalid_argument("monomial is not in the reduction table");
  double c = it->second;
  VarId aux = registry_.fresh_product_var();
  reduced_ = add(reduced_, freedman_negative(term, c, aux, domain_));
  higher_.erase(it);
  index_.remove_monomial(term);
  freedman_.push_back(FreedmanSub{aux, term});
  return freedman_.back();
}

QuadratizationResult QuadratizeEngine::finish(
    std::optional<double> penalty_weight, const Polynomial& original) && {
  if (!higher_.empty())
    throw std::logic_error("reduction is not complete");
  double M = penalty_weight.value_or(default_penalty_weight(original));
  if (M <= 0) throw std::invalid_argument("penalty weight must be positive");
  return QuadratizationResult{assemble(reduced_, subs_, M), std::move(subs_),
                              std::move(freedman_), M, std::move(registry_)};
}

double default_penalty_weight(const Polynomial& p) {
  return 1.0 + 2.0 * sum_abs_coeffs(p);
}

Polynomial assemble(const Polynomial& reduced,
                    const std::vector<Substitution>& subs, double M) {
  if (reduced.degree() > 2)
    throw std::invalid_argument("reduced polynomial must be quadratic");
  Polynomial out = reduced;
  for (const Substitution& sub : subs) {
    Gadget g = sub.kind == GadgetKind::IsingPair
                   ? ising_pair_penalty(sub.pair.first, sub.pair.second,
                                        sub.aux, sub.slack.value())
                   : rosenberg_penalty(sub.pair.first, sub.pair.second,
                                       sub.aux);
    if (g.penalty.domain() != out.domain())
      throw std::invalid_argument("gadget domain does not match polynomial");
    out = add(out, scale(g.penalty, M));
  }
  return out;
}

QuadratizationResult quadratize(const Polynomial& p, const VarRegistry& reg,
                                const QuadratizeOptions& options) {
  if (options.penalty_weight && *options.penalty_weight <= 0)
    throw std::invalid_argument("penalty weight must be positive");
  if (options.termwise_negative && p.domain() != Domain::Boolean)
    throw std::invalid_argument(
        "termwise negative-monomial mode requires a Boolean polynomial");

  QuadratizeEngine engine(p, reg);
  if (options.termwise_negative) {
    std::vector<Term> negatives;
    for (const auto& [term, c] : engine.higher())
      if (c < 0) negatives.push_back(term);
    for (const Term& term : negatives) engine.substitute_freedman(term);
  }
  while (!engine.done()) engine.step(options.heuristic);
  return std::move(engine).finish(options.penalty_weight, p);
}

}  // namespace hoboq
