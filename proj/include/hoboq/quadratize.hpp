/// @file quadratize.hpp
/// @brief Degree reduction of higher-order binary polynomials to quadratic
/// form. Two greedy pair-selection heuristics share one substitution engine;
/// each selected pair (u, v) is replaced by a fresh auxiliary variable in
/// every monomial of degree >= 3 containing it, and the product constraint
/// y = u*v is enforced afterwards by the domain's penalty gadget.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hoboq/gadgets.hpp"
#include "hoboq/poly.hpp"

namespace hoboq {

using VarPair = std::pair<VarId, VarId>;  // always ordered u < v

/// One degree-reduction step: aux replaces the pair, with a slack variable
/// alongside in Ising space.
struct Substitution {
  VarId aux;
  VarPair pair;
  std::optional<VarId> slack;
  GadgetKind kind;
};

/// Termwise rewrite of one negative Boolean monomial (no pair, no penalty).
struct FreedmanSub {
  VarId aux;
  Term term;
};

enum class PairHeuristic {
  ValueCount,  // pair covering the most degree->=3 monomials
  EdgeWeight,  // pair with the largest sum of (monomial degree - 1)
};

struct QuadratizeOptions {
  PairHeuristic heuristic = PairHeuristic::ValueCount;
  std::optional<double> penalty_weight;  // default: 1 + 2 * sum_abs_coeffs
  /// Boolean inputs only: rewrite negative monomials termwise first and run
  /// the greedy pipeline on what remains.
  bool termwise_negative = false;
};

struct QuadratizationResult {
  Polynomial quadratic;
  std::vector<Substitution> substitutions;
  std::vector<FreedmanSub> freedman_substitutions;
  double penalty_weight = 0.0;
  VarRegistry registry;

  VarId aux_count() const;
};

/// Index from ordered variable pairs to the degree->=3 monomials containing
/// both. Pairs with no monomials are absent. Ordered containers keep the
/// greedy selection deterministic.
class PairIndex {
 public:
  void add_monomial(const Term& term);
  void remove_monomial(const Term& term);

  bool empty() const { return entries_.empty(); }
  std::size_t pair_count() const { return entries_.size(); }
  const std::set<Term>* monomials_for(VarPair pair) const;

  /// Heuristic 1: largest monomial count, ties to the smallest pair.
  VarPair pick_value_count() const;
  /// Heuristic 2: largest sum of (degree - 1), ties to the smallest pair.
  VarPair pick_edge_weight() const;

 private:
  std::map<VarPair, std::set<Term>> entries_;
};

/// Stepwise reduction engine, exposed so single substitutions can be driven
/// and observed directly; quadratize() is the loop around it.
class QuadratizeEngine {
 public:
  QuadratizeEngine(const Polynomial& p, VarRegistry registry);

  bool done() const { return index_.empty(); }
  const PairIndex& index() const { return index_; }
  const std::map<Term, double>& higher() const { return higher_; }
  const Polynomial& reduced() const { return reduced_; }
  const VarRegistry& registry() const { return registry_; }

  /// Replaces `pair` with a fresh auxiliary (plus slack in Ising space) in
  /// every degree->=3 monomial containing it. Monomials dropping to degree
  /// 2 merge into the reduced polynomial. Throws if the pair is not in the
  /// index.
  const Substitution& substitute_pair(VarPair pair);

  /// Picks by the heuristic and substitutes.
  const Substitution& step(PairHeuristic heuristic);

  /// Termwise rewrite of one negative monomial currently in the table.
  const FreedmanSub& substitute_freedman(const Term& term);

  QuadratizationResult finish(std::optional<double> penalty_weight,
                              const Polynomial& original) &&;

 private:
  Domain domain_;
  VarRegistry registry_;
  std::map<Term, double> higher_;  // monomials of degree >= 3
  Polynomial reduced_;             // accumulated degree-<=2 part
  PairIndex index_;
  std::vector<Substitution> subs_;
  std::vector<FreedmanSub> freedman_;
};

/// Penalty weight 1 + 2 * sum_abs_coeffs(p): any assignment violating a
/// product constraint then costs more than any satisfying one can gain, so
/// minimizers of the assembled quadratic satisfy every substitution.
double default_penalty_weight(const Polynomial& p);

/// reduced + M * (gadget penalty per substitution). `reduced` must already
/// be quadratic.
Polynomial assemble(const Polynomial& reduced,
                    const std::vector<Substitution>& subs, double M);

/// Full pipeline: greedy reduction until no monomial of degree >= 3
/// remains, then penalty assembly. Satisfies the quadratization property:
/// for every assignment of the original variables, the minimum of the
/// result over auxiliary/slack variables equals the input's value.
QuadratizationResult quadratize(const Polynomial& p, const VarRegistry& reg,
                                const QuadratizeOptions& options = {});

}  // namespace hoboq
