/// @file encoders.hpp
/// @brief Higher-order polynomial encodings of hypergraph and MAX-SAT
/// problems. All encoders emit minimization-form polynomials; objectives
/// that are naturally maximized (covering, cut) are negated.
#pragma once

#include <optional>
#include <vector>

#include "hoboq/poly.hpp"

namespace hoboq {

struct Hypergraph {
  std::uint32_t n = 0;                     // node count, ids 0..n-1
  std::vector<std::vector<VarId>> edges;   // each sorted, non-empty
  std::optional<std::vector<double>> weights;  // parallel to edges

  /// Throws std::invalid_argument on empty edges, out-of-range node ids or
  /// a weight vector of the wrong length.
  void validate() const;
};

struct CnfClause {
  std::vector<VarId> positive;  // S_c^+, variables appearing unnegated
  std::vector<VarId> negative;  // S_c^-, variables appearing negated
  double penalty = 1.0;
};

struct CnfFormula {
  std::uint32_t variable_count = 0;
  std::vector<CnfClause> clauses;

  void validate() const;  // disjoint literal sets, positive penalties
};

/// Node i of a hypergraph maps to variable id i, named "x<i>" (Boolean
/// encoders) or "s<i>" (Ising encoders).
VarRegistry hypergraph_registry(const Hypergraph& h, Domain domain);

/// Max covering: -sum_e w(e) prod_{i in e} x_i. Requires edge weights.
Polynomial encode_max_cover(const Hypergraph& h);

/// Min vertex cover (x_i = 0 puts node i in the cover):
/// sum_i (1 - x_i) + M sum_e prod_{i in e} x_i, default M = n + 1;
/// a user-supplied M must exceed n.
Polynomial encode_vertex_cover(const Hypergraph& h,
                               std::optional<double> M = std::nullopt);

/// Max cut, minimization form: per edge, 4^-|e| prod_{i in e}(s_ie + s_i)^2
/// minus 1, where i_e is the edge's smallest node. Each edge contributes -1
/// when cut and 0 when all its nodes sit in one part.
Polynomial encode_max_cut(const Hypergraph& h);

/// Balanced partitioning: cut-count objective plus A (sum_i s_i)^2, default
/// A = |E| + 1; a user-supplied A must be positive.
Polynomial encode_partition(const Hypergraph& h,
                            std::optional<double> A = std::nullopt);

/// Weighted MAX-SAT penalty: sum_c p_c prod_{u in S_c^+}(1-u) prod_{v in
/// S_c^-} v. Evaluates to the total weight of unsatisfied clauses.
Polynomial encode_maxsat(const CnfFormula& f);

VarRegistry maxsat_registry(const CnfFormula& f);

/// Direct clause evaluation (the encoder's independent oracle).
double unsatisfied_weight(const CnfFormula& f, const Assignment& a);

}  // namespace hoboq
