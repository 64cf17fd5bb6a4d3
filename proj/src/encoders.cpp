#include "hoboq/encoders.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hoboq {

void Hypergraph::validate() const {
  for (const auto& edge : edges) {
    if (edge.empty()) throw std::invalid_argument("hypergraph edge is empty");
    for (VarId v : edge)
      if (v >= n)
        throw std::invalid_argument("edge references node " +
                                    std::to_string(v) + " but n = " +
                                    std::to_string(n));
  }
  if (weights && weights->size() != edges.size())
    throw std::invalid_argument("weight count does not match edge count");
}

void CnfFormula::validate() const {
  for (const auto& clause : clauses) {
    if (clause.penalty <= 0)
      throw std::invalid_argument("clause penalties must be positive");
    for (VarId v : clause.positive)
      if (std::find(clause.negative.begin(), clause.negative.end(), v) !=
          clause.negative.end())
        throw std::invalid_argument(
            "variable appears both negated and unnegated in one clause");
    for (VarId v : clause.positive)
      if (v >= variable_count)
        throw std::invalid_argument("clause references unknown variable");
    for (VarId v : clause.negative)
      if (v >= variable_count)
        throw std::invalid_argument("clause references unknown variable");
  }
}

VarRegistry hypergraph_registry(const Hypergraph& h, Domain domain) {
  VarRegistry reg;
  const char* prefix = domain == Domain::Ising ? "s" : "x";
  for (std::uint32_t i = 0; i < h.n; ++i)
    reg.add_original(prefix + std::to_string(i));
  return reg;
}

Polynomial encode_max_cover(const Hypergraph& h) {
  h.validate();
  if (!h.weights)
    throw std::invalid_argument("max covering requires edge weights");
  Polynomial p(Domain::Boolean);
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    p.add_term(h.edges[e], -(*h.weights)[e]);
  return p;
}

Polynomial encode_vertex_cover(const Hypergraph& h, std::optional<double> M) {
  h.validate();
  double penalty = M.value_or(h.n + 1.0);
  if (penalty <= h.n)
    throw std::invalid_argument("cover penalty must exceed the node count");
  Polynomial p(Domain::Boolean);
  p.add_term({}, static_cast<double>(h.n));
  for (std::uint32_t i = 0; i < h.n; ++i) p.add_term({i}, -1.0);
  for (const auto& edge : h.edges) p.add_term(edge, penalty);
  return p;
}

Polynomial encode_max_cut(const Hypergraph& h) {
  h.validate();
  Polynomial p(Domain::Ising);
  for (const auto& edge : h.edges) {
    VarId lead = *std::min_element(edge.begin(), edge.end());
    // 4^-|e| * prod_{i in e} (s_lead + s_i)^2 evaluates to 1 on an uncut
    // edge and 0 on a cut one; minimization form subtracts the 1.
    Polynomial product =
        Polynomial::constant(Domain::Ising,
                             std::ldexp(1.0, -2 * static_cast<int>(edge.size())));
    for (VarId i : edge) {
      Polynomial factor(Domain::Ising);
      factor.add_term({lead}, 1.0);
      factor.add_term({i}, 1.0);
      product = multiply(product, multiply(factor, factor));
    }
    product.add_term({}, -1.0);
    p = add(p, product);
  }
  return p;
}

Polynomial encode_partition(const Hypergraph& h, std::optional<double> A) {
  h.validate();
  double balance = A.value_or(static_cast<double>(h.edges.size()) + 1.0);
  if (balance <= 0)
    throw std::invalid_argument("balance weight must be positive");
  // Cut count: each edge contributes 1 minus its uncut indicator.
  Polynomial p = scale(encode_max_cut(h), -1.0);
  // (sum_i s_i)^2 = n + 2 sum_{i<j} s_i s_j.
  p.add_term({}, balance * h.n);
  for (VarId i = 0; i < h.n; ++i)
    for (VarId j = i + 1; j < h.n; ++j) p.add_term({i, j}, 2.0 * balance);
  return p;
}

Polynomial encode_maxsat(const CnfFormula& f) {
  f.validate();
  Polynomial p(Domain::Boolean);
  for (const auto& clause : f.clauses) {
    Polynomial violated = Polynomial::constant(Domain::Boolean, clause.penalty);
    for (VarId u : clause.positive) {
      Polynomial factor = Polynomial::constant(Domain::Boolean, 1.0);
      factor.add_term({u}, -1.0);
      violated = multiply(violated, factor);
    }
    for (VarId v : clause.negative) {
      const VarId vs[] = {v};
      violated = multiply_term(violated, vs, 1.0);
    }
    p = add(p, violated);
  }
  return p;
}

VarRegistry maxsat_registry(const CnfFormula& f) {
  VarRegistry reg;
  for (std::uint32_t i = 0; i < f.variable_count; ++i)
    reg.add_original("x" + std::to_string(i));
  return reg;
}

double unsatisfied_weight(const CnfFormula& f, const Assignment& a) {
  double total = 0.0;
  for (const auto& clause : f.clauses) {
    bool satisfied = false;
    for (VarId u : clause.positive)
      if (a.at(u) == 1.0) satisfied = true;
    for (VarId v : clause.negative)
      if (a.at(v) == 0.0) satisfied = true;
    if (!satisfied) total += clause.penalty;
  }
  return total;
}

}  // namespace hoboq
