/// @file poly.hpp
/// @brief Sparse multilinear polynomials over Ising ({-1,+1}) or Boolean
/// ({0,1}) variables: representation, arithmetic, evaluation, domain
/// conversion and preprocessing.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hoboq {

enum class Domain { Ising, Boolean };

std::string_view domain_name(Domain d);

/// Low/high values of a domain: {-1,+1} for Ising, {0,1} for Boolean.
double domain_low(Domain d);
constexpr double domain_high(Domain) { return 1.0; }

using VarId = std::uint32_t;

enum class VarKind { Original, AuxProduct, AuxSlack };

struct Variable {
  VarId id;
  std::string name;
  VarKind kind;
};

/// Maps external variable names to dense internal ids. Original variables
/// always precede auxiliary ones in id order; auxiliary ids increase in
/// creation order. Generated aux names are "y<k>" (product) and "d<k>"
/// (slack), skipping any name already taken.
class VarRegistry {
 public:
  VarId add_original(std::string_view name);
  VarId add_variable(std::string_view name, VarKind kind);
  VarId fresh_product_var();
  VarId fresh_slack_var();

  std::optional<VarId> find(std::string_view name) const;
  const Variable& operator[](VarId id) const;
  VarId size() const { return static_cast<VarId>(vars_.size()); }
  bool empty() const { return vars_.empty(); }

  std::vector<VarId> ids_of_kind(VarKind kind) const;
  VarId count_of_kind(VarKind kind) const;

  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }

 private:
  VarId insert(std::string name, VarKind kind);
  VarId fresh_aux(char prefix, VarKind kind, VarId& counter);

  std::vector<Variable> vars_;
  std::unordered_map<std::string, VarId> by_name_;
  VarId next_product_ = 1;
  VarId next_slack_ = 1;
};

/// Throws std::invalid_argument unless `name` is usable in the line-oriented
/// file formats: nonempty, no whitespace or '#', and not starting with a
/// character that could begin a number.
void validate_var_name(std::string_view name);

/// A monomial's variable set: sorted, duplicate-free ids. Empty = constant.
using Term = std::vector<VarId>;

/// Collapses variable multiplicities for a domain (s^2 = 1 in Ising drops
/// pairs, x^2 = x in Boolean collapses to one) and sorts the result.
/// The coefficient is returned unchanged.
std::pair<Term, double> normalize_term(std::vector<VarId> vars, double coeff,
                                       Domain domain);

/// Partial map VarId -> value. Values are expected to lie in the relevant
/// domain's value set; this is the caller's responsibility.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const VarId, double>> init)
      : values_(init) {}

  void set(VarId id, double value) { values_[id] = value; }
  bool contains(VarId id) const { return values_.count(id) != 0; }
  /// Throws std::out_of_range naming the id if unassigned.
  double at(VarId id) const;

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }
  bool operator==(const Assignment&) const = default;

 private:
  std::map<VarId, double> values_;
};

/// Coefficients with |c| below this are dropped when terms merge.
inline constexpr double kCoeffEpsilon = 1e-12;

/// Sparse multilinear polynomial in canonical form: terms are keyed by
/// sorted variable-id tuples (lexicographic map order), no duplicate
/// variables inside a term, no zero coefficients stored.
class Polynomial {
 public:
  explicit Polynomial(Domain domain) : domain_(domain) {}
  static Polynomial constant(Domain domain, double value);

  Domain domain() const { return domain_; }
  const std::map<Term, double>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Normalizes (idempotence/involution), merges into the term map and
  /// drops the entry if the merged coefficient falls below kCoeffEpsilon.
  void add_term(std::vector<VarId> vars, double coeff);

  double coeff(const Term& term) const;
  double constant_term() const { return coeff({}); }

  /// Max term cardinality; 0 for constants and the zero polynomial.
  int degree() const;

  /// Exact sum of coeff * product of assigned values per term.
  /// Throws std::out_of_range naming the first unassigned variable.
  double evaluate(const Assignment& a) const;

  bool operator==(const Polynomial&) const = default;

 private:
  Domain domain_;
  std::map<Term, double> terms_;
};

/// Term-map merge; domains must match (std::invalid_argument otherwise).
Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial scale(const Polynomial& p, double c);
/// Multiplies every term of p by the monomial coeff * prod(varset),
/// re-normalizing in p's domain.
Polynomial multiply_term(const Polynomial& p, std::span<const VarId> varset,
                         double coeff);
/// Full product, built term by term via multiply_term.
Polynomial multiply(const Polynomial& p, const Polynomial& q);

/// Rewrites p in the target domain via s = 2x - 1 / x = (1 + s) / 2,
/// expanding and merging term by term. Identity if already in target.
Polynomial convert_domain(const Polynomial& p, Domain target);

/// Sum of |coeff| over all non-constant terms.
double sum_abs_coeffs(const Polynomial& p);

/// Substitutes one variable by a value and re-normalizes.
Polynomial fix_variable(const Polynomial& p, VarId var, double value);

/// Sorted ids of variables appearing in at least one term.
std::vector<VarId> vars_of(const Polynomial& p);

struct PreprocessResult {
  Polynomial residual;
  Assignment fixed;
};

/// Ising-only dominance rule, iterated to fixpoint: any variable whose
/// linear coefficient strictly outweighs the total |coeff| of its
/// higher-order terms is fixed to -sign of that coefficient. Each fixing
/// is optimal for minimization. Boolean input is returned unchanged.
PreprocessResult preprocess(const Polynomial& p);

/// "coeff * name name ..." debug rendering using registry names.
std::string to_string(const Polynomial& p, const VarRegistry& reg);

}  // namespace hoboq
