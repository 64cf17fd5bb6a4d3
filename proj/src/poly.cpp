#include "hoboq/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hoboq {

std::string_view domain_name(Domain d) {
  return d == Domain::Ising ? "ising" : "boolean";
}

double domain_low(Domain d) { return d == Domain::Ising ? -1.0 : 0.0; }

void validate_var_name(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("variable name is empty");
  char first = name.front();
  if (std::isdigit(static_cast<unsigned char>(first)) || first == '+' ||
      first == '-' || first == '.')
    throw std::invalid_argument("variable name '" + std::string(name) +
                                "' must not start like a number");
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
      throw std::invalid_argument("variable name '" + std::string(name) +
                                  "' contains whitespace or '#'");
}

VarId VarRegistry::insert(std::string name, VarKind kind) {
  validate_var_name(name);
  if (by_name_.count(name))
    throw std::invalid_argument("duplicate variable name '" + name + "'");
  VarId id = static_cast<VarId>(vars_.size());
  by_name_.emplace(name, id);
  vars_.push_back(Variable{id, std::move(name), kind});
  return id;
}

VarId VarRegistry::add_original(std::string_view name) {
  if (!vars_.empty() && vars_.back().kind != VarKind::Original)
    throw std::invalid_argument(
        "original variables must be registered before auxiliaries");
  return insert(std::string(name), VarKind::Original);
}

VarId VarRegistry::add_variable(std::string_view name, VarKind kind) {
  if (kind == VarKind::Original) return add_original(name);
  return insert(std::string(name), kind);
}

VarId VarRegistry::fresh_aux(char prefix, VarKind kind, VarId& counter) {
  for (;; ++counter) {
    std::string name = prefix + std::to_string(counter);
    if (!by_name_.count(name)) {
      ++counter;
      return insert(std::move(name), kind);
    }
  }
}

VarId VarRegistry::fresh_product_var() {
  return fresh_aux('y', VarKind::AuxProduct, next_product_);
}

VarId VarRegistry::fresh_slack_var() {
  return fresh_aux('d', VarKind::AuxSlack, next_slack_);
}

std::optional<VarId> VarRegistry::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

const Variable& VarRegistry::operator[](VarId id) const {
  if (id >= vars_.size())
    throw std::out_of_range("variable id " + std::to_string(id) +
                            " not in registry");
  return vars_[id];
}

std::vector<VarId> VarRegistry::ids_of_kind(VarKind kind) const {
  std::vector<VarId> out;
  for (const auto& v : vars_)
    if (v.kind == kind) out.push_back(v.id);
  return out;
}

VarId VarRegistry::count_of_kind(VarKind kind) const {
  VarId n = 0;
  for (const auto& v : vars_)
    if (v.kind == kind) ++n;
  return n;
}

std::pair<Term, double> normalize_term(std::vector<VarId> vars, double coeff,
                                       Domain domain) {
  std::sort(vars.begin(), vars.end());
  Term out;
  out.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size();) {
    std::size_t j = i;
    while (j < vars.size() && vars[j] == vars[i]) ++j;
    std::size_t mult = j - i;
    // Ising: s^2 = 1, keep odd multiplicities. Boolean: x^2 = x.
    if (domain == Domain::Boolean || mult % 2 == 1) out.push_back(vars[i]);
    i = j;
  }
  return {std::move(out), coeff};
}

double Assignment::at(VarId id) const {
  auto it = values_.find(id);
  if (it == values_.end())
    throw std::out_of_range("variable " + std::to_string(id) +
                            " is not assigned");
  return it->second;
}

Polynomial Polynomial::constant(Domain domain, double value) {
  Polynomial p(domain);
  p.add_term({}, value);
  return p;
}

void Polynomial::add_term(std::vector<VarId> vars, double coeff) {
  auto [term, c] = normalize_term(std::move(vars), coeff, domain_);
  auto [it, inserted] = terms_.try_emplace(std::move(term), 0.0);
  it->second += c;
  if (std::abs(it->second) < kCoeffEpsilon) terms_.erase(it);
}

double Polynomial::coeff(const Term& term) const {
  auto it = terms_.find(term);
  return it == terms_.end() ? 0.0 : it->second;
}

int Polynomial::degree() const {
  std::size_t deg = 0;
  for (const auto& [term, c] : terms_) deg = std::max(deg, term.size());
  return static_cast<int>(deg);
}

double Polynomial::evaluate(const Assignment& a) const {
  double total = 0.0;
  for (const auto& [term, c] : terms_) {
    double prod = c;
    for (VarId v : term) prod *= a.at(v);
    total += prod;
  }
  return total;
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
  if (p.domain() != q.domain())
    throw std::invalid_argument("cannot add polynomials of different domains");
  Polynomial out = p;
  for (const auto& [term, c] : q.terms()) out.add_term(term, c);
  return out;
}

Polynomial scale(const Polynomial& p, double c) {
  Polynomial out(p.domain());
  for (const auto& [term, coeff] : p.terms()) out.add_term(term, coeff * c);
  return out;
}

Polynomial multiply_term(const Polynomial& p, std::span<const VarId> varset,
                         double coeff) {
  Polynomial out(p.domain());
  for (const auto& [term, c] : p.terms()) {
    std::vector<VarId> merged(term.begin(), term.end());
    merged.insert(merged.end(), varset.begin(), varset.end());
    out.add_term(std::move(merged), c * coeff);
  }
  return out;
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) {
  if (p.domain() != q.domain())
    throw std::invalid_argument(
        "cannot multiply polynomials of different domains");
  Polynomial out(p.domain());
  for (const auto& [term, c] : q.terms()) {
    for (const auto& [pterm, pc] : p.terms()) {
      std::vector<VarId> merged(pterm.begin(), pterm.end());
      merged.insert(merged.end(), term.begin(), term.end());
      out.add_term(std::move(merged), pc * c);
    }
  }
  return out;
}

Polynomial convert_domain(const Polynomial& p, Domain target) {
  if (p.domain() == target) return p;
  Polynomial out(target);
  for (const auto& [term, c] : p.terms()) {
    std::size_t k = term.size();
    if (k > 30)
      throw std::runtime_error("domain conversion would expand a degree-" +
                               std::to_string(k) + " term to 2^" +
                               std::to_string(k) + " terms");
    // Ising -> Boolean: prod s_i = prod (2x_i - 1)
    //   = sum over subsets S: 2^|S| (-1)^(k-|S|) prod_{i in S} x_i.
    // Boolean -> Ising: prod x_i = prod (1 + s_i)/2
    //   = 2^-k sum over subsets S: prod_{i in S} s_i.
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
      std::vector<VarId> subset;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1ull << i)) subset.push_back(term[i]);
      double factor;
      if (target == Domain::Boolean) {
        std::size_t s = subset.size();
        factor = std::ldexp((k - s) % 2 == 0 ? 1.0 : -1.0,
                            static_cast<int>(s));
      } else {
        factor = std::ldexp(1.0, -static_cast<int>(k));
      }
      out.add_term(std::move(subset), c * factor);
    }
  }
  return out;
}

double sum_abs_coeffs(const Polynomial& p) {
  double total = 0.0;
  for (const auto& [term, c] : p.terms())
    if (!term.empty()) total += std::abs(c);
  return total;
}

Polynomial fix_variable(const Polynomial& p, VarId var, double value) {
  Polynomial out(p.domain());
  for (const auto& [term, c] : p.terms()) {
    auto it = std::find(term.begin(), term.end(), var);
    if (it == term.end()) {
      out.add_term(term, c);
    } else {
      Term rest;
      rest.reserve(term.size() - 1);
      for (VarId v : term)
        if (v != var) rest.push_back(v);
      out.add_term(std::move(rest), c * value);
    }
  }
  return out;
}

std::vector<VarId> vars_of(const Polynomial& p) {
  std::vector<VarId> out;
  for (const auto& [term, c] : p.terms())
    out.insert(out.end(), term.begin(), term.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PreprocessResult preprocess(const Polynomial& p) {
  PreprocessResult result{p, {}};
  if (p.domain() != Domain::Ising) return result;
  for (bool changed = true; changed;) {
    changed = false;
    // |h_i| must strictly dominate the total weight of i's higher terms;
    // then s_i = -sign(h_i) is optimal whatever the other variables do.
    std::map<VarId, double> linear;
    std::map<VarId, double> higher_abs;
    for (const auto& [term, c] : result.residual.terms()) {
      if (term.size() == 1)
        linear[term[0]] += c;
      else if (term.size() >= 2)
        for (VarId v : term) higher_abs[v] += std::abs(c);
    }
    for (const auto& [v, h] : linear) {
      auto it = higher_abs.find(v);
      double bound = it == higher_abs.end() ? 0.0 : it->second;
      if (std::abs(h) > bound) {
        double value = h > 0 ? -1.0 : 1.0;
        result.fixed.set(v, value);
        result.residual = fix_variable(result.residual, v, value);
        changed = true;
        break;
      }
    }
  }
  return result;
}

std::string to_string(const Polynomial& p, const VarRegistry& reg) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [term, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (VarId v : term) os << "*" << reg[v].name;
  }
  return os.str();
}

}  // namespace hoboq
