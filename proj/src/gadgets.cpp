#include "hoboq/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hoboq {

std::string_view gadget_kind_name(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Rosenberg: return "rosenberg";
    case GadgetKind::IsingPair: return "ising_pair";
    case GadgetKind::Freedman: return "freedman";
  }
  throw std::logic_error("unknown gadget kind");
}

std::optional<GadgetKind> gadget_kind_from(std::string_view name) {
  if (name == "rosenberg") return GadgetKind::Rosenberg;
  if (name == "ising_pair") return GadgetKind::IsingPair;
  if (name == "freedman") return GadgetKind::Freedman;
  return std::nullopt;
}

namespace {

void require_distinct(std::initializer_list<VarId> ids) {
  std::vector<VarId> v(ids);
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw std::invalid_argument("gadget variables must be distinct");
}

}  // namespace

Gadget rosenberg_penalty(VarId u, VarId v, VarId y) {
  require_distinct({u, v, y});
  Polynomial p(Domain::Boolean);
  p.add_term({y}, 3.0);
  p.add_term({u, v}, 1.0);
  p.add_term({u, y}, -2.0);
  p.add_term({v, y}, -2.0);
  return Gadget{std::move(p), u, v, y, {}, GadgetKind::Rosenberg};
}

Gadget ising_pair_penalty(VarId u, VarId v, VarId y, VarId d) {
  require_distinct({u, v, y, d});
  Polynomial p(Domain::Ising);
  p.add_term({}, 4.0);
  p.add_term({u}, 1.0);
  p.add_term({v}, 1.0);
  p.add_term({y}, -1.0);
  p.add_term({d}, -2.0);
  p.add_term({u, v}, 1.0);
  p.add_term({u, y}, -1.0);
  p.add_term({v, y}, -1.0);
  p.add_term({u, d}, -2.0);
  p.add_term({v, d}, -2.0);
  p.add_term({y, d}, 2.0);
  return Gadget{std::move(p), u, v, y, {d}, GadgetKind::IsingPair};
}

Polynomial freedman_negative(const Term& term_vars, double coeff, VarId y,
                             Domain domain) {
  if (domain != Domain::Boolean)
    throw std::invalid_argument(
        "negative-monomial rewrite is only valid in Boolean space");
  if (coeff >= 0)
    throw std::invalid_argument(
        "negative-monomial rewrite requires a negative coefficient");
  if (term_vars.size() < 3)
    throw std::invalid_argument("monomial degree must be at least 3");
  for (VarId v : term_vars)
    if (v == y)
      throw std::invalid_argument("auxiliary variable must be fresh");
  double mag = -coeff;
  Polynomial p(Domain::Boolean);
  p.add_term({y}, mag * (static_cast<double>(term_vars.size()) - 1.0));
  for (VarId v : term_vars) p.add_term({v, y}, -mag);
  return p;
}

GadgetCheck verify_product_gadget(const Gadget& g) {
  std::vector<VarId> all = vars_of(g.penalty);
  for (VarId v : {g.u, g.v, g.y})
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  if (all.size() > 6)
    throw std::invalid_argument(
        "gadget has too many variables for exhaustive verification");

  Domain dom = g.penalty.domain();
  const double lo = domain_low(dom);
  std::size_t n_slack = g.slack.size();

  GadgetCheck check;
  check.nonnegative = true;
  bool product_ok = true;
  for (int mask = 0; mask < 8; ++mask) {
    double uv = mask & 1 ? 1.0 : lo;
    double vv = mask & 2 ? 1.0 : lo;
    double yv = mask & 4 ? 1.0 : lo;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t smask = 0; smask < (1u << n_slack); ++smask) {
      Assignment a;
      a.set(g.u, uv);
      a.set(g.v, vv);
      a.set(g.y, yv);
      for (std::size_t i = 0; i < n_slack; ++i)
        a.set(g.slack[i], smask & (1u << i) ? 1.0 : lo);
      double value = g.penalty.evaluate(a);
      if (value < 0.0) check.nonnegative = false;
      best = std::min(best, value);
    }
    GadgetTableRow row{uv, vv, yv, best};
    check.table.push_back(row);
    bool satisfied = yv == uv * vv;
    bool row_ok = satisfied ? best == 0.0 : best > 0.0;
    if (!row_ok && product_ok) {
      product_ok = false;
      check.violation = row;
    }
  }
  check.pass = product_ok && check.nonnegative;
  return check;
}

Certificate theorem1_certificate() {
  Certificate cert;
  // Rows are the monomial vector (1, s1, s2, y, s1 s2, s1 y, s2 y) at the
  // four assignments with y = s1 s2 (E) and the four with y != s1 s2 (F).
  cert.equality = RatMatrix{{1, -1, -1, 1, 1, -1, -1},
                            {1, -1, 1, -1, -1, 1, -1},
                            {1, 1, -1, -1, -1, -1, 1},
                            {1, 1, 1, 1, 1, 1, 1}};
  cert.inequality = RatMatrix{{1, -1, -1, -1, 1, 1, 1},
                              {1, -1, 1, 1, -1, -1, 1},
                              {1, 1, -1, 1, -1, 1, -1},
                              {1, 1, 1, -1, 1, -1, -1}};
  // Known basis of the right kernel of E, written as columns.
  cert.published_kernel = RatMatrix{{0, 0, 0},  {1, 0, 0},  {0, 1, 0},
                                    {0, 0, 1},  {0, 0, -1}, {0, -1, 0},
                                    {-1, 0, 0}};

  cert.kernel = right_kernel(cert.equality);
  if (cert.kernel.cols() != 3 || rank(cert.kernel) != 3)
    throw std::logic_error("kernel of E does not have dimension 3");
  if (!multiply(cert.equality, cert.kernel).is_zero())
    throw std::logic_error("computed kernel does not annihilate E");
  if (!multiply(cert.equality, cert.published_kernel).is_zero())
    throw std::logic_error("published kernel does not annihilate E");
  if (!columns_in_span(cert.kernel, cert.published_kernel) ||
      !columns_in_span(cert.published_kernel, cert.kernel))
    throw std::logic_error("kernel bases do not span the same space");

  cert.fk = multiply(cert.inequality, cert.kernel);
  cert.fk_published = multiply(cert.inequality, cert.published_kernel);
  if (!column_sums(cert.fk).is_zero() ||
      !column_sums(cert.fk_published).is_zero())
    throw std::logic_error("columns of F*K do not sum to zero");

  // Every F K b has entries summing to 0, while F K b >= 1 componentwise
  // would force the sum to be at least 4. Infeasible.
  cert.feasible = false;
  return cert;
}

}  // namespace hoboq
