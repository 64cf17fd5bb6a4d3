/// @file gadgets.hpp
/// @brief Quadratic penalty gadgets enforcing y = u*v (Rosenberg in Boolean
/// space, the two-auxiliary gadget in Ising space), the Freedman
/// negative-monomial rewrite, exhaustive gadget verification, and the
/// exact-rational certificate that no single-auxiliary Ising gadget exists.
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hoboq/poly.hpp"
#include "hoboq/ratmat.hpp"

namespace hoboq {

enum class GadgetKind { Rosenberg, IsingPair, Freedman };

std::string_view gadget_kind_name(GadgetKind kind);
std::optional<GadgetKind> gadget_kind_from(std::string_view name);

/// A nonnegative quadratic penalty whose minimum over the slack variables
/// is zero exactly when y = u*v.
struct Gadget {
  Polynomial penalty;
  VarId u, v, y;
  std::vector<VarId> slack;
  GadgetKind kind;
};

/// Boolean-space penalty 3y + uv - 2uy - 2vy. No slack variables.
Gadget rosenberg_penalty(VarId u, VarId v, VarId y);

/// Ising-space penalty 4 + u + v - y - 2d + uv - uy - vy - 2ud - 2vd + 2yd
/// with one slack variable d. Its minimum over d is 0 when y = uv and 2
/// otherwise.
Gadget ising_pair_penalty(VarId u, VarId v, VarId y, VarId d);

/// Quadratic replacement for a negative Boolean monomial coeff * prod(x_i):
/// |coeff| * ((k-1)y - sum x_i y). Minimizing over y reproduces the monomial
/// exactly, with no penalty weight involved. Requires coeff < 0, |term| >= 3
/// and Boolean domain.
Polynomial freedman_negative(const Term& term_vars, double coeff, VarId y,
                             Domain domain = Domain::Boolean);

struct GadgetTableRow {
  double u, v, y;
  double min_over_slack;
};

struct GadgetCheck {
  bool pass = false;
  bool nonnegative = false;           // penalty >= 0 on every assignment
  std::vector<GadgetTableRow> table;  // one row per (u, v, y) assignment
  std::optional<GadgetTableRow> violation;
};

/// Exhaustively checks that min-over-slack is zero iff y = u*v, positive
/// otherwise, and that the penalty never goes negative. At most 6 variables
/// total (both published gadgets fit well within this).
GadgetCheck verify_product_gadget(const Gadget& g);

/// Infeasibility certificate: the 4x7 systems E (y = s1 s2 assignments,
/// where the candidate polynomial must vanish) and F (the violating
/// assignments, where it must be >= 1), a right-kernel basis K of E, and
/// F*K whose columns all sum to zero -- so F K b >= 1 is unsatisfiable and
/// no single-auxiliary quadratic Ising gadget exists.
struct Certificate {
  RatMatrix equality;       // E
  RatMatrix inequality;     // F
  RatMatrix kernel;         // computed right-kernel basis of E (7x3)
  RatMatrix fk;             // F * kernel
  RatMatrix published_kernel;    // the known 7x3 basis (same span)
  RatMatrix fk_published;        // F * published_kernel
  bool feasible = true;
};

/// Builds and self-checks the certificate. Throws std::logic_error if any
/// internal invariant fails (E K = 0, kernel dimension 3, span agreement,
/// zero column sums).
Certificate theorem1_certificate();

}  // namespace hoboq
