/// @file solve.hpp
/// @brief Exhaustive and simulated-annealing solvers, the brute-force
/// quadratization checker, and projection of quadratic-space solutions back
/// to the original variables.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hoboq/poly.hpp"
#include "hoboq/quadratize.hpp"

namespace hoboq {

inline constexpr double kValueTolerance = 1e-9;
inline constexpr std::size_t kArgminCap = 1024;

struct SolveReport {
  double min_value = 0.0;
  std::vector<Assignment> argmins;  // capped at kArgminCap
  bool argmins_truncated = false;
  std::uint64_t assignments_visited = 0;
};

/// Exact global minimum by Gray-code enumeration with incremental term
/// updates. Refuses inputs with more than `var_limit` variables. The
/// assignment space may be split across `threads` workers; the merged
/// report is identical to the single-threaded one.
SolveReport brute_force_min(const Polynomial& p, int var_limit = 24,
                            int threads = 1);

struct Def1Counterexample {
  Assignment z;
  double original_value = 0.0;
  double quadratic_min = 0.0;
};

struct Def1Report {
  bool pass = false;
  std::uint64_t assignments_checked = 0;  // of the original variables
  std::optional<Def1Counterexample> counterexample;
};

/// Checks min over `aux_vars` of `quadratic` == `original` at every
/// assignment of `z_vars`, in one Gray-code sweep over the joint space
/// (aux varies fastest). Total variables capped at `var_limit`.
Def1Report verify_definition1(const Polynomial& original,
                              const Polynomial& quadratic,
                              const std::vector<VarId>& z_vars,
                              const std::vector<VarId>& aux_vars,
                              double tolerance = kValueTolerance,
                              int var_limit = 24, int threads = 1);

/// Convenience wrapper deriving z/aux sets from the result's registry.
Def1Report verify_quadratization(const Polynomial& original,
                                 const QuadratizationResult& result,
                                 double tolerance = kValueTolerance,
                                 int var_limit = 24, int threads = 1);

/// The other half of the soundness argument, and the check that actually
/// reads the substitution map: setting every product auxiliary to u*v (in
/// substitution order) and every slack to its gadget argmin must reproduce
/// the original value at each z. A wrong pair in the map leaves a penalty
/// switched on somewhere and surfaces as a counterexample whose
/// `quadratic_min` field holds the value reached by the mapped assignment.
Def1Report verify_substitution_chain(const Polynomial& original,
                                     const Polynomial& quadratic,
                                     const std::vector<VarId>& z_vars,
                                     const std::vector<Substitution>& subs,
                                     const std::vector<FreedmanSub>& freedman,
                                     double tolerance = kValueTolerance,
                                     int var_limit = 24);

struct SaParams {
  std::uint64_t seed = 1;
  int sweeps = 500;
  int restarts = 8;
  /// Geometric schedule endpoints; 0 means derive from the polynomial
  /// (initial: twice the largest per-variable flip magnitude).
  double t_initial = 0.0;
  double t_final = 0.0;
};

/// Single-flip Metropolis annealing over a quadratic polynomial (degree > 2
/// is refused, matching the hardware this stands in for). Deterministic for
/// a fixed seed; restarts use derived seeds. The reported value is the exact
/// evaluation of the best assignment visited.
SolveReport sa_solve(const Polynomial& p, const SaParams& params = {});

struct Projection {
  Assignment original;
  bool consistent = false;
};

/// Restricts a quadratic-space assignment to the original variables and
/// reports whether every substitution is satisfied: aux = u*v for pair
/// substitutions, and for termwise rewrites the auxiliary attains the
/// monomial's minimum.
Projection project_solution(const QuadratizationResult& result,
                            const Assignment& a);

}  // namespace hoboq
