/// @file io.hpp
/// @brief Line-oriented file formats (.hobo polynomials, substitution maps,
/// hypergraphs, DIMACS-style WCNF), canonical serialization, synthetic
/// instance generation and degree statistics.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hoboq/encoders.hpp"
#include "hoboq/poly.hpp"
#include "hoboq/quadratize.hpp"

namespace hoboq::io {

struct LoadedPolynomial {
  Polynomial poly;
  VarRegistry registry;
};

/// `.hobo` format: '#' comment lines are ignored; a `domain ising|boolean`
/// header precedes the terms; each non-empty line after it is
/// `<coefficient> [<var-name> ...]` (no names = constant term).
///
/// Reading assigns ids in shortlex order of all names in the file (length
/// first, then bytes), so a canonical file reproduces its writer's ids
/// whenever the writer's registry was created in that order. Writing is
/// canonical: terms sorted by their name tuples in shortlex order, names
/// sorted within each term, coefficients in shortest round-trip decimal.
/// Serializing what was read always reproduces a canonical file byte for
/// byte.
LoadedPolynomial read_hobo(std::istream& in);
LoadedPolynomial read_hobo_file(const std::string& path);
void write_hobo(const Polynomial& p, const VarRegistry& reg,
                std::ostream& out);
void write_hobo_file(const Polynomial& p, const VarRegistry& reg,
                     const std::string& path);
std::string hobo_string(const Polynomial& p, const VarRegistry& reg);

/// Shortest decimal rendering that parses back to the same double.
std::string format_coefficient(double value);

/// Substitution-map format: a `M <value>` header line, then one line per
/// substitution: `<aux> <u> <v> [<slack>] <gadget_kind>` for pair gadgets,
/// `<aux> <v1> ... <vk> freedman` for termwise rewrites.
struct MapEntry {
  std::string aux;
  std::vector<std::string> vars;  // pair (+ slack resolved by kind)
  GadgetKind kind = GadgetKind::Rosenberg;
};

struct SubstitutionMap {
  double penalty_weight = 0.0;
  std::vector<MapEntry> entries;
};

SubstitutionMap read_map(std::istream& in);
SubstitutionMap read_map_file(const std::string& path);
SubstitutionMap to_map(const QuadratizationResult& result);
std::string map_string(const SubstitutionMap& map);
void write_map(const QuadratizationResult& result, std::ostream& out);
void write_map_file(const QuadratizationResult& result,
                    const std::string& path);

struct ResolvedMap {
  std::vector<Substitution> substitutions;
  std::vector<FreedmanSub> freedman_substitutions;
  double penalty_weight = 0.0;
};

/// Resolves names against `reg`, registering aux/slack names that are
/// missing (they may have cancelled out of the quadratic).
ResolvedMap resolve_map(const SubstitutionMap& map, VarRegistry& reg);

/// Hypergraph format: first line `n m`, then m lines of space-separated
/// node ids with an optional trailing `w=<weight>`. If any edge carries a
/// weight, missing ones default to 1.
Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph_file(const std::string& path);

/// WCNF subset: `c` comments, `p wcnf <vars> <clauses> [top]` header,
/// clause lines `<weight> <lit> ... 0`. DIMACS variable k maps to id k-1.
CnfFormula read_wcnf(std::istream& in);
CnfFormula read_wcnf_file(const std::string& path);

/// Target shape of a synthetic sparse instance: how many monomials to draw
/// at each degree (index 0 = degree 1).
struct DatasetSpec {
  std::uint32_t n = 0;
  std::vector<std::uint64_t> degree_counts;
  int coeff_low = -10;
  int coeff_high = 10;
  std::uint64_t seed = 1;
};

/// Ising instance with exactly the requested degree histogram: for each
/// degree, distinct variable subsets drawn uniformly without replacement,
/// coefficients uniform nonzero integers in [coeff_low, coeff_high].
/// Deterministic for a fixed seed. Variables are named "s1".."sn".
LoadedPolynomial gen_dataset(const DatasetSpec& spec);

struct StatsReport {
  std::uint32_t variables = 0;                  // appearing in >= 1 term
  std::map<int, std::uint64_t> terms_by_degree; // includes degree 0 if present
  std::uint64_t total_terms = 0;
};

StatsReport stats(const Polynomial& p);
std::string stats_json(const StatsReport& report);
std::string stats_text(const StatsReport& report);

}  // namespace hoboq::io
