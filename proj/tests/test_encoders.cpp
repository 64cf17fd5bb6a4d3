#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hoboq/encoders.hpp"
#include "hoboq/solve.hpp"

using namespace hoboq;

namespace {

template <typename Fn>
void for_all_assignments(std::uint32_t n, Domain domain, Fn&& fn) {
  double lo = domain_low(domain);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Assignment a;
    for (std::uint32_t i = 0; i < n; ++i)
      a.set(i, mask & (1ull << i) ? 1.0 : lo);
    fn(a, mask);
  }
}

bool edge_cut(const std::vector<VarId>& edge, std::uint64_t mask) {
  bool has_low = false, has_high = false;
  for (VarId v : edge) (mask & (1ull << v) ? has_high : has_low) = true;
  return has_low && has_high;
}

}  // namespace

TEST_CASE("max covering") {
  Hypergraph h{4, {{1, 2, 3}}, std::vector<double>{2.0}};
  Polynomial p = encode_max_cover(h);
  CHECK(p.coeff({1, 2, 3}) == -2.0);
  CHECK(p.term_count() == 1);
  SolveReport report = brute_force_min(p);
  CHECK(report.min_value == -2.0);

  Hypergraph empty{3, {}, std::vector<double>{}};
  CHECK(encode_max_cover(empty).is_zero());

  Hypergraph disjoint{5, {{0, 1}, {2, 3, 4}}, std::vector<double>{1.5, 2.5}};
  CHECK(brute_force_min(encode_max_cover(disjoint)).min_value == -4.0);

  Hypergraph unweighted{3, {{0, 1}}, std::nullopt};
  CHECK_THROWS_AS(encode_max_cover(unweighted), std::invalid_argument);
}

TEST_CASE("vertex cover") {
  Hypergraph single{2, {{0, 1}}, std::nullopt};
  CHECK(brute_force_min(encode_vertex_cover(single, 3.0)).min_value == 1.0);

  Hypergraph edgeless{3, {}, std::nullopt};
  Polynomial p = encode_vertex_cover(edgeless);
  SolveReport report = brute_force_min(p);
  CHECK(report.min_value == 0.0);

  Hypergraph triangle{3, {{0, 1}, {1, 2}, {0, 2}}, std::nullopt};
  CHECK(brute_force_min(encode_vertex_cover(triangle)).min_value == 2.0);

  CHECK_THROWS_AS(encode_vertex_cover(single, 2.0), std::invalid_argument);
}

TEST_CASE("max cut per-edge values") {
  Hypergraph pair{2, {{0, 1}}, std::nullopt};
  Polynomial p = encode_max_cut(pair);
  CHECK(p.evaluate({{0, 1.0}, {1, -1.0}}) == -1.0);
  CHECK(p.evaluate({{0, 1.0}, {1, 1.0}}) == 0.0);

  Hypergraph triple{3, {{0, 1, 2}}, std::nullopt};
  Polynomial q = encode_max_cut(triple);
  CHECK(q.evaluate({{0, 1.0}, {1, 1.0}, {2, -1.0}}) == -1.0);
  CHECK(q.evaluate({{0, -1.0}, {1, -1.0}, {2, -1.0}}) == 0.0);
}

TEST_CASE("max cut edge terms are 0 or -1 for every edge size up to 5") {
  for (std::uint32_t size = 1; size <= 5; ++size) {
    std::vector<VarId> edge;
    for (VarId v = 0; v < size; ++v) edge.push_back(v);
    Hypergraph h{size, {edge}, std::nullopt};
    Polynomial p = encode_max_cut(h);
    for_all_assignments(size, Domain::Ising, [&](const Assignment& a,
                                                 std::uint64_t mask) {
      double expected = edge_cut(edge, mask) ? -1.0 : 0.0;
      CHECK(p.evaluate(a) == doctest::Approx(expected).epsilon(1e-12));
    });
  }
}

TEST_CASE("partitioning balances and counts cut edges") {
  Hypergraph two{2, {}, std::nullopt};
  Polynomial p = encode_partition(two, 1.0);
  Polynomial expected(Domain::Ising);
  expected.add_term({}, 2.0);
  expected.add_term({0, 1}, 2.0);
  CHECK(p == expected);
  CHECK(brute_force_min(p).min_value == 0.0);

  Hypergraph odd{3, {}, std::nullopt};
  CHECK(brute_force_min(encode_partition(odd, 2.0)).min_value == 2.0);

  Hypergraph edge{2, {{0, 1}}, std::nullopt};
  SolveReport report = brute_force_min(encode_partition(edge));
  // Balance forces the split, so the single edge is cut.
  CHECK(report.min_value == 1.0);
  for (const Assignment& a : report.argmins) CHECK(a.at(0) != a.at(1));

  CHECK_THROWS_AS(encode_partition(edge, -1.0), std::invalid_argument);
}

TEST_CASE("maxsat penalty polynomial") {
  // Clause (not x0) or x1 with unit penalty: violated exactly at (1, 0).
  CnfFormula f{2, {CnfClause{{1}, {0}, 1.0}}};
  Polynomial p = encode_maxsat(f);
  Polynomial expected(Domain::Boolean);
  expected.add_term({0}, 1.0);
  expected.add_term({0, 1}, -1.0);
  CHECK(p == expected);
  for_all_assignments(2, Domain::Boolean, [&](const Assignment& a,
                                              std::uint64_t mask) {
    CHECK(p.evaluate(a) == (mask == 1 ? 1.0 : 0.0));
  });

  CHECK(encode_maxsat(CnfFormula{0, {}}).is_zero());

  CnfFormula tautology{1, {CnfClause{{0}, {0}, 1.0}}};
  CHECK_THROWS_AS(encode_maxsat(tautology), std::invalid_argument);
}

TEST_CASE("maxsat value equals the weighted unsatisfied count") {
  // Two positive, two negated variables in one clause, plus friends.
  CnfFormula f{5,
               {CnfClause{{1, 2}, {0, 4}, 2.0}, CnfClause{{0}, {}, 1.5},
                CnfClause{{}, {3}, 0.5}}};
  Polynomial p = encode_maxsat(f);
  for_all_assignments(5, Domain::Boolean, [&](const Assignment& a,
                                              std::uint64_t) {
    CHECK(p.evaluate(a) ==
          doctest::Approx(unsatisfied_weight(f, a)).epsilon(1e-12));
  });
}

TEST_CASE("encoder outputs are already in canonical form") {
  Hypergraph h{4, {{0, 1, 2}, {1, 3}}, std::vector<double>{1.0, 2.0}};
  for (const Polynomial& p :
       {encode_max_cover(h), encode_vertex_cover(h), encode_max_cut(h),
        encode_partition(h)}) {
    Polynomial rebuilt(p.domain());
    for (const auto& [term, c] : p.terms()) rebuilt.add_term(term, c);
    CHECK(rebuilt == p);
  }
}

TEST_CASE("hypergraph validation") {
  Hypergraph bad_edge{2, {{}}, std::nullopt};
  CHECK_THROWS_AS(bad_edge.validate(), std::invalid_argument);
  Hypergraph bad_id{2, {{0, 5}}, std::nullopt};
  CHECK_THROWS_AS(bad_id.validate(), std::invalid_argument);
  Hypergraph bad_weights{2, {{0, 1}}, std::vector<double>{1.0, 2.0}};
  CHECK_THROWS_AS(bad_weights.validate(), std::invalid_argument);
}
