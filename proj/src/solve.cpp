#include "hoboq/solve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "hoboq/random.hpp"

namespace hoboq {

namespace {

/// Gray-code term evaluator: one variable flips per step, each term keeps a
/// count of its variables sitting at the domain's low value.
class IncrementalEval {
 public:
  IncrementalEval(const Polynomial& p, const std::vector<VarId>& vars)
      : domain_(p.domain()), vars_(vars), state_(vars.size(), 0) {
    std::unordered_map<VarId, std::size_t> bit_of;
    for (std::size_t i = 0; i < vars.size(); ++i) bit_of.emplace(vars[i], i);
    incidence_.resize(vars.size());
    for (const auto& [term, c] : p.terms()) {
      std::uint32_t idx = static_cast<std::uint32_t>(terms_.size());
      for (VarId v : term) {
        auto it = bit_of.find(v);
        if (it == bit_of.end())
          throw std::invalid_argument("polynomial references variable " +
                                      std::to_string(v) +
                                      " outside the enumeration set");
        incidence_[it->second].push_back(idx);
      }
      terms_.push_back(TermState{c, 0});
    }
  }

  void reset(std::uint64_t bits) {
    for (std::size_t i = 0; i < state_.size(); ++i)
      state_[i] = static_cast<std::uint8_t>((bits >> i) & 1);
    for (auto& t : terms_) t.num_low = 0;
    for (std::size_t i = 0; i < state_.size(); ++i)
      if (!state_[i])
        for (std::uint32_t idx : incidence_[i]) ++terms_[idx].num_low;
    value_ = 0.0;
    for (const auto& t : terms_) value_ += contribution(t);
  }

  void flip(std::size_t bit) {
    int delta_low = state_[bit] ? 1 : -1;
    state_[bit] ^= 1;
    for (std::uint32_t idx : incidence_[bit]) {
      TermState& t = terms_[idx];
      double before = contribution(t);
      t.num_low += delta_low;
      value_ += contribution(t) - before;
    }
  }

  double value() const { return value_; }

  Assignment assignment() const {
    Assignment a;
    double lo = domain_low(domain_);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      a.set(vars_[i], state_[i] ? 1.0 : lo);
    return a;
  }

 private:
  struct TermState {
    double coeff;
    int num_low;
  };

  double contribution(const TermState& t) const {
    if (domain_ == Domain::Ising) return (t.num_low & 1) ? -t.coeff : t.coeff;
    return t.num_low == 0 ? t.coeff : 0.0;
  }

  Domain domain_;
  std::vector<VarId> vars_;
  std::vector<std::uint8_t> state_;
  std::vector<TermState> terms_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  double value_ = 0.0;
};

inline std::uint64_t gray(std::uint64_t t) { return t ^ (t >> 1); }

struct MinWorker {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, Assignment>> argmins;
  bool truncated = false;

  void consider(double v, const IncrementalEval& eval) {
    if (v < best - kValueTolerance) {
      best = v;
      argmins.clear();
      truncated = false;
      argmins.emplace_back(v, eval.assignment());
    } else if (v <= best + kValueTolerance) {
      best = std::min(best, v);
      if (argmins.size() < kArgminCap)
        argmins.emplace_back(v, eval.assignment());
      else
        truncated = true;
    }
  }
};

int clamp_threads(int threads, std::uint64_t work_items) {
  if (threads < 1) threads = 1;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw > 0) threads = std::min(threads, hw);
  return static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads),
                              std::max<std::uint64_t>(work_items, 1)));
}

}  // namespace

SolveReport brute_force_min(const Polynomial& p, int var_limit, int threads) {
  std::vector<VarId> vars = vars_of(p);
  if (vars.size() > static_cast<std::size_t>(std::max(var_limit, 0)) ||
      vars.size() >= 63)
    throw std::invalid_argument(
        "refusing exhaustive enumeration over " +
        std::to_string(vars.size()) + " variables (limit " +
        std::to_string(var_limit) + ")");

  std::size_t n = vars.size();
  std::uint64_t total = 1ull << n;
  int workers = clamp_threads(threads, total);

  std::vector<MinWorker> results(workers);
  auto run_chunk = [&](int w, MinWorker& out) {
    std::uint64_t t0 = total / workers * w +
                       std::min<std::uint64_t>(total % workers, w);
    std::uint64_t t1 = t0 + total / workers +
                       (static_cast<std::uint64_t>(w) < total % workers);
    if (t0 >= t1) return;
    IncrementalEval eval(p, vars);
    eval.reset(gray(t0));
    out.consider(eval.value(), eval);
    for (std::uint64_t t = t0 + 1; t < t1; ++t) {
      eval.flip(static_cast<std::size_t>(std::countr_zero(t)));
      out.consider(eval.value(), eval);
    }
  };

  if (workers == 1) {
    run_chunk(0, results[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(run_chunk, w, std::ref(results[w]));
    for (auto& th : pool) th.join();
  }

  SolveReport report;
  report.assignments_visited = total;
  report.min_value = std::numeric_limits<double>::infinity();
  for (const auto& r : results)
    report.min_value = std::min(report.min_value, r.best);
  for (const auto& r : results) {
    if (r.best > report.min_value + kValueTolerance) continue;
    report.argmins_truncated |= r.truncated;
    for (const auto& [v, a] : r.argmins) {
      if (v > report.min_value + kValueTolerance) continue;
      if (report.argmins.size() < kArgminCap)
        report.argmins.push_back(a);
      else
        report.argmins_truncated = true;
    }
  }
  return report;
}

namespace {

struct Def1Worker {
  bool pass = true;
  std::uint64_t blocks_checked = 0;
  std::optional<Def1Counterexample> counterexample;
};

}  // namespace

Def1Report verify_definition1(const Polynomial& original,
                              const Polynomial& quadratic,
                              const std::vector<VarId>& z_vars,
                              const std::vector<VarId>& aux_vars,
                              double tolerance, int var_limit, int threads) {
  if (original.domain() != quadratic.domain())
    throw std::invalid_argument("domain mismatch between polynomials");
  std::size_t n = z_vars.size(), m = aux_vars.size();
  if (n + m > static_cast<std::size_t>(std::max(var_limit, 0)) || n + m >= 63)
    throw std::invalid_argument(
        "refusing exhaustive verification over " + std::to_string(n + m) +
        " variables (limit " + std::to_string(var_limit) + ")");
  {
    std::vector<VarId> all(aux_vars);
    all.insert(all.end(), z_vars.begin(), z_vars.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
      throw std::invalid_argument("z and aux variable sets overlap");
  }

  // Joint enumeration order: aux variables are the low (fast) bits, so each
  // z assignment owns one contiguous block of 2^m steps.
  std::vector<VarId> joint(aux_vars);
  joint.insert(joint.end(), z_vars.begin(), z_vars.end());

  std::uint64_t z_total = 1ull << n;
  std::uint64_t block = 1ull << m;
  int workers = clamp_threads(threads, z_total);

  std::vector<Def1Worker> results(workers);
  std::vector<std::uint64_t> chunk_start(workers + 1);
  for (int w = 0; w <= workers; ++w)
    chunk_start[w] = z_total / workers * w +
                     std::min<std::uint64_t>(z_total % workers, w);

  auto run_chunk = [&](int w, Def1Worker& out) {
    std::uint64_t k0 = chunk_start[w], k1 = chunk_start[w + 1];
    if (k0 >= k1) return;
    IncrementalEval quad(quadratic, joint);
    IncrementalEval orig(original, z_vars);
    quad.reset(gray(k0 * block));
    orig.reset(gray(k0));
    double block_min = quad.value();

    auto check_block = [&]() {
      ++out.blocks_checked;
      if (std::abs(block_min - orig.value()) > tolerance) {
        out.pass = false;
        out.counterexample =
            Def1Counterexample{orig.assignment(), orig.value(), block_min};
        return false;
      }
      return true;
    };

    for (std::uint64_t t = k0 * block + 1; t < k1 * block; ++t) {
      std::size_t b = static_cast<std::size_t>(std::countr_zero(t));
      if (b >= m) {
        if (!check_block()) return;
        orig.flip(b - m);
        quad.flip(b);
        block_min = quad.value();
      } else {
        quad.flip(b);
        block_min = std::min(block_min, quad.value());
      }
    }
    check_block();
  };

  if (workers == 1) {
    run_chunk(0, results[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(run_chunk, w, std::ref(results[w]));
    for (auto& th : pool) th.join();
  }

  Def1Report report;
  report.pass = true;
  for (int w = 0; w < workers; ++w) {
    const auto& r = results[w];
    if (!r.pass && report.pass) {
      report.pass = false;
      report.counterexample = r.counterexample;
      report.assignments_checked = chunk_start[w] + r.blocks_checked;
    }
  }
  if (report.pass) report.assignments_checked = z_total;
  return report;
}

Def1Report verify_quadratization(const Polynomial& original,
                                 const QuadratizationResult& result,
                                 double tolerance, int var_limit,
                                 int threads) {
  std::vector<VarId> z = result.registry.ids_of_kind(VarKind::Original);
  std::vector<VarId> aux = result.registry.ids_of_kind(VarKind::AuxProduct);
  std::vector<VarId> slack = result.registry.ids_of_kind(VarKind::AuxSlack);
  aux.insert(aux.end(), slack.begin(), slack.end());
  std::sort(aux.begin(), aux.end());
  return verify_definition1(original, result.quadratic, z, aux, tolerance,
                            var_limit, threads);
}

Def1Report verify_substitution_chain(const Polynomial& original,
                                     const Polynomial& quadratic,
                                     const std::vector<VarId>& z_vars,
                                     const std::vector<Substitution>& subs,
                                     const std::vector<FreedmanSub>& freedman,
                                     double tolerance, int var_limit) {
  if (original.domain() != quadratic.domain())
    throw std::invalid_argument("domain mismatch between polynomials");
  const double lo = domain_low(quadratic.domain());

  // z variables take the low bits; auxiliaries follow in chain order.
  std::vector<VarId> joint = z_vars;
  std::set<VarId> seen(z_vars.begin(), z_vars.end());
  auto append_aux = [&](VarId id) {
    if (seen.insert(id).second) joint.push_back(id);
  };
  for (const FreedmanSub& sub : freedman) append_aux(sub.aux);
  for (const Substitution& sub : subs) {
    append_aux(sub.aux);
    if (sub.slack) append_aux(*sub.slack);
  }
  std::size_t n = z_vars.size();
  if (joint.size() > static_cast<std::size_t>(std::max(var_limit, 0)) ||
      n >= 63)
    throw std::invalid_argument(
        "refusing exhaustive verification over " +
        std::to_string(joint.size()) + " variables (limit " +
        std::to_string(var_limit) + ")");

  std::unordered_map<VarId, std::size_t> bit_of;
  for (std::size_t i = 0; i < joint.size(); ++i) bit_of.emplace(joint[i], i);

  IncrementalEval quad(quadratic, joint);
  IncrementalEval orig(original, z_vars);
  quad.reset(0);
  orig.reset(0);
  std::vector<double> value(joint.size(), lo);

  auto set_var = [&](VarId id, double v) {
    std::size_t bit = bit_of.at(id);
    if (value[bit] != v) {
      value[bit] = v;
      quad.flip(bit);
    }
  };
  auto get_var = [&](VarId id) { return value[bit_of.at(id)]; };

  auto settle_chain = [&]() {
    for (const FreedmanSub& sub : freedman) {
      double slope = static_cast<double>(sub.term.size()) - 1.0;
      for (VarId v : sub.term) slope -= get_var(v);
      set_var(sub.aux, slope < 0 ? 1.0 : 0.0);
    }
    for (const Substitution& sub : subs) {
      double u = get_var(sub.pair.first), v = get_var(sub.pair.second);
      set_var(sub.aux, u * v);
      if (sub.slack) {
        // The pair gadget is linear in the slack; pick its minimizing value.
        double d_coeff = 2.0 * (get_var(sub.aux) - u - v - 1.0);
        set_var(*sub.slack, d_coeff <= 0 ? 1.0 : -1.0);
      }
    }
  };

  Def1Report report;
  report.pass = true;
  std::uint64_t z_total = 1ull << n;
  for (std::uint64_t k = 0; k < z_total; ++k) {
    if (k > 0) {
      std::size_t bit = static_cast<std::size_t>(std::countr_zero(k));
      orig.flip(bit);
      value[bit] = value[bit] == lo ? 1.0 : lo;
      quad.flip(bit);
    }
    settle_chain();
    ++report.assignments_checked;
    if (std::abs(quad.value() - orig.value()) > tolerance) {
      report.pass = false;
      report.counterexample =
          Def1Counterexample{orig.assignment(), orig.value(), quad.value()};
      return report;
    }
  }
  return report;
}

SolveReport sa_solve(const Polynomial& p, const SaParams& params) {
  if (p.degree() > 2)
    throw std::invalid_argument(
        "annealer accepts quadratic polynomials only (degree " +
        std::to_string(p.degree()) + " given)");
  if (params.sweeps < 1 || params.restarts < 1)
    throw std::invalid_argument("sweeps and restarts must be at least 1");
  if (params.t_initial < 0 || params.t_final < 0)
    throw std::invalid_argument("temperatures must be positive");

  std::vector<VarId> vars = vars_of(p);
  std::size_t n = vars.size();
  const bool ising = p.domain() == Domain::Ising;

  SolveReport report;
  report.min_value = std::numeric_limits<double>::infinity();
  if (n == 0) {
    report.min_value = p.constant_term();
    report.argmins.push_back({});
    report.assignments_visited = 1;
    return report;
  }

  std::unordered_map<VarId, std::size_t> idx_of;
  for (std::size_t i = 0; i < n; ++i) idx_of.emplace(vars[i], i);
  std::vector<double> linear(n, 0.0);
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  double constant = 0.0;
  for (const auto& [term, c] : p.terms()) {
    if (term.empty()) {
      constant += c;
    } else if (term.size() == 1) {
      linear[idx_of.at(term[0])] += c;
    } else {
      std::size_t i = idx_of.at(term[0]), j = idx_of.at(term[1]);
      adj[i].emplace_back(j, c);
      adj[j].emplace_back(i, c);
    }
  }

  double t0 = params.t_initial;
  if (t0 == 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double reach = std::abs(linear[i]);
      for (const auto& [j, c] : adj[i]) reach += std::abs(c);
      t0 = std::max(t0, 2.0 * reach);
    }
    t0 = std::max(t0, 1.0);
  }
  double t1 = params.t_final == 0.0 ? std::min(t0, 1e-2) : params.t_final;
  if (t0 <= 0 || t1 <= 0 || t1 > t0)
    throw std::invalid_argument("invalid temperature schedule");

  std::vector<double> spin(n);
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> best_spin;

  for (int restart = 0; restart < params.restarts; ++restart) {
    std::mt19937_64 rng(derive_seed(params.seed, restart));
    for (std::size_t i = 0; i < n; ++i)
      spin[i] = (rng() & 1) ? 1.0 : (ising ? -1.0 : 0.0);

    double energy = constant;
    for (std::size_t i = 0; i < n; ++i) {
      energy += linear[i] * spin[i];
      for (const auto& [j, c] : adj[i])
        if (j > i) energy += c * spin[i] * spin[j];
    }
    if (energy < best_value) {
      best_value = energy;
      best_spin = spin;
    }

    for (int sweep = 0; sweep < params.sweeps; ++sweep) {
      double temp =
          params.sweeps == 1
              ? t0
              : t0 * std::pow(t1 / t0,
                              static_cast<double>(sweep) / (params.sweeps - 1));
      for (std::size_t i = 0; i < n; ++i) {
        double field = linear[i];
        for (const auto& [j, c] : adj[i]) field += c * spin[j];
        double delta = ising ? -2.0 * spin[i] * field
                             : (1.0 - 2.0 * spin[i]) * field;
        if (delta <= 0.0 || uniform_unit(rng) < std::exp(-delta / temp)) {
          spin[i] = ising ? -spin[i] : 1.0 - spin[i];
          energy += delta;
          if (energy < best_value) {
            best_value = energy;
            best_spin = spin;
          }
        }
      }
    }
  }

  Assignment best;
  for (std::size_t i = 0; i < n; ++i) best.set(vars[i], best_spin[i]);
  report.min_value = p.evaluate(best);  // exact, not the incremental tally
  report.argmins.push_back(std::move(best));
  report.assignments_visited = static_cast<std::uint64_t>(params.restarts) *
                               params.sweeps * n;
  return report;
}

Projection project_solution(const QuadratizationResult& result,
                            const Assignment& a) {
  for (VarId v : vars_of(result.quadratic))
    if (!a.contains(v))
      throw std::out_of_range("assignment is missing variable " +
                              std::to_string(v));

  Projection proj;
  proj.consistent = true;
  for (const Variable& var : result.registry)
    if (var.kind == VarKind::Original && a.contains(var.id))
      proj.original.set(var.id, a.at(var.id));

  for (const Substitution& sub : result.substitutions) {
    if (a.at(sub.aux) != a.at(sub.pair.first) * a.at(sub.pair.second))
      proj.consistent = false;
  }
  for (const FreedmanSub& sub : result.freedman_substitutions) {
    // Consistent when y attains min over {0,1} of ((k-1) - sum x_i) * y.
    double slope = static_cast<double>(sub.term.size()) - 1.0;
    for (VarId v : sub.term) slope -= a.at(v);
    double at_y = slope * a.at(sub.aux);
    if (at_y != std::min(0.0, slope)) proj.consistent = false;
  }
  return proj;
}

}  // namespace hoboq
