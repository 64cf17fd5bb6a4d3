#include "hoboq/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hoboq/gadgets.hpp"
#include "hoboq/io.hpp"
#include "hoboq/poly.hpp"
#include "hoboq/quadratize.hpp"
#include "hoboq/solve.hpp"

namespace hoboq::cli {

namespace {

Domain domain_from(const std::string& name) {
  return name == "ising" ? Domain::Ising : Domain::Boolean;
}

std::string assignment_line(const Assignment& a, const VarRegistry& reg) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, value] : a) {
    if (!first) os << ' ';
    first = false;
    os << reg[id].name << '=' << io::format_coefficient(value);
  }
  return os.str();
}

void print_solve_report(const SolveReport& report, const VarRegistry& reg,
                        const std::string& method, std::ostream& out) {
  out << "method " << method << "\n";
  out << "assignments-visited " << report.assignments_visited << "\n";
  out << "min " << io::format_coefficient(report.min_value) << "\n";
  out << "argmin-count " << report.argmins.size()
      << (report.argmins_truncated ? " (truncated)" : "") << "\n";
  if (!report.argmins.empty() && !report.argmins.front().empty())
    out << "argmin " << assignment_line(report.argmins.front(), reg) << "\n";
}

std::vector<std::uint64_t> parse_count_list(const std::string& csv) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(std::stoull(item));
  return out;
}

struct CoeffRange {
  int low = -10, high = 10;
};

CoeffRange parse_coeff_range(const std::string& csv) {
  auto comma = csv.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--coeff-range", "expected LO,HI");
  return CoeffRange{std::stoi(csv.substr(0, comma)),
                    std::stoi(csv.substr(comma + 1))};
}

void run_convert(const std::string& to, const std::string& in_path,
                 const std::string& out_path) {
  auto loaded = io::read_hobo_file(in_path);
  Polynomial converted = convert_domain(loaded.poly, domain_from(to));
  io::write_hobo_file(converted, loaded.registry, out_path);
}

void run_quadratize(int algo, const std::string& space, bool termwise,
                    std::optional<double> penalty, const std::string& in_path,
                    const std::string& out_path, const std::string& map_path,
                    const std::string& stats_path, std::ostream& out) {
  auto loaded = io::read_hobo_file(in_path);
  Polynomial p = loaded.poly;
  if (space != "native") {
    Domain target = domain_from(space);
    if (target != p.domain()) p = convert_domain(p, target);
  }
  QuadratizeOptions options;
  options.heuristic =
      algo == 1 ? PairHeuristic::ValueCount : PairHeuristic::EdgeWeight;
  options.penalty_weight = penalty;
  options.termwise_negative = termwise;
  QuadratizationResult result = quadratize(p, loaded.registry, options);

  io::write_hobo_file(result.quadratic, result.registry, out_path);
  io::write_map_file(result, map_path);
  io::StatsReport report = io::stats(result.quadratic);
  if (!stats_path.empty()) {
    std::ofstream stats_out(stats_path, std::ios::binary);
    if (!stats_out)
      throw std::runtime_error("cannot open '" + stats_path +
                               "' for writing");
    stats_out << io::stats_json(report);
  }
  out << "substitutions " << result.substitutions.size() << "\n";
  if (!result.freedman_substitutions.empty())
    out << "termwise-rewrites " << result.freedman_substitutions.size()
        << "\n";
  out << "aux-variables " << result.aux_count() << "\n";
  out << "variables " << report.variables << "\n";
  out << "terms " << report.total_terms << "\n";
  out << "M " << io::format_coefficient(result.penalty_weight) << "\n";
}

int run_verify(const std::string& original_path, const std::string& quad_path,
               const std::string& map_path, int limit, int threads,
               std::ostream& out) {
  auto original = io::read_hobo_file(original_path);
  auto quadratized = io::read_hobo_file(quad_path);
  io::SubstitutionMap map = io::read_map_file(map_path);

  // Remap the original polynomial onto the quadratized file's registry.
  // Originals must be registered before resolve_map can add auxiliaries.
  VarRegistry reg = quadratized.registry;
  Polynomial original_poly(original.poly.domain());
  std::vector<VarId> z_vars;
  for (const Variable& var : original.registry) {
    auto id = reg.find(var.name);
    z_vars.push_back(id ? *id : reg.add_variable(var.name, VarKind::Original));
  }
  for (const auto& [term, c] : original.poly.terms()) {
    std::vector<VarId> ids;
    for (VarId v : term) ids.push_back(z_vars[v]);
    original_poly.add_term(std::move(ids), c);
  }
  std::sort(z_vars.begin(), z_vars.end());
  z_vars.erase(std::unique(z_vars.begin(), z_vars.end()), z_vars.end());
  if (original_poly.domain() != quadratized.poly.domain())
    original_poly = convert_domain(original_poly, quadratized.poly.domain());

  io::ResolvedMap resolved = io::resolve_map(map, reg);
  std::vector<VarId> aux;
  for (const auto& sub : resolved.substitutions) {
    aux.push_back(sub.aux);
    if (sub.slack) aux.push_back(*sub.slack);
  }
  for (const auto& sub : resolved.freedman_substitutions)
    aux.push_back(sub.aux);
  std::sort(aux.begin(), aux.end());
  aux.erase(std::unique(aux.begin(), aux.end()), aux.end());

  Def1Report report =
      verify_definition1(original_poly, quadratized.poly, z_vars, aux,
                         kValueTolerance, limit, threads);
  if (!report.pass) {
    out << "counterexample at original assignment:\n";
    out << "  z: " << assignment_line(report.counterexample->z, reg) << "\n";
    out << "  original value: "
        << io::format_coefficient(report.counterexample->original_value)
        << "\n";
    out << "  quadratic min:  "
        << io::format_coefficient(report.counterexample->quadratic_min)
        << "\n";
    out << "FAIL\n";
    return 1;
  }
  Def1Report chain = verify_substitution_chain(
      original_poly, quadratized.poly, z_vars, resolved.substitutions,
      resolved.freedman_substitutions, kValueTolerance, limit);
  if (!chain.pass) {
    out << "substitution chain does not reproduce the original value:\n";
    out << "  z: " << assignment_line(chain.counterexample->z, reg) << "\n";
    out << "  original value: "
        << io::format_coefficient(chain.counterexample->original_value)
        << "\n";
    out << "  mapped value:   "
        << io::format_coefficient(chain.counterexample->quadratic_min)
        << "\n";
    out << "FAIL\n";
    return 1;
  }
  out << "checked " << report.assignments_checked
      << " original assignments: PASS\n";
  return 0;
}

void run_solve(const std::string& method, const std::string& in_path,
               std::uint64_t seed, int sweeps, int restarts, int limit,
               int threads, std::ostream& out) {
  auto loaded = io::read_hobo_file(in_path);
  SolveReport report;
  if (method == "exhaustive") {
    report = brute_force_min(loaded.poly, limit, threads);
  } else {
    SaParams params;
    params.seed = seed;
    params.sweeps = sweeps;
    params.restarts = restarts;
    report = sa_solve(loaded.poly, params);
  }
  print_solve_report(report, loaded.registry, method, out);
}

void run_stats(const std::string& in_path, bool json, std::ostream& out) {
  auto loaded = io::read_hobo_file(in_path);
  io::StatsReport report = io::stats(loaded.poly);
  out << (json ? io::stats_json(report) : io::stats_text(report));
}

void run_gen(std::uint32_t vars, const std::string& counts_csv,
             const std::string& range_csv, std::uint64_t seed,
             const std::string& out_path) {
  io::DatasetSpec spec;
  spec.n = vars;
  spec.degree_counts = parse_count_list(counts_csv);
  CoeffRange range = parse_coeff_range(range_csv);
  spec.coeff_low = range.low;
  spec.coeff_high = range.high;
  spec.seed = seed;
  auto generated = io::gen_dataset(spec);
  io::write_hobo_file(generated.poly, generated.registry, out_path);
}

void run_encode(const std::string& kind, const std::string& in_path,
                const std::string& out_path, std::optional<double> penalty,
                std::optional<double> balance) {
  if (penalty && kind != "vertexcover")
    throw CLI::ValidationError("--penalty", "only applies to vertexcover");
  if (balance && kind != "partition")
    throw CLI::ValidationError("--balance", "only applies to partition");
  if (kind == "maxsat") {
    CnfFormula f = io::read_wcnf_file(in_path);
    io::write_hobo_file(encode_maxsat(f), maxsat_registry(f), out_path);
    return;
  }
  Hypergraph h = io::read_hypergraph_file(in_path);
  Polynomial p(Domain::Boolean);
  Domain domain = Domain::Boolean;
  if (kind == "maxcover") {
    p = encode_max_cover(h);
  } else if (kind == "vertexcover") {
    p = encode_vertex_cover(h, penalty);
  } else if (kind == "maxcut") {
    p = encode_max_cut(h);
    domain = Domain::Ising;
  } else {
    p = encode_partition(h, balance);
    domain = Domain::Ising;
  }
  io::write_hobo_file(p, hypergraph_registry(h, domain), out_path);
}

void run_certify(std::ostream& out) {
  Certificate cert = theorem1_certificate();
  out << "constraint rows (candidate must vanish):\n"
      << to_string(cert.equality);
  out << "constraint rows (candidate must be positive):\n"
      << to_string(cert.inequality);
  out << "computed right-kernel basis (columns):\n" << to_string(cert.kernel);
  out << "kernel dimension: " << cert.kernel.cols() << "\n";
  out << "product of positivity rows with kernel basis:\n"
      << to_string(cert.fk);
  out << "column sums: " << to_string(column_sums(cert.fk));
  out << "published kernel basis (columns):\n"
      << to_string(cert.published_kernel);
  out << "product with published basis:\n" << to_string(cert.fk_published);
  out << "column sums: " << to_string(column_sums(cert.fk_published));
  out << "every positivity combination sums to zero but would need sum >= 4\n";
  out << "feasible: " << (cert.feasible ? "true" : "false") << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"higher-order binary optimization to QUBO/Ising reduction"};
  app.require_subcommand(1);
  int exit_code = 0;

  // convert
  auto* convert = app.add_subcommand("convert", "rewrite between variable domains");
  std::string conv_to, conv_in, conv_out;
  convert->add_option("--to", conv_to, "target domain")
      ->required()
      ->check(CLI::IsMember({"ising", "boolean"}));
  convert->add_option("--in", conv_in, "input .hobo file")->required();
  convert->add_option("--out", conv_out, "output .hobo file")->required();
  convert->callback([&] { run_convert(conv_to, conv_in, conv_out); });

  // quadratize
  auto* quad = app.add_subcommand("quadratize", "reduce to quadratic form");
  int q_algo = 1;
  std::string q_space = "native", q_in, q_out, q_map, q_stats;
  bool q_termwise = false;
  std::optional<double> q_penalty;
  quad->add_option("--algo", q_algo, "pair-selection heuristic")
      ->check(CLI::IsMember({1, 2}));
  quad->add_option("--space", q_space, "reduction space")
      ->check(CLI::IsMember({"native", "ising", "boolean"}));
  quad->add_option("--penalty", q_penalty, "penalty weight M");
  quad->add_flag("--termwise", q_termwise,
                 "rewrite negative Boolean monomials termwise");
  quad->add_option("--in", q_in, "input .hobo file")->required();
  quad->add_option("--out", q_out, "output QUBO .hobo file")->required();
  quad->add_option("--map", q_map, "output substitution map")->required();
  quad->add_option("--stats-json", q_stats, "write output stats as JSON");
  quad->callback([&] {
    run_quadratize(q_algo, q_space, q_termwise, q_penalty, q_in, q_out, q_map,
                   q_stats, out);
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check a quadratization");
  std::string v_orig, v_quad, v_map;
  int v_limit = 24, v_threads = 1;
  verify->add_option("--original", v_orig, "original .hobo file")->required();
  verify->add_option("--quadratized", v_quad, "quadratized .hobo file")
      ->required();
  verify->add_option("--map", v_map, "substitution map file")->required();
  verify->add_option("--limit", v_limit, "max total variables");
  verify->add_option("--threads", v_threads, "worker threads");
  verify->callback([&] {
    exit_code = run_verify(v_orig, v_quad, v_map, v_limit, v_threads, out);
  });

  // solve
  auto* solve = app.add_subcommand("solve", "minimize a polynomial");
  std::string s_method = "exhaustive", s_in;
  std::uint64_t s_seed = 1;
  int s_sweeps = 500, s_restarts = 8, s_limit = 24, s_threads = 1;
  solve->add_option("--method", s_method, "solver")
      ->check(CLI::IsMember({"exhaustive", "sa"}));
  solve->add_option("--seed", s_seed, "annealer seed");
  solve->add_option("--sweeps", s_sweeps, "annealer sweeps per restart");
  solve->add_option("--restarts", s_restarts, "annealer restarts");
  solve->add_option("--limit", s_limit, "exhaustive variable limit");
  solve->add_option("--threads", s_threads, "exhaustive worker threads");
  solve->add_option("--in", s_in, "input .hobo file")->required();
  solve->callback([&] {
    run_solve(s_method, s_in, s_seed, s_sweeps, s_restarts, s_limit,
              s_threads, out);
  });

  // stats
  auto* st = app.add_subcommand("stats", "degree histogram and counts");
  std::string st_in;
  bool st_json = false;
  st->add_option("--in", st_in, "input .hobo file")->required();
  st->add_flag("--json", st_json, "emit JSON");
  st->callback([&] { run_stats(st_in, st_json, out); });

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
  std::uint32_t g_vars = 0;
  std::string g_counts, g_range = "-10,10", g_out;
  std::uint64_t g_seed = 1;
  gen->add_option("--vars", g_vars, "variable count")->required();
  gen->add_option("--degree-counts", g_counts,
                  "monomials per degree, e.g. 14,91,60")
      ->required();
  gen->add_option("--coeff-range", g_range, "integer coefficient bounds LO,HI");
  gen->add_option("--seed", g_seed, "generator seed");
  gen->add_option("--out", g_out, "output .hobo file")->required();
  gen->callback([&] { run_gen(g_vars, g_counts, g_range, g_seed, g_out); });

  // encode
  auto* encode = app.add_subcommand("encode", "build a problem polynomial");
  std::string e_kind, e_in, e_out;
  std::optional<double> e_penalty, e_balance;
  encode
      ->add_option("kind", e_kind, "problem family")
      ->required()
      ->check(CLI::IsMember(
          {"maxcover", "vertexcover", "maxcut", "partition", "maxsat"}));
  encode->add_option("--in", e_in, "hypergraph or WCNF input")->required();
  encode->add_option("--out", e_out, "output .hobo file")->required();
  encode->add_option("--penalty", e_penalty, "vertex-cover penalty M");
  encode->add_option("--balance", e_balance, "partition balance weight A");
  encode->callback(
      [&] { run_encode(e_kind, e_in, e_out, e_penalty, e_balance); });

  // certify-theorem1
  auto* certify = app.add_subcommand(
      "certify-theorem1",
      "show why one auxiliary cannot encode y = s1 s2 in Ising space");
  certify->callback([&] { run_certify(out); });

  std::vector<const char*> argv;
  argv.push_back("hoboq");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace hoboq::cli
