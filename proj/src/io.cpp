#include "hoboq/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hoboq/random.hpp"
#include "json.hpp"

namespace hoboq::io {

namespace {

bool shortlex_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool name_tuple_less(const std::vector<std::string>& a,
                     const std::vector<std::string>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      shortlex_less);
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (is >> tok) tokens.push_back(std::move(tok));
  return tokens;
}

[[noreturn]] void parse_error(int line_no, const std::string& message) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + message);
}

/// Reads content lines (trimmed of '\r', comments and blanks skipped),
/// reporting 1-based line numbers.
std::vector<std::pair<int, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    lines.emplace_back(line_no, line.substr(start));
  }
  return lines;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

void write_or_throw(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

std::string format_coefficient(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

LoadedPolynomial read_hobo(std::istream& in) {
  std::optional<Domain> domain;
  struct RawTerm {
    double coeff;
    std::vector<std::string> names;
  };
  std::vector<RawTerm> raw;
  std::set<std::string> names;

  for (const auto& [line_no, line] : content_lines(in)) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "domain") {
      if (domain) parse_error(line_no, "duplicate domain header");
      if (tokens.size() != 2)
        parse_error(line_no, "expected 'domain ising|boolean'");
      if (tokens[1] == "ising")
        domain = Domain::Ising;
      else if (tokens[1] == "boolean")
        domain = Domain::Boolean;
      else
        parse_error(line_no, "unknown domain tag '" + tokens[1] + "'");
      continue;
    }
    if (!domain) parse_error(line_no, "term before the domain header");
    auto coeff = parse_double(tokens[0]);
    if (!coeff)
      parse_error(line_no, "unparseable coefficient '" + tokens[0] + "'");
    RawTerm term{*coeff, {tokens.begin() + 1, tokens.end()}};
    for (const auto& name : term.names) {
      try {
        validate_var_name(name);
      } catch (const std::invalid_argument& e) {
        parse_error(line_no, e.what());
      }
      names.insert(name);
    }
    raw.push_back(std::move(term));
  }
  if (!domain) throw std::runtime_error("missing 'domain' header");

  std::vector<std::string> ordered(names.begin(), names.end());
  std::sort(ordered.begin(), ordered.end(), shortlex_less);
  LoadedPolynomial out{Polynomial(*domain), VarRegistry{}};
  for (const auto& name : ordered) out.registry.add_original(name);
  for (const auto& term : raw) {
    std::vector<VarId> ids;
    ids.reserve(term.names.size());
    for (const auto& name : term.names) ids.push_back(*out.registry.find(name));
    out.poly.add_term(std::move(ids), term.coeff);
  }
  return out;
}

LoadedPolynomial read_hobo_file(const std::string& path) {
  auto in = open_or_throw(path);
  try {
    return read_hobo(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string hobo_string(const Polynomial& p, const VarRegistry& reg) {
  std::vector<std::pair<std::vector<std::string>, double>> entries;
  entries.reserve(p.terms().size());
  for (const auto& [term, c] : p.terms()) {
    std::vector<std::string> names;
    names.reserve(term.size());
    for (VarId v : term) names.push_back(reg[v].name);
    std::sort(names.begin(), names.end(), shortlex_less);
    entries.emplace_back(std::move(names), c);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) {
              return name_tuple_less(a.first, b.first);
            });

  std::ostringstream os;
  os << "domain " << domain_name(p.domain()) << "\n";
  for (const auto& [names, c] : entries) {
    os << format_coefficient(c);
    for (const auto& name : names) os << ' ' << name;
    os << '\n';
  }
  return os.str();
}

void write_hobo(const Polynomial& p, const VarRegistry& reg,
                std::ostream& out) {
  out << hobo_string(p, reg);
}

void write_hobo_file(const Polynomial& p, const VarRegistry& reg,
                     const std::string& path) {
  write_or_throw(path, hobo_string(p, reg));
}

SubstitutionMap read_map(std::istream& in) {
  SubstitutionMap map;
  bool have_header = false;
  for (const auto& [line_no, line] : content_lines(in)) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 2 || tokens[0] != "M")
        parse_error(line_no, "expected 'M <value>' header");
      auto value = parse_double(tokens[1]);
      if (!value) parse_error(line_no, "unparseable penalty weight");
      map.penalty_weight = *value;
      have_header = true;
      continue;
    }
    if (tokens.size() < 3)
      parse_error(line_no, "substitution line needs aux, variables and kind");
    auto kind = gadget_kind_from(tokens.back());
    if (!kind)
      parse_error(line_no, "unknown gadget kind '" + tokens.back() + "'");
    MapEntry entry;
    entry.kind = *kind;
    entry.aux = tokens.front();
    entry.vars.assign(tokens.begin() + 1, tokens.end() - 1);
    std::size_t want =
        entry.kind == GadgetKind::Rosenberg ? 2 : entry.kind == GadgetKind::IsingPair ? 3 : 0;
    if (want && entry.vars.size() != want)
      parse_error(line_no, "expected " + std::to_string(want) +
                               " variables for this gadget kind");
    if (!want && entry.vars.size() < 3)
      parse_error(line_no, "termwise rewrite needs at least 3 variables");
    map.entries.push_back(std::move(entry));
  }
  if (!have_header) throw std::runtime_error("missing 'M <value>' header");
  return map;
}

SubstitutionMap read_map_file(const std::string& path) {
  auto in = open_or_throw(path);
  try {
    return read_map(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

SubstitutionMap to_map(const QuadratizationResult& result) {
  const VarRegistry& reg = result.registry;
  SubstitutionMap map;
  map.penalty_weight = result.penalty_weight;
  for (const Substitution& sub : result.substitutions) {
    MapEntry entry;
    entry.kind = sub.kind;
    entry.aux = reg[sub.aux].name;
    entry.vars = {reg[sub.pair.first].name, reg[sub.pair.second].name};
    if (sub.slack) entry.vars.push_back(reg[*sub.slack].name);
    map.entries.push_back(std::move(entry));
  }
  for (const FreedmanSub& sub : result.freedman_substitutions) {
    MapEntry entry;
    entry.kind = GadgetKind::Freedman;
    entry.aux = reg[sub.aux].name;
    for (VarId v : sub.term) entry.vars.push_back(reg[v].name);
    map.entries.push_back(std::move(entry));
  }
  return map;
}

std::string map_string(const SubstitutionMap& map) {
  std::ostringstream os;
  os << "M " << format_coefficient(map.penalty_weight) << "\n";
  for (const MapEntry& entry : map.entries) {
    os << entry.aux;
    for (const auto& name : entry.vars) os << ' ' << name;
    os << ' ' << gadget_kind_name(entry.kind) << "\n";
  }
  return os.str();
}

void write_map(const QuadratizationResult& result, std::ostream& out) {
  out << map_string(to_map(result));
}

void write_map_file(const QuadratizationResult& result,
                    const std::string& path) {
  write_or_throw(path, map_string(to_map(result)));
}

ResolvedMap resolve_map(const SubstitutionMap& map, VarRegistry& reg) {
  ResolvedMap out;
  out.penalty_weight = map.penalty_weight;
  auto require = [&](const std::string& name) {
    auto id = reg.find(name);
    if (!id)
      throw std::runtime_error("substitution map references variable '" +
                               name + "' absent from the polynomial");
    return *id;
  };
  auto aux_id = [&](const std::string& name, VarKind kind) {
    auto id = reg.find(name);
    return id ? *id : reg.add_variable(name, kind);
  };
  for (const MapEntry& entry : map.entries) {
    if (entry.kind == GadgetKind::Freedman) {
      FreedmanSub sub;
      sub.aux = aux_id(entry.aux, VarKind::AuxProduct);
      for (const auto& name : entry.vars) sub.term.push_back(require(name));
      std::sort(sub.term.begin(), sub.term.end());
      out.freedman_substitutions.push_back(std::move(sub));
      continue;
    }
    Substitution sub;
    sub.kind = entry.kind;
    sub.aux = aux_id(entry.aux, VarKind::AuxProduct);
    VarId u = require(entry.vars[0]);
    VarId v = require(entry.vars[1]);
    sub.pair = {std::min(u, v), std::max(u, v)};
    if (entry.kind == GadgetKind::IsingPair)
      sub.slack = aux_id(entry.vars[2], VarKind::AuxSlack);
    out.substitutions.push_back(std::move(sub));
  }
  return out;
}

Hypergraph read_hypergraph(std::istream& in) {
  auto lines = content_lines(in);
  if (lines.empty()) throw std::runtime_error("empty hypergraph file");
  auto header = tokenize(lines[0].second);
  if (header.size() != 2)
    parse_error(lines[0].first, "expected 'n m' header");
  Hypergraph h;
  bool any_weight = false;
  std::vector<std::optional<double>> weights;
  try {
    h.n = static_cast<std::uint32_t>(std::stoul(header[0]));
    std::size_t m = std::stoul(header[1]);
    if (lines.size() != m + 1)
      throw std::runtime_error("expected " + std::to_string(m) +
                               " edge lines, found " +
                               std::to_string(lines.size() - 1));
    for (std::size_t e = 1; e <= m; ++e) {
      auto tokens = tokenize(lines[e].second);
      std::optional<double> w;
      if (!tokens.empty() && tokens.back().rfind("w=", 0) == 0) {
        auto value = parse_double(std::string_view(tokens.back()).substr(2));
        if (!value) parse_error(lines[e].first, "unparseable edge weight");
        w = *value;
        tokens.pop_back();
      }
      if (tokens.empty()) parse_error(lines[e].first, "empty edge");
      std::vector<VarId> edge;
      for (const auto& tok : tokens)
        edge.push_back(static_cast<VarId>(std::stoul(tok)));
      std::sort(edge.begin(), edge.end());
      edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
      h.edges.push_back(std::move(edge));
      weights.push_back(w);
      any_weight |= w.has_value();
    }
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("malformed number in hypergraph file");
  } catch (const std::out_of_range&) {
    throw std::runtime_error("number out of range in hypergraph file");
  }
  if (any_weight) {
    h.weights.emplace();
    for (const auto& w : weights) h.weights->push_back(w.value_or(1.0));
  }
  h.validate();
  return h;
}

Hypergraph read_hypergraph_file(const std::string& path) {
  auto in = open_or_throw(path);
  try {
    return read_hypergraph(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

CnfFormula read_wcnf(std::istream& in) {
  CnfFormula f;
  bool have_header = false;
  std::size_t expected_clauses = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (have_header) parse_error(line_no, "duplicate problem line");
      if (tokens.size() < 4 || tokens[1] != "wcnf")
        parse_error(line_no, "expected 'p wcnf <vars> <clauses> [top]'");
      try {
        f.variable_count = static_cast<std::uint32_t>(std::stoul(tokens[2]));
        expected_clauses = std::stoul(tokens[3]);
      } catch (const std::exception&) {
        parse_error(line_no, "malformed problem line");
      }
      have_header = true;
      continue;
    }
    if (!have_header) parse_error(line_no, "clause before the problem line");
    auto weight = parse_double(tokens[0]);
    if (!weight || *weight <= 0)
      parse_error(line_no, "clause weight must be a positive number");
    CnfClause clause;
    clause.penalty = *weight;
    bool terminated = false;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      long lit = 0;
      try {
        lit = std::stol(tokens[i]);
      } catch (const std::exception&) {
        parse_error(line_no, "malformed literal '" + tokens[i] + "'");
      }
      if (lit == 0) {
        terminated = true;
        if (i + 1 != tokens.size())
          parse_error(line_no, "tokens after the clause terminator");
        break;
      }
      std::uint32_t var = static_cast<std::uint32_t>(std::labs(lit)) - 1;
      if (var >= f.variable_count)
        parse_error(line_no, "literal exceeds the declared variable count");
      (lit > 0 ? clause.positive : clause.negative).push_back(var);
    }
    if (!terminated) parse_error(line_no, "clause line not terminated by 0");
    auto dedupe = [](std::vector<VarId>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(clause.positive);
    dedupe(clause.negative);
    f.clauses.push_back(std::move(clause));
  }
  if (!have_header) throw std::runtime_error("missing 'p wcnf' problem line");
  if (f.clauses.size() != expected_clauses)
    throw std::runtime_error("clause count does not match the problem line");
  f.validate();
  return f;
}

CnfFormula read_wcnf_file(const std::string& path) {
  auto in = open_or_throw(path);
  try {
    return read_wcnf(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

/// All k-subsets of 0..n-1 in lexicographic order.
std::vector<Term> enumerate_subsets(std::uint32_t n, std::uint32_t k) {
  std::vector<Term> all;
  Term current(k);
  for (std::uint32_t i = 0; i < k; ++i) current[i] = i;
  for (;;) {
    all.push_back(current);
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && current[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++current[pos];
    for (std::uint32_t i = pos + 1; i < k; ++i)
      current[i] = current[i - 1] + 1;
  }
  return all;
}

}  // namespace

LoadedPolynomial gen_dataset(const DatasetSpec& spec) {
  if (spec.degree_counts.size() > spec.n)
    throw std::invalid_argument("maximum degree exceeds the variable count");
  if (spec.coeff_low > spec.coeff_high ||
      (spec.coeff_low == 0 && spec.coeff_high == 0))
    throw std::invalid_argument("coefficient range contains no nonzero value");

  LoadedPolynomial out{Polynomial(Domain::Ising), VarRegistry{}};
  for (std::uint32_t i = 1; i <= spec.n; ++i)
    out.registry.add_original("s" + std::to_string(i));

  std::mt19937_64 rng(spec.seed);
  constexpr std::uint64_t kEnumerateLimit = 200000;

  for (std::size_t d = 0; d < spec.degree_counts.size(); ++d) {
    std::uint32_t k = static_cast<std::uint32_t>(d + 1);
    std::uint64_t count = spec.degree_counts[d];
    if (count == 0) continue;
    std::uint64_t available =
        binomial_capped(spec.n, k, std::uint64_t{1} << 62);
    if (count > available)
      throw std::invalid_argument(
          "degree " + std::to_string(k) + " asks for " +
          std::to_string(count) + " monomials but only " +
          std::to_string(available) + " exist");

    std::vector<Term> chosen;
    if (available <= kEnumerateLimit) {
      std::vector<Term> all = enumerate_subsets(spec.n, k);
      for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t j = i + uniform_below(rng, all.size() - i);
        std::swap(all[i], all[j]);
      }
      chosen.assign(all.begin(), all.begin() + count);
    } else {
      std::set<Term> seen;
      while (seen.size() < count) {
        Term t;
        for (std::uint32_t i = 0; i < k; ++i) {
          VarId v;
          do {
            v = static_cast<VarId>(uniform_below(rng, spec.n));
          } while (std::find(t.begin(), t.end(), v) != t.end());
          t.push_back(v);
        }
        std::sort(t.begin(), t.end());
        seen.insert(std::move(t));
      }
      chosen.assign(seen.begin(), seen.end());
    }

    for (const Term& term : chosen) {
      std::int64_t coeff;
      do {
        coeff = uniform_int(rng, spec.coeff_low, spec.coeff_high);
      } while (coeff == 0);
      out.poly.add_term(term, static_cast<double>(coeff));
    }
  }
  return out;
}

StatsReport stats(const Polynomial& p) {
  StatsReport report;
  std::set<VarId> seen;
  for (const auto& [term, c] : p.terms()) {
    ++report.terms_by_degree[static_cast<int>(term.size())];
    ++report.total_terms;
    seen.insert(term.begin(), term.end());
  }
  report.variables = static_cast<std::uint32_t>(seen.size());
  return report;
}

std::string stats_json(const StatsReport& report) {
  nlohmann::ordered_json j;
  j["variables"] = report.variables;
  j["terms"] = report.total_terms;
  nlohmann::ordered_json by_degree = nlohmann::ordered_json::object();
  for (const auto& [degree, count] : report.terms_by_degree)
    by_degree[std::to_string(degree)] = count;
  j["by_degree"] = std::move(by_degree);
  return j.dump(2) + "\n";
}

std::string stats_text(const StatsReport& report) {
  std::ostringstream os;
  os << "variables " << report.variables << "\n";
  os << "terms " << report.total_terms << "\n";
  for (const auto& [degree, count] : report.terms_by_degree)
    os << "degree " << degree << ": " << count << "\n";
  return os.str();
}

}  // namespace hoboq::io
