#include "tpsctl/network_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "tpsctl/error.hpp"

namespace tpsctl {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
      return false;
  return true;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool decimal_syntax(std::string_view s) {
  // digits [ '.' digits ] [ ('e'|'E') ['+'|'-'] digits ], with at least one
  // mantissa digit.
  std::size_t i = 0, digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp;
    if (exp == 0) return false;
  }
  return i == s.size();
}

std::optional<double> parse_decimal(std::string_view s) {
  if (!decimal_syntax(s)) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct TableLine {
  std::size_t line;
  std::string owner;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> rows;
};

// "<name> [| parents...] : row ; row ..."
TableLine parse_table(std::size_t line, const std::string& keyword, std::string_view rest) {
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos)
    throw ParseError(line, keyword + " line needs ':' before its probability rows");
  std::string_view head = rest.substr(0, colon);
  std::string_view body = rest.substr(colon + 1);

  TableLine t{line, {}, {}, {}};
  std::vector<std::string> lhs, rhs;
  if (const auto bar = head.find('|'); bar != std::string_view::npos) {
    lhs = split_ws(head.substr(0, bar));
    rhs = split_ws(head.substr(bar + 1));
    if (rhs.empty()) throw ParseError(line, keyword + " line has '|' but no conditioning names");
  } else {
    lhs = split_ws(head);
  }
  if (lhs.size() != 1) throw ParseError(line, keyword + " line must name exactly one node");
  t.owner = lhs.front();
  t.parents = std::move(rhs);

  std::size_t start = 0;
  while (true) {
    const auto semi = body.find(';', start);
    const auto chunk = body.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    std::vector<double> row;
    for (const auto& tok : split_ws(chunk)) {
      auto v = parse_number(tok);
      if (!v) throw ParseError(line, "malformed probability '" + tok + "'");
      row.push_back(*v);
    }
    if (row.empty()) throw ParseError(line, "empty probability row in " + keyword + " line");
    t.rows.push_back(std::move(row));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return t;
}

Cpd build_table(const TableLine& t, const Dag& dag, const std::vector<std::size_t>& cards,
                const std::string& keyword) {
  auto owner = dag.find(t.owner);
  if (!owner) throw ParseError(t.line, keyword + " for unknown node '" + t.owner + "'");
  std::vector<NodeIndex> parents;
  std::vector<std::size_t> pcards;
  std::size_t rows = 1;
  for (const auto& p : t.parents) {
    auto idx = dag.find(p);
    if (!idx) throw ParseError(t.line, keyword + " references unknown node '" + p + "'");
    parents.push_back(*idx);
    pcards.push_back(cards[*idx]);
    rows *= cards[*idx];
  }
  if (t.rows.size() != rows)
    throw ParseError(t.line, keyword + " of '" + t.owner + "' has " + std::to_string(t.rows.size()) +
                                 " rows, expected " + std::to_string(rows));
  std::vector<double> table;
  for (const auto& r : t.rows) {
    if (r.size() != cards[*owner])
      throw ParseError(t.line, keyword + " row of '" + t.owner + "' has " + std::to_string(r.size()) +
                                   " entries, expected " + std::to_string(cards[*owner]));
    table.insert(table.end(), r.begin(), r.end());
  }
  try {
    return Cpd(*owner, cards[*owner], std::move(parents), std::move(pcards), std::move(table));
  } catch (const ValidationError& e) {
    throw ParseError(t.line, keyword + " of '" + t.owner + "': " + e.what());
  }
}

void write_table(std::ostringstream& out, const std::string& keyword, const Dag& dag, const Cpd& cpd) {
  out << keyword << ' ' << dag.name(cpd.owner());
  if (!cpd.parents().empty()) {
    out << " |";
    for (NodeIndex p : cpd.parents()) out << ' ' << dag.name(p);
  }
  out << " :";
  for (std::size_t r = 0; r < cpd.row_count(); ++r) {
    if (r > 0) out << " ;";
    for (double x : cpd.row(r)) out << ' ' << format_number(x);
  }
  out << '\n';
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::optional<double> parse_number(std::string_view token) {
  if (const auto slash = token.find('/'); slash != std::string_view::npos) {
    auto num = parse_decimal(token.substr(0, slash));
    auto den = parse_decimal(token.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }
  return parse_decimal(token);
}

const Cbn& NetworkFile::require_cbn() const {
  if (!cbn) throw ValidationError("network file has no cpd lines; a parametrization is required");
  return *cbn;
}

ControlProblem NetworkFile::problem(Objective objective) const {
  return ControlProblem(dag, intervenable, targets, objective);
}

NetworkFile parse_network(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::size_t> cards;
  std::unordered_map<std::string, std::size_t> node_line;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> edges;
  std::vector<std::pair<std::size_t, std::string>> intervenable;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::size_t>>> targets;
  std::vector<TableLine> cpds, policies;
  bool header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string& kw = tokens.front();

    if (!header) {
      if (kw != "tpsnet") throw ParseError(line_no, "file must start with 'tpsnet <version>'");
      if (tokens.size() != 2) throw ParseError(line_no, "header is 'tpsnet <version>'");
      auto version = parse_index(tokens[1]);
      if (!version || *version != static_cast<std::size_t>(kNetworkSchemaVersion))
        throw ParseError(line_no, "unsupported schema version '" + tokens[1] + "'");
      header = true;
      continue;
    }

    if (kw == "node") {
      if (tokens.size() < 2 || tokens.size() > 3) throw ParseError(line_no, "expected 'node <name> [cardinality]'");
      if (!valid_name(tokens[1])) throw ParseError(line_no, "invalid node name '" + tokens[1] + "'");
      if (!node_line.emplace(tokens[1], line_no).second)
        throw ParseError(line_no, "duplicate node '" + tokens[1] + "'");
      std::size_t card = 2;
      if (tokens.size() == 3) {
        auto c = parse_index(tokens[2]);
        if (!c || *c < 2) throw ParseError(line_no, "cardinality must be an integer >= 2");
        card = *c;
      }
      names.push_back(tokens[1]);
      cards.push_back(card);
    } else if (kw == "edge") {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'edge <parent> <child>'");
      edges.push_back({line_no, {tokens[1], tokens[2]}});
    } else if (kw == "intervenable") {
      for (std::size_t i = 1; i < tokens.size(); ++i) intervenable.push_back({line_no, tokens[i]});
    } else if (kw == "target") {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'target <name> <value>'");
      auto v = parse_index(tokens[2]);
      if (!v) throw ParseError(line_no, "target value must be a non-negative integer");
      targets.push_back({line_no, {tokens[1], *v}});
    } else if (kw == "cpd" || kw == "policy") {
      const auto at = line.find(kw);
      auto t = parse_table(line_no, kw, line.substr(at + kw.size()));
      (kw == "cpd" ? cpds : policies).push_back(std::move(t));
    } else if (kw == "tpsnet") {
      throw ParseError(line_no, "duplicate header");
    } else {
      throw ParseError(line_no, "unknown directive '" + kw + "'");
    }
  }
  if (!header) throw ParseError(0, "empty network file (missing 'tpsnet' header)");
  if (names.empty()) throw ParseError(0, "network file declares no nodes");

  std::unordered_map<std::string, NodeIndex> index;
  for (NodeIndex i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  auto lookup = [&](std::size_t line, const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw ParseError(line, "unknown node '" + name + "'");
    return it->second;
  };

  std::vector<Edge> edge_list;
  for (const auto& [line, e] : edges) {
    const NodeIndex p = lookup(line, e.first);
    const NodeIndex c = lookup(line, e.second);
    if (p == c) throw ParseError(line, "self-loop on '" + e.first + "'");
    for (const Edge& prev : edge_list)
      if (prev.parent == p && prev.child == c) throw ParseError(line, "duplicate edge");
    edge_list.push_back({p, c});
  }
  NetworkFile file;
  try {
    file.dag = Dag(names, edge_list);
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  file.cards = cards;

  for (const auto& [line, name] : intervenable) file.intervenable.push_back(lookup(line, name));
  file.intervenable = canonical(std::move(file.intervenable));

  for (const auto& [line, t] : targets) {
    const NodeIndex v = lookup(line, t.first);
    if (t.second >= cards[v])
      throw ParseError(line, "target value " + std::to_string(t.second) + " out of range for '" + t.first + "'");
    if (!file.targets.emplace(v, t.second).second)
      throw ParseError(line, "duplicate target '" + t.first + "'");
  }

  if (!cpds.empty()) {
    std::vector<Cpd> tables;
    std::vector<bool> seen(names.size(), false);
    for (const auto& t : cpds) {
      Cpd c = build_table(t, file.dag, cards, "cpd");
      if (seen[c.owner()]) throw ParseError(t.line, "duplicate cpd for '" + t.owner + "'");
      seen[c.owner()] = true;
      if (canonical(c.parents()) != file.dag.parents(c.owner()))
        throw ParseError(t.line, "cpd parents of '" + t.owner + "' differ from its edges");
      tables.push_back(std::move(c));
    }
    for (NodeIndex v = 0; v < names.size(); ++v)
      if (!seen[v]) throw ParseError(0, "missing cpd for '" + names[v] + "'");
    file.cbn = Cbn(file.dag, cards, std::move(tables));
  }

  for (const auto& t : policies) {
    InterventionPolicy p(build_table(t, file.dag, cards, "policy"));
    try {
      validate_policy(file.dag, cards, p);
      file.policies.add(std::move(p));
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ParseError(t.line, e.what());
    }
  }
  return file;
}

NetworkFile load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.detail());
  }
}

std::string serialize_network(const NetworkFile& file) {
  std::ostringstream out;
  const Dag& dag = file.dag;
  out << "tpsnet " << kNetworkSchemaVersion << '\n';
  for (NodeIndex v = 0; v < dag.size(); ++v) out << "node " << dag.name(v) << ' ' << file.cards.at(v) << '\n';
  for (const Edge& e : dag.edges()) out << "edge " << dag.name(e.parent) << ' ' << dag.name(e.child) << '\n';
  out << "intervenable";
  for (NodeIndex v : file.intervenable) out << ' ' << dag.name(v);
  out << '\n';
  for (const auto& [v, value] : file.targets) out << "target " << dag.name(v) << ' ' << value << '\n';
  if (file.cbn)
    for (const Cpd& c : file.cbn->cpds()) write_table(out, "cpd", dag, c);
  for (const auto& [_, p] : file.policies.policies()) write_table(out, "policy", dag, p.table());
  return out.str();
}

void save_network(const NetworkFile& file, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << serialize_network(file);
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

}  // namespace tpsctl
