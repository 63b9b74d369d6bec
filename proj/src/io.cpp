#include "confound/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "confound/error.hpp"

namespace confound {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dag parse_graph(std::string_view text, std::string_view source) {
  std::vector<std::string> nodes;
  std::map<std::string, std::size_t, std::less<>> declared_at;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::size_t> edge_lines;
  std::vector<std::string> pre;
  std::optional<std::string> exposure, outcome;

  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokens(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string at = where(source, line_no);
    if (tok[0] == "node") {
      if (tok.size() < 2 || tok.size() > 3)
        throw Error(ErrorKind::Parse, at + "expected 'node <name> [pre|exposure|outcome]'");
      const std::string name(tok[1]);
      if (declared_at.count(name))
        throw Error(ErrorKind::Parse, at + "node '" + name + "' already declared on line " +
                                          std::to_string(declared_at.find(name)->second));
      declared_at.emplace(name, line_no);
      nodes.push_back(name);
      if (tok.size() == 3) {
        if (tok[2] == "pre") {
          pre.push_back(name);
        } else if (tok[2] == "exposure") {
          if (exposure) throw Error(ErrorKind::Parse, at + "second exposure '" + name + "'");
          exposure = name;
        } else if (tok[2] == "outcome") {
          if (outcome) throw Error(ErrorKind::Parse, at + "second outcome '" + name + "'");
          outcome = name;
        } else {
          throw Error(ErrorKind::Parse, at + "unknown node role '" + std::string(tok[2]) + "'");
        }
      }
    } else if (tok[0] == "edge") {
      if (tok.size() != 3) throw Error(ErrorKind::Parse, at + "expected 'edge <parent> <child>'");
      for (std::size_t k = 1; k < 3; ++k)
        if (!declared_at.count(tok[k]))
          throw Error(ErrorKind::UnknownNode, at + "edge names undeclared node '" + std::string(tok[k]) + "'");
      edges.emplace_back(std::string(tok[1]), std::string(tok[2]));
      edge_lines.push_back(line_no);
    } else {
      throw Error(ErrorKind::Parse, at + "unknown statement '" + std::string(tok[0]) + "'");
    }
    if (end == text.size()) break;
  }

  if (!exposure || !outcome)
    throw Error(ErrorKind::MissingExposureOrOutcome,
                std::string(source) + ": graph needs exactly one exposure node and one outcome node");

  std::optional<std::vector<std::string>> declared_pre;
  if (!pre.empty()) declared_pre = pre;
  try {
    return build_dag(nodes, edges, *exposure, *outcome, declared_pre);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DuplicateEdge || e.kind() == ErrorKind::SelfLoop) {
      // point at the offending line
      std::map<std::pair<std::string, std::string>, std::size_t> first;
      for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].first == edges[k].second || !first.emplace(edges[k], edge_lines[k]).second)
          throw Error(e.kind(), where(source, edge_lines[k]) + e.what());
      }
    }
    throw Error(e.kind(), std::string(source) + ": " + e.what());
  }
}

Dag read_graph_file(const std::string& path) { return parse_graph(read_text_file(path), path); }

std::string write_graph(const Dag& dag) {
  std::string out;
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    out += "node " + dag.name(v);
    if (v == dag.exposure())
      out += " exposure";
    else if (v == dag.outcome())
      out += " outcome";
    else if (dag.declared_pre() && dag.declared_pre()->contains(v))
      out += " pre";
    out += '\n';
  }
  for (const auto& [p, c] : dag.edges()) out += "edge " + dag.name(p) + " " + dag.name(c) + "\n";
  return out;
}

namespace {

using nlohmann::json;

std::string state_label(const json& j, const std::string& at) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorKind::Parse, at + "state labels must be strings or integers");
}

std::vector<std::string> split_commas(const std::string& key) {
  std::vector<std::string> out;
  if (key.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = key.find(',', start);
    std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto t = tokens(part);
    out.push_back(t.size() == 1 ? std::string(t[0]) : part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

DiscreteModel parse_model(std::string_view json_text, const Dag& dag, std::string_view source) {
  const std::string at = std::string(source) + ": ";
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, at + "malformed JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("states") || !doc.contains("cpts") || !doc["states"].is_object() ||
      !doc["cpts"].is_object())
    throw Error(ErrorKind::Parse, at + "expected an object with 'states' and 'cpts' objects");

  std::vector<std::vector<std::string>> states(dag.size());
  std::vector<bool> have_states(dag.size(), false);
  for (const auto& [name, list] : doc["states"].items()) {
    const auto v = dag.find(name);
    if (!v) throw Error(ErrorKind::UnknownNode, at + "states given for unknown node '" + name + "'");
    if (!list.is_array()) throw Error(ErrorKind::Parse, at + "states of '" + name + "' must be a list");
    for (const auto& s : list) states[*v].push_back(state_label(s, at));
    have_states[*v] = true;
  }
  for (NodeIndex v = 0; v < dag.size(); ++v)
    if (!have_states[v]) throw Error(ErrorKind::InvalidModel, at + "no states for node '" + dag.name(v) + "'");

  auto index_of_state = [&](NodeIndex node, const std::string& label) -> std::size_t {
    const auto& s = states[node];
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] == label) return i;
    throw Error(ErrorKind::UnknownState, at + "'" + label + "' is not a state of '" + dag.name(node) + "'");
  };

  std::vector<Cpt> cpts;
  for (const auto& [name, spec] : doc["cpts"].items()) {
    const auto v = dag.find(name);
    if (!v) throw Error(ErrorKind::UnknownNode, at + "CPT given for unknown node '" + name + "'");
    if (!spec.is_object() || !spec.contains("table") || !spec["table"].is_object())
      throw Error(ErrorKind::Parse, at + "CPT of '" + name + "' needs a 'table' object");
    Cpt cpt;
    cpt.node = *v;
    if (spec.contains("parents")) {
      if (!spec["parents"].is_array())
        throw Error(ErrorKind::Parse, at + "parents of '" + name + "' must be a list");
      for (const auto& p : spec["parents"]) {
        if (!p.is_string()) throw Error(ErrorKind::Parse, at + "parent names must be strings");
        const auto pi = dag.find(p.get<std::string>());
        if (!pi) throw Error(ErrorKind::UnknownNode, at + "unknown parent '" + p.get<std::string>() + "'");
        cpt.parent_order.push_back(*pi);
      }
    }
    std::size_t configs = 1;
    for (NodeIndex p : cpt.parent_order) configs *= states[p].size();
    std::vector<std::optional<std::vector<Rational>>> rows(configs);
    for (const auto& [key, entries] : spec["table"].items()) {
      const std::vector<std::string> parts = split_commas(key);
      if (parts.size() != cpt.parent_order.size())
        throw Error(ErrorKind::InvalidModel, at + "CPT of '" + name + "': key '" + key + "' needs " +
                                                 std::to_string(cpt.parent_order.size()) + " parent states");
      std::size_t row = 0;
      for (std::size_t k = 0; k < parts.size(); ++k)
        row = row * states[cpt.parent_order[k]].size() + index_of_state(cpt.parent_order[k], parts[k]);
      if (rows[row]) throw Error(ErrorKind::InvalidModel, at + "CPT of '" + name + "' repeats row '" + key + "'");
      if (!entries.is_array())
        throw Error(ErrorKind::Parse, at + "CPT of '" + name + "': row '" + key + "' must be a list");
      std::vector<Rational> probs;
      for (const auto& e : entries) {
        if (!e.is_string())
          throw Error(ErrorKind::Parse, at + "CPT of '" + name + "': probabilities must be strings such as \"1/4\"");
        try {
          probs.push_back(parse_rational(e.get<std::string>()));
        } catch (const Error& err) {
          throw Error(ErrorKind::Parse, at + "CPT of '" + name + "': " + err.what());
        }
      }
      rows[row] = std::move(probs);
    }
    for (std::size_t r = 0; r < configs; ++r)
      if (!rows[r]) throw Error(ErrorKind::InvalidModel, at + "CPT of '" + name + "' misses a parent configuration");
    for (auto& r : rows) cpt.rows.push_back(std::move(*r));
    cpts.push_back(std::move(cpt));
  }
  try {
    return DiscreteModel(dag, std::move(states), std::move(cpts));
  } catch (const Error& e) {
    throw Error(e.kind(), at + e.what());
  }
}

DiscreteModel read_model_file(const std::string& path, const Dag& dag) {
  return parse_model(read_text_file(path), dag, path);
}

std::string write_model(const DiscreteModel& model) {
  const Dag& dag = model.dag();
  nlohmann::ordered_json doc;
  doc["states"] = nlohmann::ordered_json::object();
  for (NodeIndex v = 0; v < dag.size(); ++v) doc["states"][dag.name(v)] = model.states(v);
  doc["cpts"] = nlohmann::ordered_json::object();
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    const Cpt& cpt = model.cpt(v);
    nlohmann::ordered_json entry;
    entry["parents"] = nlohmann::ordered_json::array();
    for (NodeIndex p : cpt.parent_order) entry["parents"].push_back(dag.name(p));
    entry["table"] = nlohmann::ordered_json::object();
    std::vector<std::size_t> digits(cpt.parent_order.size(), 0);
    for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
      std::string key;
      for (std::size_t k = 0; k < digits.size(); ++k) {
        if (k) key += ',';
        key += model.states(cpt.parent_order[k])[digits[k]];
      }
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const Rational& p : cpt.rows[r]) row.push_back(to_exact_string(p));
      entry["table"][key] = row;
      for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < model.states(cpt.parent_order[k]).size()) break;
        digits[k] = 0;
      }
    }
    doc["cpts"][dag.name(v)] = entry;
  }
  return doc.dump(2) + "\n";
}

}  // namespace confound
