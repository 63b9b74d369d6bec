#include "confound/graph.hpp"

#include <algorithm>
#include <functional>

#include "confound/error.hpp"

namespace confound {

namespace {

bool valid_token(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '{' || c == '}';
  });
}

// Names one cycle among nodes that Kahn's algorithm could not order.
std::string describe_cycle(const std::vector<std::string>& names, const std::vector<NodeSet>& children,
                           NodeSet stuck) {
  // every stuck node has a stuck parent, so walking parents backwards from
  // any stuck node must revisit a node
  std::vector<NodeSet> parents(names.size());
  for (NodeIndex u : stuck)
    for (NodeIndex v : children[u] & stuck) parents[v].insert(u);
  std::vector<NodeIndex> walk;
  std::vector<int> seen_at(names.size(), -1);
  NodeIndex cur = *stuck.begin();
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
    cur = *parents[cur].begin();
  }
  std::vector<NodeIndex> cycle(walk.begin() + seen_at[cur], walk.end());
  std::reverse(cycle.begin(), cycle.end());
  std::string out;
  for (NodeIndex v : cycle) out += names[v] + "->";
  out += names[cycle.front()];
  return out;
}

}  // namespace

Digraph::Digraph(std::vector<std::string> names, std::vector<Edge> edges)
    : names_(std::move(names)), edges_(std::move(edges)) {
  if (names_.size() > kMaxNodes)
    throw Error(ErrorKind::SizeLimit,
                "graph has " + std::to_string(names_.size()) + " nodes; at most " +
                    std::to_string(kMaxNodes) + " are supported");
  for (NodeIndex i = 0; i < names_.size(); ++i) {
    if (!valid_token(names_[i]))
      throw Error(ErrorKind::Parse, "invalid node name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], i).second)
      throw Error(ErrorKind::Parse, "duplicate node '" + names_[i] + "'");
  }
  parents_.assign(names_.size(), NodeSet{});
  children_.assign(names_.size(), NodeSet{});
  for (auto [u, v] : edges_) {
    if (u >= names_.size() || v >= names_.size())
      throw Error(ErrorKind::UnknownNode, "edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::SelfLoop, "self-loop on '" + names_[u] + "'");
    if (children_[u].contains(v))
      throw Error(ErrorKind::DuplicateEdge, "duplicate edge " + names_[u] + "->" + names_[v]);
    children_[u].insert(v);
    parents_[v].insert(u);
  }

  // Kahn's algorithm; ties broken by insertion order
  std::vector<std::size_t> indegree(names_.size());
  for (NodeIndex v = 0; v < names_.size(); ++v) indegree[v] = parents_[v].size();
  NodeSet placed;
  topo_.reserve(names_.size());
  bool progress = true;
  while (progress) {
    progress = false;
    for (NodeIndex v = 0; v < names_.size(); ++v) {
      if (placed.contains(v) || indegree[v] != 0) continue;
      placed.insert(v);
      topo_.push_back(v);
      for (NodeIndex c : children_[v]) --indegree[c];
      progress = true;
    }
  }
  if (topo_.size() != names_.size())
    throw Error(ErrorKind::CycleDetected,
                "cycle detected: " + describe_cycle(names_, children_, all() - placed));
}

void Digraph::check_index(NodeIndex i) const {
  if (i >= names_.size()) throw Error(ErrorKind::UnknownNode, "node index out of range");
}

std::optional<NodeIndex> Digraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Digraph::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorKind::UnknownNode, "unknown node '" + std::string(name) + "'");
}

NodeSet Digraph::set_of(std::span<const std::string> names) const {
  NodeSet s;
  for (const auto& n : names) s.insert(index(n));
  return s;
}

NodeSet Digraph::set_of(std::initializer_list<std::string_view> names) const {
  NodeSet s;
  for (auto n : names) s.insert(index(n));
  return s;
}

NodeSet Digraph::ancestors(NodeIndex i) const {
  check_index(i);
  return ancestors(NodeSet{i});
}

NodeSet Digraph::descendants(NodeIndex i) const {
  check_index(i);
  return descendants(NodeSet{i});
}

NodeSet Digraph::ancestors(NodeSet s) const {
  NodeSet result;
  NodeSet frontier = s;
  while (!frontier.empty()) {
    NodeSet next;
    for (NodeIndex v : frontier) next |= parents_[v];
    next -= result;
    result |= next;
    frontier = next;
  }
  return result;
}

NodeSet Digraph::descendants(NodeSet s) const {
  NodeSet result;
  NodeSet frontier = s;
  while (!frontier.empty()) {
    NodeSet next;
    for (NodeIndex v : frontier) next |= children_[v];
    next -= result;
    result |= next;
    frontier = next;
  }
  return result;
}

std::vector<NodeIndex> Digraph::sorted_by_name(NodeSet s) const {
  std::vector<NodeIndex> v = s.to_vector();
  std::sort(v.begin(), v.end(), [this](NodeIndex a, NodeIndex b) { return names_[a] < names_[b]; });
  return v;
}

std::vector<std::string> Digraph::names_of(NodeSet s) const {
  std::vector<std::string> out;
  for (NodeIndex i : sorted_by_name(s)) out.push_back(names_[i]);
  return out;
}

std::string Digraph::format_set(NodeSet s) const {
  std::string out = "{";
  bool first = true;
  for (NodeIndex i : sorted_by_name(s)) {
    if (!first) out += ',';
    out += names_[i];
    first = false;
  }
  return out + "}";
}

Dag::Dag(Digraph graph, NodeIndex exposure, NodeIndex outcome, std::optional<NodeSet> declared_pre)
    : Digraph(std::move(graph)), exposure_(exposure), outcome_(outcome), declared_pre_(declared_pre) {
  if (exposure >= size() || outcome >= size())
    throw Error(ErrorKind::MissingExposureOrOutcome, "exposure or outcome is not a node of the graph");
  if (exposure == outcome)
    throw Error(ErrorKind::MissingExposureOrOutcome, "exposure and outcome must differ");
  if (declared_pre_ && !declared_pre_->is_subset_of(all()))
    throw Error(ErrorKind::UnknownNode, "declared pre-exposure set names unknown nodes");
  nd_covariates_ = all() - descendants(exposure) - NodeSet{exposure, outcome};
  pool_ = declared_pre_ ? (nd_covariates_ & *declared_pre_) : nd_covariates_;
}

Dag Dag::with_graph(Digraph graph) const {
  return Dag(std::move(graph), exposure_, outcome_, declared_pre_);
}

Dag build_dag(const std::vector<std::string>& nodes,
              const std::vector<std::pair<std::string, std::string>>& edges, std::string_view exposure,
              std::string_view outcome, const std::optional<std::vector<std::string>>& declared_pre) {
  std::unordered_map<std::string, NodeIndex> index;
  for (NodeIndex i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
  auto lookup = [&](const std::string& n) {
    auto it = index.find(n);
    if (it == index.end()) throw Error(ErrorKind::UnknownNode, "unknown node '" + n + "'");
    return it->second;
  };
  std::vector<Edge> idx_edges;
  idx_edges.reserve(edges.size());
  for (const auto& [p, c] : edges) idx_edges.emplace_back(lookup(p), lookup(c));
  Digraph g(nodes, std::move(idx_edges));
  auto role = [&](std::string_view n, const char* what) {
    auto i = g.find(n);
    if (!i)
      throw Error(ErrorKind::MissingExposureOrOutcome,
                  std::string(what) + " '" + std::string(n) + "' is not a node of the graph");
    return *i;
  };
  NodeIndex a = role(exposure, "exposure");
  NodeIndex y = role(outcome, "outcome");
  std::optional<NodeSet> pre;
  if (declared_pre) pre = g.set_of(*declared_pre);
  return Dag(std::move(g), a, y, pre);
}

NodeSet relatives(const Digraph& g, NodeIndex node, Relation kind) {
  if (node >= g.size()) throw Error(ErrorKind::UnknownNode, "node index out of range");
  switch (kind) {
    case Relation::Parents: return g.parents(node);
    case Relation::Children: return g.children(node);
    case Relation::Ancestors: return g.ancestors(node);
    case Relation::Descendants: return g.descendants(node);
    case Relation::Nondescendants: return g.all() - g.descendants(node) - NodeSet{node};
  }
  return {};
}

Digraph subgraph_restrict(const Digraph& g, NodeSet keep) {
  if (!keep.is_subset_of(g.all())) throw Error(ErrorKind::UnknownNode, "restriction names unknown nodes");
  std::vector<NodeIndex> remap(g.size(), kMaxNodes);
  std::vector<std::string> names;
  for (NodeIndex i = 0; i < g.size(); ++i) {
    if (!keep.contains(i)) continue;
    remap[i] = names.size();
    names.push_back(g.name(i));
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (keep.contains(u) && keep.contains(v)) edges.emplace_back(remap[u], remap[v]);
  return Digraph(std::move(names), std::move(edges));
}

Digraph remove_into(const Digraph& g, NodeIndex node) {
  if (node >= g.size()) throw Error(ErrorKind::UnknownNode, "node index out of range");
  std::vector<Edge> edges;
  for (auto e : g.edges())
    if (e.second != node) edges.push_back(e);
  return Digraph(g.names(), std::move(edges));
}

Digraph remove_out_of(const Digraph& g, NodeIndex node) {
  if (node >= g.size()) throw Error(ErrorKind::UnknownNode, "node index out of range");
  std::vector<Edge> edges;
  for (auto e : g.edges())
    if (e.first != node) edges.push_back(e);
  return Digraph(g.names(), std::move(edges));
}

NodeSet Path::interior() const {
  NodeSet s;
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) s.insert(nodes[i]);
  return s;
}

std::string format_path(const Digraph& g, const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (i > 0) out += p.forward[i - 1] ? "->" : "<-";
    out += g.name(p.nodes[i]);
  }
  return out;
}

std::vector<Path> enumerate_paths(const Digraph& g, NodeIndex from, NodeIndex to) {
  if (from >= g.size() || to >= g.size()) throw Error(ErrorKind::UnknownNode, "node index out of range");
  std::vector<Path> out;
  if (from == to) return out;

  // neighbours in name order make the depth-first order lexicographic
  std::vector<std::vector<NodeIndex>> nbrs(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) nbrs[v] = g.sorted_by_name(g.parents(v) | g.children(v));

  Path cur;
  cur.nodes.push_back(from);
  NodeSet on_path{from};
  std::function<void(NodeIndex)> dfs = [&](NodeIndex v) {
    for (NodeIndex w : nbrs[v]) {
      if (on_path.contains(w)) continue;
      cur.nodes.push_back(w);
      cur.forward.push_back(g.has_edge(v, w));
      if (w == to) {
        out.push_back(cur);
      } else {
        on_path.insert(w);
        dfs(w);
        on_path.erase(w);
      }
      cur.nodes.pop_back();
      cur.forward.pop_back();
    }
  };
  dfs(from);
  return out;
}

bool is_blocked(const Digraph& g, const Path& p, NodeSet z) {
  if (p.nodes.size() < 2 || p.forward.size() + 1 != p.nodes.size())
    throw Error(ErrorKind::InvalidPath, "path must have at least two nodes and one mark per step");
  NodeSet seen;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (p.nodes[i] >= g.size()) throw Error(ErrorKind::InvalidPath, "path node out of range");
    if (seen.contains(p.nodes[i])) throw Error(ErrorKind::InvalidPath, "path repeats a node");
    seen.insert(p.nodes[i]);
    if (i == 0) continue;
    NodeIndex prev = p.nodes[i - 1];
    bool ok = p.forward[i - 1] ? g.has_edge(prev, p.nodes[i]) : g.has_edge(p.nodes[i], prev);
    if (!ok) throw Error(ErrorKind::InvalidPath, format_path(g, p) + " is not a path of the graph");
  }
  if (z.contains(p.nodes.front()) || z.contains(p.nodes.back()))
    throw Error(ErrorKind::OverlappingSets, "path endpoints may not be conditioned on");

  for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
    NodeIndex v = p.nodes[i];
    if (p.is_collider(i)) {
      if (!z.contains(v) && !g.descendants(v).intersects(z)) return true;
    } else if (z.contains(v)) {
      return true;
    }
  }
  return false;
}

NodeSet d_connected_from(const Digraph& g, NodeSet sources, NodeSet z) {
  // Bayes-ball reachability: a visit "up" arrives from a child, "down"
  // arrives from a parent.
  const NodeSet z_or_ancestor = z | g.ancestors(z);
  NodeSet went_up, went_down;
  std::vector<std::pair<NodeIndex, bool>> stack;
  for (NodeIndex s : sources) stack.emplace_back(s, true);
  NodeSet reached = sources;
  while (!stack.empty()) {
    auto [v, up] = stack.back();
    stack.pop_back();
    if (up ? went_up.contains(v) : went_down.contains(v)) continue;
    (up ? went_up : went_down).insert(v);
    if (!z.contains(v)) reached.insert(v);
    if (up) {
      if (z.contains(v)) continue;
      for (NodeIndex p : g.parents(v)) stack.emplace_back(p, true);
      for (NodeIndex c : g.children(v)) stack.emplace_back(c, false);
    } else {
      if (!z.contains(v))
        for (NodeIndex c : g.children(v)) stack.emplace_back(c, false);
      if (z_or_ancestor.contains(v))
        for (NodeIndex p : g.parents(v)) stack.emplace_back(p, true);
    }
  }
  return reached;
}

bool d_separated(const Digraph& g, NodeSet a, NodeSet b, NodeSet z) {
  if (!(a | b | z).is_subset_of(g.all())) throw Error(ErrorKind::UnknownNode, "set names unknown nodes");
  if (a.intersects(b) || a.intersects(z) || b.intersects(z))
    throw Error(ErrorKind::OverlappingSets, "d-separation sets must be pairwise disjoint");
  if (a.empty() || b.empty()) return true;
  return !d_connected_from(g, a, z).intersects(b);
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::MissingExposureOrOutcome: return "MissingExposureOrOutcome";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::NonCovariateInSet: return "NonCovariateInSet";
    case ErrorKind::NotACovariate: return "NotACovariate";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::ZeroProbabilityCondition: return "ZeroProbabilityCondition";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::NonNumericState: return "NonNumericState";
    case ErrorKind::NonBinaryExposure: return "NonBinaryExposure";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::MissingModel: return "MissingModel";
    case ErrorKind::IncompleteReport: return "IncompleteReport";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Error";
}

}  // namespace confound
