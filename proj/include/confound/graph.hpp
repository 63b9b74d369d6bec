#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "confound/node_set.hpp"

namespace confound {

using Edge = std::pair<NodeIndex, NodeIndex>;  // (parent, child)

/// Directed acyclic graph over named nodes. Node indices follow insertion
/// order; set-valued results are reported in name order by the helpers
/// `sorted_by_name` and `format_set`.
class Digraph {
 public:
  Digraph() = default;

  /// Throws CycleDetected, DuplicateEdge, SelfLoop, UnknownNode, Parse
  /// (bad or repeated node name) and SizeLimit (more than kMaxNodes).
  Digraph(std::vector<std::string> names, std::vector<Edge> edges);

  std::size_t size() const { return names_.size(); }
  NodeSet all() const { return NodeSet::first(size()); }

  const std::string& name(NodeIndex i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<NodeIndex> find(std::string_view name) const;
  /// Throws UnknownNode.
  NodeIndex index(std::string_view name) const;
  NodeSet set_of(std::span<const std::string> names) const;
  NodeSet set_of(std::initializer_list<std::string_view> names) const;

  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(NodeIndex parent, NodeIndex child) const { return children_[parent].contains(child); }
  bool adjacent(NodeIndex a, NodeIndex b) const { return has_edge(a, b) || has_edge(b, a); }

  NodeSet parents(NodeIndex i) const { return parents_.at(i); }
  NodeSet children(NodeIndex i) const { return children_.at(i); }
  /// Irreflexive: a node is not its own ancestor or descendant.
  NodeSet ancestors(NodeIndex i) const;
  NodeSet descendants(NodeIndex i) const;
  /// Union of the ancestors of each member.
  NodeSet ancestors(NodeSet s) const;
  NodeSet descendants(NodeSet s) const;

  const std::vector<NodeIndex>& topological_order() const { return topo_; }

  /// Members of `s` ordered by node name.
  std::vector<NodeIndex> sorted_by_name(NodeSet s) const;
  std::vector<std::string> names_of(NodeSet s) const;
  /// "{C1,C2}" in name order; "{}" for the empty set.
  std::string format_set(NodeSet s) const;

  bool name_less(NodeIndex a, NodeIndex b) const { return names_[a] < names_[b]; }

 private:
  void check_index(NodeIndex i) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<Edge> edges_;
  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
  std::vector<NodeIndex> topo_;
};

/// A causal diagram: a DAG with a distinguished exposure and outcome.
class Dag : public Digraph {
 public:
  Dag() = default;
  /// Throws MissingExposureOrOutcome when exposure == outcome or either is
  /// out of range, and UnknownNode for declared_pre entries.
  Dag(Digraph graph, NodeIndex exposure, NodeIndex outcome,
      std::optional<NodeSet> declared_pre = std::nullopt);

  NodeIndex exposure() const { return exposure_; }
  NodeIndex outcome() const { return outcome_; }
  const std::optional<NodeSet>& declared_pre() const { return declared_pre_; }

  /// Nondescendants of the exposure other than exposure and outcome,
  /// intersected with declared_pre when present.
  NodeSet covariate_pool() const { return pool_; }
  /// Nondescendants of the exposure other than exposure and outcome.
  NodeSet nondescendant_covariates() const { return nd_covariates_; }

  /// Same roles on a graph with a different edge set over the same nodes.
  Dag with_graph(Digraph graph) const;

 private:
  NodeIndex exposure_ = 0;
  NodeIndex outcome_ = 0;
  std::optional<NodeSet> declared_pre_;
  NodeSet pool_;
  NodeSet nd_covariates_;
};

/// Name-based construction with validation.
Dag build_dag(const std::vector<std::string>& nodes,
              const std::vector<std::pair<std::string, std::string>>& edges,
              std::string_view exposure, std::string_view outcome,
              const std::optional<std::vector<std::string>>& declared_pre = std::nullopt);

enum class Relation { Parents, Children, Ancestors, Descendants, Nondescendants };

NodeSet relatives(const Digraph& g, NodeIndex node, Relation kind);

/// Induced subgraph on `keep`; surviving nodes keep their relative order
/// but are renumbered.
Digraph subgraph_restrict(const Digraph& g, NodeSet keep);

/// Same nodes, minus every edge whose child is `node`.
Digraph remove_into(const Digraph& g, NodeIndex node);
/// Same nodes, minus every edge whose parent is `node`.
Digraph remove_out_of(const Digraph& g, NodeIndex node);

/// A simple path. `forward[i]` is true when the step nodes[i] -> nodes[i+1]
/// follows an edge nodes[i] -> nodes[i+1], false when it follows
/// nodes[i+1] -> nodes[i].
struct Path {
  std::vector<NodeIndex> nodes;
  std::vector<bool> forward;

  bool operator==(const Path&) const = default;

  bool starts_into_source() const { return !forward.empty() && !forward.front(); }
  /// Interior node at position i (0 < i < size-1) with both path edges
  /// pointing into it.
  bool is_collider(std::size_t i) const { return forward[i - 1] && !forward[i]; }
  NodeSet interior() const;
};

/// "A<-C1->Y".
std::string format_path(const Digraph& g, const Path& p);

/// Every simple path between `from` and `to` regardless of orientation, in
/// lexicographic order of node-name sequences.
std::vector<Path> enumerate_paths(const Digraph& g, NodeIndex from, NodeIndex to);

/// Path blocking given `z`. Throws InvalidPath when the path does not exist
/// in `g`, OverlappingSets when an endpoint is in `z`.
bool is_blocked(const Digraph& g, const Path& p, NodeSet z);

/// Reachability-based d-separation. Throws OverlappingSets unless the three
/// sets are pairwise disjoint.
bool d_separated(const Digraph& g, NodeSet a, NodeSet b, NodeSet z);

/// Nodes joined to some member of `sources` by a path open given `z`,
/// including the sources themselves.
NodeSet d_connected_from(const Digraph& g, NodeSet sources, NodeSet z);

}  // namespace confound
