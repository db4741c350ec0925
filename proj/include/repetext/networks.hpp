#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "repetext/entities.hpp"

namespace repetext {

// Unordered entity pair, stored with first < second.
struct EdgeKey {
  EntityId first = 0;
  EntityId second = 0;

  EdgeKey() = default;
  EdgeKey(EntityId a, EntityId b) : first(a < b ? a : b), second(a < b ? b : a) {}

  auto operator<=>(const EdgeKey&) const = default;
};

struct ParagraphSet {
  std::set<std::size_t> paragraphs;
  std::string description;

  static ParagraphSet all(std::size_t paragraph_count);
  static ParagraphSet from(std::set<std::size_t> paragraphs, std::string description);
};

class AssociationGraph {
 public:
  AssociationGraph() = default;
  AssociationGraph(std::set<EntityId> nodes, std::map<EdgeKey, std::size_t> edges, int window,
                   std::string paragraph_filter);

  const std::set<EntityId>& nodes() const noexcept { return nodes_; }
  const std::map<EdgeKey, std::size_t>& edges() const noexcept { return edges_; }
  int window() const noexcept { return window_; }
  const std::string& paragraph_filter() const noexcept { return paragraph_filter_; }

  // Weight of {a, b} in either order; 0 when absent.
  std::size_t weight(EntityId a, EntityId b) const;
  bool empty() const noexcept { return nodes_.empty(); }
  std::map<EntityId, std::vector<std::pair<EntityId, std::size_t>>> adjacency() const;

  bool operator==(const AssociationGraph&) const = default;

 private:
  std::set<EntityId> nodes_;
  std::map<EdgeKey, std::size_t> edges_;
  int window_ = 0;
  std::string paragraph_filter_;
};

// window 0: co-mention in one paragraph; window 1: same or immediately
// following paragraph, both of which must be in `paragraph_set`. Each
// paragraph index adds at most 1 to a pair.
AssociationGraph build_graph(const std::vector<Mention>& mentions, const ParagraphSet& paragraph_set, int window);

struct ComponentPartition {
  std::vector<std::vector<EntityId>> components;  // members ascending
  std::map<EntityId, std::size_t> node_to_component;

  bool operator==(const ComponentPartition&) const = default;
};

ComponentPartition connected_components(const AssociationGraph& graph);

struct DegreeInfo {
  std::size_t degree = 0;
  std::size_t weighted_degree = 0;

  bool operator==(const DegreeInfo&) const = default;
};

std::map<EntityId, DegreeInfo> degree_weights(const AssociationGraph& graph);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  std::size_t max_iterations = 1000;
};

std::map<EntityId, double> pagerank(const AssociationGraph& graph, const PageRankOptions& options = {});

struct EdgeDelta {
  EdgeKey edge;
  std::size_t weight_w0 = 0;
  std::size_t weight_w1 = 0;
};

struct WindowComparison {
  bool edges_subset = true;
  std::vector<EdgeDelta> deltas;             // every w=1 edge
  std::vector<EdgeKey> new_edges;            // w=1 edges absent at w=0
  ComponentPartition components_w0;
  ComponentPartition components_w1;
  // Pairs of w=0 component indices that share a w=1 component.
  std::vector<std::pair<std::size_t, std::size_t>> merged_components;
  // Nodes whose removal from the w=1 graph separates some merged w=0 components.
  std::vector<EntityId> bridges;
};

WindowComparison subgraph_window_comparison(const AssociationGraph& g0, const AssociationGraph& g1);

// Display names for components: labels map an entity canonical name to a
// component name; unlabeled components are numbered from 1.
std::vector<std::string> component_names(const ComponentPartition& partition, const Gazetteer& gazetteer,
                                         const std::map<std::string, std::string>& labels);

std::map<std::string, std::string> parse_component_labels(std::string_view json_text);
std::map<std::string, std::string> load_component_labels(const std::string& path);

}  // namespace repetext
