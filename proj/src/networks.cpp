#include "repetext/networks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "repetext/error.hpp"

namespace repetext {

ParagraphSet ParagraphSet::all(std::size_t paragraph_count) {
  ParagraphSet set;
  for (std::size_t p = 0; p < paragraph_count; ++p) set.paragraphs.insert(p);
  set.description = "all paragraphs (" + std::to_string(paragraph_count) + ")";
  return set;
}

ParagraphSet ParagraphSet::from(std::set<std::size_t> paragraphs, std::string description) {
  return ParagraphSet{std::move(paragraphs), std::move(description)};
}

AssociationGraph::AssociationGraph(std::set<EntityId> nodes, std::map<EdgeKey, std::size_t> edges, int window,
                                   std::string paragraph_filter)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), window_(window), paragraph_filter_(std::move(paragraph_filter)) {
  for (const auto& [key, weight] : edges_) {
    if (key.first == key.second) throw ParameterError("self-loop on entity " + std::to_string(key.first));
    if (weight == 0) throw ParameterError("edge weights must be positive");
    if (!nodes_.count(key.first) || !nodes_.count(key.second)) {
      throw ParameterError("edge endpoint is not a graph node");
    }
  }
}

std::size_t AssociationGraph::weight(EntityId a, EntityId b) const {
  if (a == b) return 0;
  auto it = edges_.find(EdgeKey(a, b));
  return it == edges_.end() ? 0 : it->second;
}

std::map<EntityId, std::vector<std::pair<EntityId, std::size_t>>> AssociationGraph::adjacency() const {
  std::map<EntityId, std::vector<std::pair<EntityId, std::size_t>>> adjacency;
  for (EntityId node : nodes_) adjacency[node];
  for (const auto& [key, weight] : edges_) {
    adjacency[key.first].emplace_back(key.second, weight);
    adjacency[key.second].emplace_back(key.first, weight);
  }
  return adjacency;
}

AssociationGraph build_graph(const std::vector<Mention>& mentions, const ParagraphSet& paragraph_set, int window) {
  if (window != 0 && window != 1) {
    throw ParameterError("co-mention window must be 0 or 1 (got " + std::to_string(window) + ")");
  }
  const auto& allowed = paragraph_set.paragraphs;
  std::map<std::size_t, std::set<EntityId>> mentioned;
  std::set<EntityId> nodes;
  for (const auto& mention : mentions) {
    if (allowed.count(mention.paragraph_idx)) {
      mentioned[mention.paragraph_idx].insert(mention.entity_id);
      nodes.insert(mention.entity_id);
    }
  }

  std::map<EdgeKey, std::size_t> edges;
  static const std::set<EntityId> kNoEntities;
  for (const auto& [p, here] : mentioned) {
    std::set<EdgeKey> pairs;
    for (auto a = here.begin(); a != here.end(); ++a) {
      for (auto b = std::next(a); b != here.end(); ++b) pairs.emplace(*a, *b);
    }
    if (window == 1 && allowed.count(p + 1)) {
      auto it = mentioned.find(p + 1);
      const auto& following = it == mentioned.end() ? kNoEntities : it->second;
      for (EntityId a : here) {
        for (EntityId b : following) {
          if (a != b) pairs.emplace(a, b);
        }
      }
    }
    for (const auto& pair : pairs) ++edges[pair];
  }
  return AssociationGraph(std::move(nodes), std::move(edges), window, paragraph_set.description);
}

ComponentPartition connected_components(const AssociationGraph& graph) {
  const auto adjacency = graph.adjacency();
  std::set<EntityId> visited;
  std::vector<std::vector<EntityId>> components;
  for (EntityId start : graph.nodes()) {
    if (visited.count(start)) continue;
    std::vector<EntityId> members;
    std::vector<EntityId> stack{start};
    visited.insert(start);
    while (!stack.empty()) {
      EntityId node = stack.back();
      stack.pop_back();
      members.push_back(node);
      for (const auto& [neighbour, weight] : adjacency.at(node)) {
        if (visited.insert(neighbour).second) stack.push_back(neighbour);
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  std::sort(components.begin(), components.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  ComponentPartition partition;
  partition.components = std::move(components);
  for (std::size_t k = 0; k < partition.components.size(); ++k) {
    for (EntityId node : partition.components[k]) partition.node_to_component[node] = k;
  }
  return partition;
}

std::map<EntityId, DegreeInfo> degree_weights(const AssociationGraph& graph) {
  std::map<EntityId, DegreeInfo> degrees;
  for (EntityId node : graph.nodes()) degrees[node];
  for (const auto& [key, weight] : graph.edges()) {
    for (EntityId end : {key.first, key.second}) {
      degrees[end].degree += 1;
      degrees[end].weighted_degree += weight;
    }
  }
  return degrees;
}

std::map<EntityId, double> pagerank(const AssociationGraph& graph, const PageRankOptions& options) {
  if (graph.empty()) {
    throw ParameterError("pagerank needs a non-empty graph");
  }
  if (options.damping < 0.0 || options.damping > 1.0) {
    throw ParameterError("pagerank damping must lie in [0, 1]");
  }

  const std::vector<EntityId> ids(graph.nodes().begin(), graph.nodes().end());
  const std::size_t count = ids.size();
  std::map<EntityId, std::size_t> index;
  for (std::size_t i = 0; i < count; ++i) index[ids[i]] = i;

  struct Arc {
    std::size_t from;
    std::size_t to;
    double weight;
  };
  std::vector<Arc> arcs;
  std::vector<double> out_weight(count, 0.0);
  for (const auto& [key, weight] : graph.edges()) {
    const std::size_t a = index.at(key.first);
    const std::size_t b = index.at(key.second);
    const auto w = static_cast<double>(weight);
    arcs.push_back({a, b, w});
    arcs.push_back({b, a, w});
    out_weight[a] += w;
    out_weight[b] += w;
  }

  const double n = static_cast<double>(count);
  std::vector<double> rank(count, 1.0 / n);
  std::vector<double> next(count);
  for (std::size_t iteration = 0; iteration < options.max_iterations; ++iteration) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      if (out_weight[i] == 0.0) dangling += rank[i];
    }
    const double base = (1.0 - options.damping) / n + options.damping * dangling / n;
    std::fill(next.begin(), next.end(), base);
    for (const auto& arc : arcs) {
      next[arc.to] += options.damping * rank[arc.from] * arc.weight / out_weight[arc.from];
    }
    double change = 0.0;
    for (std::size_t i = 0; i < count; ++i) change += std::abs(next[i] - rank[i]);
    rank.swap(next);
    if (change < options.tolerance) break;
  }

  const double total = std::accumulate(rank.begin(), rank.end(), 0.0);
  std::map<EntityId, double> scores;
  for (std::size_t i = 0; i < count; ++i) scores[ids[i]] = rank[i] / total;
  return scores;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Component id of every node of `graph` once `removed` is deleted.
std::map<EntityId, std::size_t> labels_without(const AssociationGraph& graph, EntityId removed) {
  const auto adjacency = graph.adjacency();
  std::map<EntityId, std::size_t> label;
  std::size_t next = 0;
  for (EntityId start : graph.nodes()) {
    if (start == removed || label.count(start)) continue;
    std::vector<EntityId> stack{start};
    label[start] = next;
    while (!stack.empty()) {
      EntityId node = stack.back();
      stack.pop_back();
      for (const auto& [neighbour, weight] : adjacency.at(node)) {
        if (neighbour != removed && label.emplace(neighbour, next).second) stack.push_back(neighbour);
      }
    }
    ++next;
  }
  return label;
}

}  // namespace

WindowComparison subgraph_window_comparison(const AssociationGraph& g0, const AssociationGraph& g1) {
  if (g0.window() != 0 || g1.window() != 1) {
    throw ParameterError("window comparison expects a window-0 graph and a window-1 graph");
  }
  if (g0.paragraph_filter() != g1.paragraph_filter() || g0.nodes() != g1.nodes()) {
    throw ParameterError("window comparison needs graphs built from the same mentions and paragraph set");
  }

  WindowComparison report;
  for (const auto& [key, weight] : g0.edges()) {
    if (g1.weight(key.first, key.second) < weight) report.edges_subset = false;
  }
  for (const auto& [key, weight] : g1.edges()) {
    const std::size_t before = g0.weight(key.first, key.second);
    report.deltas.push_back({key, before, weight});
    if (before == 0) report.new_edges.push_back(key);
  }

  report.components_w0 = connected_components(g0);
  report.components_w1 = connected_components(g1);
  const auto& c0 = report.components_w0;
  const auto& c1 = report.components_w1;

  // w=0 components grouped by the w=1 component that contains them.
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < c0.components.size(); ++k) {
    groups[c1.node_to_component.at(c0.components[k].front())].push_back(k);
  }

  std::set<EntityId> bridges;
  for (const auto& [outer, members] : groups) {
    if (members.size() < 2) continue;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        report.merged_components.emplace_back(members[i], members[j]);
      }
    }
    for (EntityId candidate : c1.components[outer]) {
      const auto label = labels_without(g1, candidate);
      std::vector<std::size_t> parent(members.size());
      std::iota(parent.begin(), parent.end(), 0);
      std::map<std::size_t, std::size_t> owner;  // g1-minus-candidate label -> member slot
      for (std::size_t slot = 0; slot < members.size(); ++slot) {
        for (EntityId node : c0.components[members[slot]]) {
          if (node == candidate) continue;
          auto [it, inserted] = owner.emplace(label.at(node), slot);
          if (!inserted) parent[find_root(parent, slot)] = find_root(parent, it->second);
        }
      }
      std::set<std::size_t> roots;
      for (std::size_t slot = 0; slot < members.size(); ++slot) {
        const auto& nodes = c0.components[members[slot]];
        const bool any = std::any_of(nodes.begin(), nodes.end(), [&](EntityId n) { return n != candidate; });
        if (any) roots.insert(find_root(parent, slot));
      }
      if (roots.size() > 1) bridges.insert(candidate);
    }
  }
  std::sort(report.merged_components.begin(), report.merged_components.end());
  report.bridges.assign(bridges.begin(), bridges.end());
  return report;
}

std::vector<std::string> component_names(const ComponentPartition& partition, const Gazetteer& gazetteer,
                                         const std::map<std::string, std::string>& labels) {
  std::vector<std::string> names(partition.components.size());
  for (const auto& [canonical, name] : labels) {
    const auto id = gazetteer.find_by_canonical(canonical);
    if (!id) {
      throw ParameterError("component labels mention unknown entity \"" + canonical + "\"");
    }
    auto it = partition.node_to_component.find(*id);
    if (it != partition.node_to_component.end() && names[it->second].empty()) {
      names[it->second] = name;
    }
  }
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k].empty()) names[k] = std::to_string(k + 1);
  }
  return names;
}

std::map<std::string, std::string> parse_component_labels(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("labels file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw FormatError("labels file must be a JSON object mapping entity names to component names");
  }
  std::map<std::string, std::string> labels;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_string()) throw FormatError("label for \"" + key + "\" must be a string");
    labels[key] = value.get<std::string>();
  }
  return labels;
}

std::map<std::string, std::string> load_component_labels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open labels file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_component_labels(buffer.str());
}

}  // namespace repetext
