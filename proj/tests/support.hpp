// Shared generators and independent oracles for the test binaries.
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "repetext/networks.hpp"
#include "repetext/sequences.hpp"

namespace repetext::testing {

inline std::string word_for(std::size_t k) {
  // Distinct lowercase words without joiners: a, b, ..., z, aa, ab, ...
  std::string word;
  ++k;
  while (k > 0) {
    --k;
    word.insert(word.begin(), static_cast<char>('a' + k % 26));
    k /= 26;
  }
  return word;
}

// `tokens` words drawn from an alphabet of `alphabet` words, split into
// `paragraphs` non-empty paragraphs separated by blank lines.
inline std::string random_corpus_text(std::mt19937_64& rng, std::size_t alphabet, std::size_t tokens,
                                      std::size_t paragraphs) {
  paragraphs = std::max<std::size_t>(1, std::min(paragraphs, tokens));
  std::set<std::size_t> cuts;
  std::uniform_int_distribution<std::size_t> cut(1, tokens - 1);
  while (cuts.size() + 1 < paragraphs) cuts.insert(cut(rng));
  std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1);
  std::string text;
  for (std::size_t i = 0; i < tokens; ++i) {
    if (i > 0) text += cuts.count(i) ? "\n\n" : " ";
    text += word_for(pick(rng));
  }
  return text + "\n";
}

inline std::vector<Mention> random_mentions(std::mt19937_64& rng, std::size_t entities, std::size_t paragraphs,
                                            std::size_t max_per_paragraph) {
  std::vector<Mention> mentions;
  std::uniform_int_distribution<EntityId> entity(0, static_cast<EntityId>(entities - 1));
  std::uniform_int_distribution<std::size_t> count(0, max_per_paragraph);
  std::size_t global = 0;
  for (std::size_t p = 0; p < paragraphs; ++p) {
    const auto n = count(rng);
    for (std::size_t k = 0; k < n; ++k) {
      mentions.push_back(Mention{entity(rng), p, TokenSpan{k, k + 1}, global + k});
    }
    global += n + 1;
  }
  return mentions;
}

inline AssociationGraph random_graph(std::mt19937_64& rng, std::size_t nodes, double edge_probability) {
  std::set<EntityId> node_set;
  std::map<EdgeKey, std::size_t> edges;
  std::bernoulli_distribution has_edge(edge_probability);
  std::uniform_int_distribution<std::size_t> weight(1, 9);
  for (EntityId a = 0; a < nodes; ++a) node_set.insert(a * 3);  // sparse ids
  for (EntityId a = 0; a < nodes; ++a) {
    for (EntityId b = a + 1; b < nodes; ++b) {
      if (has_edge(rng)) edges[EdgeKey(a * 3, b * 3)] = weight(rng);
    }
  }
  return AssociationGraph(std::move(node_set), std::move(edges), 0, "random");
}

// Dense power iteration on the explicit transition matrix.
inline std::map<EntityId, double> dense_pagerank(const AssociationGraph& graph, double damping = 0.85) {
  const std::vector<EntityId> ids(graph.nodes().begin(), graph.nodes().end());
  const std::size_t n = ids.size();
  std::map<EntityId, double> result;
  if (n == 0) return result;
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));  // m[to][from]
  for (std::size_t j = 0; j < n; ++j) {
    double out = 0.0;
    for (std::size_t i = 0; i < n; ++i) out += static_cast<double>(graph.weight(ids[i], ids[j]));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][j] = out == 0.0 ? 1.0 / static_cast<double>(n) : static_cast<double>(graph.weight(ids[i], ids[j])) / out;
    }
  }
  std::vector<double> r(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < 10000; ++it) {
    std::vector<double> next(n, (1.0 - damping) / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[i] += damping * m[i][j] * r[j];
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - r[i]);
    r.swap(next);
    if (delta < 1e-14) break;
  }
  for (std::size_t i = 0; i < n; ++i) result[ids[i]] = r[i];
  return result;
}

// Labeling over `paragraphs` paragraphs; each paragraph gets 0..2 labels
// drawn from `components` ids, biased toward a single label.
inline NetworkLabeling random_labeling(std::mt19937_64& rng, std::size_t components, std::size_t paragraphs) {
  NetworkLabeling labeling;
  labeling.paragraph_count = paragraphs;
  for (ComponentId c = 0; c < components; ++c) labeling.component_universe.push_back({c, std::to_string(c + 1)});
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<ComponentId> pick(0, components - 1);
  for (std::size_t p = 0; p < paragraphs; ++p) {
    const int k = kind(rng);
    if (k < 4) continue;
    std::set<ComponentId> set{pick(rng)};
    if (k == 9) set.insert(pick(rng));
    labeling.labels[p] = set;
  }
  return labeling;
}

}  // namespace repetext::testing
