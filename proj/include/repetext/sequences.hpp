#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "repetext/networks.hpp"

namespace repetext {

using ComponentId = std::size_t;  // index into ComponentPartition::components

struct ComponentRef {
  ComponentId id = 0;
  std::string name;

  bool operator==(const ComponentRef&) const = default;
};

struct NetworkLabeling {
  std::map<std::size_t, std::set<ComponentId>> labels;  // only non-empty label sets
  std::vector<ComponentRef> component_universe;
  std::size_t paragraph_count = 0;

  std::string name_of(ComponentId id) const;
  bool operator==(const NetworkLabeling&) const = default;
};

// `names` is indexed by component id; missing names default to id + 1.
NetworkLabeling label_paragraphs(const std::vector<Mention>& mentions, const ComponentPartition& partition,
                                 const std::set<ComponentId>& selected, std::size_t paragraph_count,
                                 const std::vector<std::string>& names = {});

enum class MultiPolicy { break_run, emit_all };

std::optional<MultiPolicy> parse_multi_policy(std::string_view text);
std::string_view to_string(MultiPolicy policy);

struct Run {
  ComponentId component = 0;
  std::size_t start_paragraph = 0;
  std::size_t end_paragraph = 0;
  std::size_t length = 0;  // labeled paragraphs absorbed
  // Runs in different segments were separated by a multi-label paragraph or
  // by a gap wider than max_gap. Patterns never cross a segment boundary.
  std::size_t segment = 0;

  bool operator==(const Run&) const = default;
};

struct RunSequence {
  std::vector<Run> runs;
  std::set<ComponentId> selected;

  std::size_t segment_count() const;
  bool operator==(const RunSequence&) const = default;
};

struct RunPolicy {
  std::optional<std::size_t> max_gap;  // unbounded when empty
  MultiPolicy multi_policy = MultiPolicy::break_run;
};

RunSequence compress_runs(const NetworkLabeling& labeling, const std::set<ComponentId>& selected,
                          const RunPolicy& policy = {});

struct PatternCounts {
  std::map<std::vector<ComponentId>, std::size_t> counts;
  std::size_t max_len = 0;

  std::size_t count(const std::vector<ComponentId>& pattern) const;
};

// Overlapping windows of 2..max_len consecutive runs within each segment.
PatternCounts count_patterns(const RunSequence& run_sequence, std::size_t max_len);

struct BandCell {
  std::vector<std::string> colors;  // empty: unlabeled
};

struct LegendEntry {
  std::string name;
  std::string color;
};

struct BandSpec {
  std::vector<BandCell> cells;
  std::vector<LegendEntry> legend;
};

BandSpec band_data(const NetworkLabeling& labeling, const std::vector<ComponentId>& all_components,
                   const std::map<std::string, std::string>& color_map);

// Default palette keyed by component display name.
const std::map<std::string, std::string>& default_palette();

}  // namespace repetext
