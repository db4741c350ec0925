#include "repetext/sequences.hpp"

#include <algorithm>

#include "repetext/error.hpp"

namespace repetext {

std::string NetworkLabeling::name_of(ComponentId id) const {
  for (const auto& ref : component_universe) {
    if (ref.id == id) return ref.name;
  }
  return std::to_string(id + 1);
}

NetworkLabeling label_paragraphs(const std::vector<Mention>& mentions, const ComponentPartition& partition,
                                 const std::set<ComponentId>& selected, std::size_t paragraph_count,
                                 const std::vector<std::string>& names) {
  if (selected.empty()) {
    throw ParameterError("at least one component must be selected");
  }
  NetworkLabeling labeling;
  labeling.paragraph_count = paragraph_count;
  for (ComponentId id : selected) {
    if (id >= partition.components.size()) {
      throw ParameterError("selected component " + std::to_string(id + 1) + " does not exist (partition has " +
                           std::to_string(partition.components.size()) + ")");
    }
    labeling.component_universe.push_back({id, id < names.size() ? names[id] : std::to_string(id + 1)});
  }
  for (const auto& mention : mentions) {
    auto it = partition.node_to_component.find(mention.entity_id);
    if (it != partition.node_to_component.end() && selected.count(it->second)) {
      labeling.labels[mention.paragraph_idx].insert(it->second);
    }
  }
  return labeling;
}

std::optional<MultiPolicy> parse_multi_policy(std::string_view text) {
  if (text == "break") return MultiPolicy::break_run;
  if (text == "emit_all" || text == "emit-all") return MultiPolicy::emit_all;
  return std::nullopt;
}

std::string_view to_string(MultiPolicy policy) {
  return policy == MultiPolicy::break_run ? "break" : "emit_all";
}

std::size_t RunSequence::segment_count() const { return runs.empty() ? 0 : runs.back().segment + 1; }

RunSequence compress_runs(const NetworkLabeling& labeling, const std::set<ComponentId>& selected,
                          const RunPolicy& policy) {
  RunSequence sequence;
  sequence.selected = selected;

  std::optional<std::size_t> last_labeled;
  bool open = false;  // whether runs.back() may still be extended
  bool pending_break = false;
  std::size_t segment = 0;

  auto place = [&](ComponentId component, std::size_t p) {
    auto& runs = sequence.runs;
    if (open && runs.back().component == component) {
      runs.back().end_paragraph = p;
      ++runs.back().length;
      return;
    }
    if (pending_break && !runs.empty()) ++segment;
    pending_break = false;
    runs.push_back({component, p, p, 1, segment});
    open = true;
  };

  for (const auto& [p, all_labels] : labeling.labels) {
    std::vector<ComponentId> labels;
    std::set_intersection(all_labels.begin(), all_labels.end(), selected.begin(), selected.end(),
                          std::back_inserter(labels));
    if (labels.empty()) continue;

    if (last_labeled && policy.max_gap && p - *last_labeled - 1 > *policy.max_gap) {
      open = false;
      pending_break = true;
    }
    last_labeled = p;

    if (labels.size() == 1) {
      place(labels.front(), p);
      continue;
    }
    if (policy.multi_policy == MultiPolicy::break_run) {
      open = false;
      pending_break = true;
      continue;
    }
    // emit_all: continue the open run first, then the rest in id order.
    if (open) {
      auto it = std::find(labels.begin(), labels.end(), sequence.runs.back().component);
      if (it != labels.end()) std::rotate(labels.begin(), it, it + 1);
    }
    for (ComponentId component : labels) place(component, p);
  }
  return sequence;
}

std::size_t PatternCounts::count(const std::vector<ComponentId>& pattern) const {
  auto it = counts.find(pattern);
  return it == counts.end() ? 0 : it->second;
}

PatternCounts count_patterns(const RunSequence& run_sequence, std::size_t max_len) {
  if (max_len < 2) {
    throw ParameterError("max pattern length must be at least 2");
  }
  PatternCounts result;
  result.max_len = max_len;

  const auto& runs = run_sequence.runs;
  std::size_t begin = 0;
  while (begin < runs.size()) {
    std::size_t end = begin;
    while (end < runs.size() && runs[end].segment == runs[begin].segment) ++end;
    for (std::size_t length = 2; length <= max_len; ++length) {
      for (std::size_t a = begin; a + length <= end; ++a) {
        std::vector<ComponentId> pattern;
        pattern.reserve(length);
        for (std::size_t k = a; k < a + length; ++k) pattern.push_back(runs[k].component);
        ++result.counts[pattern];
      }
    }
    begin = end;
  }
  return result;
}

BandSpec band_data(const NetworkLabeling& labeling, const std::vector<ComponentId>& all_components,
                   const std::map<std::string, std::string>& color_map) {
  BandSpec band;
  std::map<ComponentId, std::string> colors;
  for (ComponentId id : all_components) {
    const std::string name = labeling.name_of(id);
    auto it = color_map.find(name);
    if (it == color_map.end()) {
      throw ParameterError("no color assigned to component \"" + name + "\"");
    }
    colors[id] = it->second;
    band.legend.push_back({name, it->second});
  }

  band.cells.resize(labeling.paragraph_count);
  for (const auto& [p, labels] : labeling.labels) {
    if (p >= band.cells.size()) continue;
    for (ComponentId id : all_components) {
      if (labels.count(id)) band.cells[p].colors.push_back(colors[id]);
    }
  }
  return band;
}

const std::map<std::string, std::string>& default_palette() {
  static const std::map<std::string, std::string> palette{
      {"Paris", "#00FFFF"}, {"Homeric", "#FFC0CB"}, {"Rome", "#0000FF"}, {"Spanish", "#FF0000"}, {"Gallery", "#008000"},
  };
  return palette;
}

}  // namespace repetext
