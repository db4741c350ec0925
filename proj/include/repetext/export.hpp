#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "repetext/corpus.hpp"
#include "repetext/entities.hpp"
#include "repetext/networks.hpp"
#include "repetext/repeats.hpp"
#include "repetext/sequences.hpp"

namespace repetext {

enum class GraphFormat { dot, graphml, json };

std::optional<GraphFormat> parse_graph_format(std::string_view text);
std::string_view to_string(GraphFormat format);
std::string_view file_extension(GraphFormat format);

struct SvgOptions {
  double width = 0;  // minimum canvas width; 0 sizes the canvas to the strip
  double cell_width = 2;
  double strip_height = 60;

  void validate() const;
};

bool is_hex_color(std::string_view color);

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

// --- graphs -----------------------------------------------------------------

using NodeLabels = std::map<EntityId, std::string>;

NodeLabels node_labels(const AssociationGraph& graph, const Gazetteer& gazetteer);

// Linear stroke width: min weight -> 1, max weight -> 8, 4 when all equal.
double edge_penwidth(std::size_t weight, std::size_t min_weight, std::size_t max_weight);

std::string render_graph(const AssociationGraph& graph, const ComponentPartition& partition, const NodeLabels& labels,
                         GraphFormat format);
void export_graph(const AssociationGraph& graph, const ComponentPartition& partition, const NodeLabels& labels,
                  GraphFormat format, const std::string& path);

struct ImportedGraph {
  AssociationGraph graph;
  NodeLabels labels;
};

ImportedGraph import_graph_json(std::string_view json_text);

// --- band plots ---------------------------------------------------------------

std::string render_band_svg(const BandSpec& band, const SvgOptions& options = {});
void export_band_svg(const BandSpec& band, const SvgOptions& options, const std::string& path);

// --- tables -------------------------------------------------------------------

std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string>& fields);

std::string repeats_csv(const std::vector<RepeatedPhrase>& phrases);
nlohmann::json repeats_json(const RepeatSet& repeat_set);
RepeatSet repeats_from_json(const nlohmann::json& doc);

std::string mentions_csv(const std::vector<Mention>& mentions, const Gazetteer& gazetteer);
std::string candidates_csv(const std::vector<Candidate>& candidates);
std::string components_csv(const ComponentPartition& partition, const std::vector<std::string>& names,
                           const NodeLabels& labels);
std::string centrality_csv(const AssociationGraph& graph, const ComponentPartition& partition,
                           const std::map<EntityId, double>& scores, const NodeLabels& labels);
std::string runs_csv(const RunSequence& runs, const NetworkLabeling& labeling);
std::string patterns_csv(const PatternCounts& counts, const NetworkLabeling& labeling);
nlohmann::json patterns_json(const PatternCounts& counts, const NetworkLabeling& labeling);
nlohmann::json comparison_json(const WindowComparison& comparison, const NodeLabels& labels);

// --- summary report -------------------------------------------------------------

struct RepeatSummary {
  const RepeatSet* repeat_set = nullptr;
  std::size_t min_words = 3;
  std::size_t paragraphs_with_repeats = 0;
};

struct EntitySummary {
  std::size_t gazetteer_entities = 0;
  std::size_t mentions = 0;
  std::size_t distinct_entities = 0;
  std::size_t candidates = 0;
  std::optional<RepeatEntities> in_repeats;
};

struct GraphSummary {
  const AssociationGraph* graph = nullptr;
  const ComponentPartition* partition = nullptr;
  std::vector<std::string> component_names;
  std::map<EntityId, double> pagerank;
  NodeLabels labels;
};

struct SequenceSummary {
  const NetworkLabeling* labeling = nullptr;
  const RunSequence* runs = nullptr;
  const PatternCounts* patterns = nullptr;
};

struct ReportInputs {
  nlohmann::json provenance = nlohmann::json::object();
  std::optional<CorpusStats> corpus;
  std::optional<RepeatSummary> repeats;
  std::optional<EntitySummary> entities;
  std::vector<GraphSummary> graphs;
  std::optional<WindowComparison> comparison;
  std::optional<SequenceSummary> sequences;
};

struct Report {
  nlohmann::json json;
  std::string text;
};

Report export_report(const ReportInputs& inputs);

}  // namespace repetext
