#include "repetext/export.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "repetext/error.hpp"

namespace repetext {
namespace {

// Fixed-point with trailing zeros trimmed, so output bytes do not depend on
// stream state.
std::string format_number(double value, int decimals = 3) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  std::string text(buffer);
  if (text.find('.') != std::string::npos) {
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
  }
  if (text == "-0") text = "0";
  return text;
}

std::string format_score(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::string label_of(const NodeLabels& labels, EntityId id) {
  auto it = labels.find(id);
  return it == labels.end() ? std::to_string(id) : it->second;
}

std::size_t component_number(const ComponentPartition& partition, EntityId id) {
  auto it = partition.node_to_component.find(id);
  return it == partition.node_to_component.end() ? 0 : it->second + 1;
}

std::string paragraph_number(std::size_t idx) { return std::to_string(idx + 1); }

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
  std::string joined;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) joined += separator;
    joined += parts[i];
  }
  return joined;
}

std::string pattern_name(const std::vector<ComponentId>& pattern, const NetworkLabeling& labeling) {
  std::vector<std::string> names;
  for (ComponentId id : pattern) names.push_back(labeling.name_of(id));
  return join(names, ",");
}

// Patterns ordered by length, then count desc, then component ids.
std::vector<std::pair<std::vector<ComponentId>, std::size_t>> ordered_patterns(const PatternCounts& counts) {
  std::vector<std::pair<std::vector<ComponentId>, std::size_t>> ordered(counts.counts.begin(), counts.counts.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.second > b.second;
  });
  return ordered;
}

}  // namespace

std::optional<GraphFormat> parse_graph_format(std::string_view text) {
  if (text == "dot") return GraphFormat::dot;
  if (text == "graphml") return GraphFormat::graphml;
  if (text == "json") return GraphFormat::json;
  return std::nullopt;
}

std::string_view to_string(GraphFormat format) {
  switch (format) {
    case GraphFormat::dot: return "dot";
    case GraphFormat::graphml: return "graphml";
    case GraphFormat::json: return "json";
  }
  return "json";
}

std::string_view file_extension(GraphFormat format) { return to_string(format); }

void SvgOptions::validate() const {
  if (width < 0 || cell_width <= 0 || strip_height <= 0) {
    throw ParameterError("SVG cell width and strip height must be positive");
  }
}

bool is_hex_color(std::string_view color) {
  if (color.size() != 7 || color[0] != '#') return false;
  return std::all_of(color.begin() + 1, color.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
  });
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing " + path);
  }
  std::error_code error;
  std::filesystem::rename(temp, path, error);
  if (error) {
    std::filesystem::remove(temp, error);
    throw IoError("cannot move output into place: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

NodeLabels node_labels(const AssociationGraph& graph, const Gazetteer& gazetteer) {
  NodeLabels labels;
  for (EntityId id : graph.nodes()) {
    labels[id] = id < gazetteer.entities().size() ? gazetteer.entity(id).canonical : std::to_string(id);
  }
  return labels;
}

double edge_penwidth(std::size_t weight, std::size_t min_weight, std::size_t max_weight) {
  if (max_weight == min_weight) return 4.0;
  return 1.0 + 7.0 * static_cast<double>(weight - min_weight) / static_cast<double>(max_weight - min_weight);
}

std::string render_graph(const AssociationGraph& graph, const ComponentPartition& partition, const NodeLabels& labels,
                         GraphFormat format) {
  std::ostringstream out;
  switch (format) {
    case GraphFormat::dot: {
      std::size_t min_weight = SIZE_MAX;
      std::size_t max_weight = 0;
      for (const auto& [key, weight] : graph.edges()) {
        min_weight = std::min(min_weight, weight);
        max_weight = std::max(max_weight, weight);
      }
      out << "graph associations {\n";
      out << "  graph [window=" << graph.window() << "];\n";
      out << "  node [shape=ellipse];\n";
      for (EntityId id : graph.nodes()) {
        out << "  \"" << id << "\" [label=\"" << dot_escape(label_of(labels, id))
            << "\", component=" << component_number(partition, id) << "];\n";
      }
      for (const auto& [key, weight] : graph.edges()) {
        out << "  \"" << key.first << "\" -- \"" << key.second << "\" [weight=" << weight
            << ", penwidth=" << format_number(edge_penwidth(weight, min_weight, max_weight)) << "];\n";
      }
      out << "}\n";
      break;
    }
    case GraphFormat::graphml: {
      out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
      out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
      out << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
      out << "  <key id=\"component\" for=\"node\" attr.name=\"component\" attr.type=\"int\"/>\n";
      out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
      out << "  <graph id=\"associations\" edgedefault=\"undirected\">\n";
      for (EntityId id : graph.nodes()) {
        out << "    <node id=\"n" << id << "\"><data key=\"label\">" << xml_escape(label_of(labels, id))
            << "</data><data key=\"component\">" << component_number(partition, id) << "</data></node>\n";
      }
      for (const auto& [key, weight] : graph.edges()) {
        out << "    <edge source=\"n" << key.first << "\" target=\"n" << key.second << "\"><data key=\"weight\">"
            << weight << "</data></edge>\n";
      }
      out << "  </graph>\n</graphml>\n";
      break;
    }
    case GraphFormat::json: {
      nlohmann::json doc;
      doc["window"] = graph.window();
      doc["paragraph_filter"] = graph.paragraph_filter();
      doc["nodes"] = nlohmann::json::array();
      for (EntityId id : graph.nodes()) {
        doc["nodes"].push_back({{"id", id}, {"label", label_of(labels, id)}, {"component", component_number(partition, id)}});
      }
      doc["edges"] = nlohmann::json::array();
      for (const auto& [key, weight] : graph.edges()) {
        doc["edges"].push_back({{"source", key.first}, {"target", key.second}, {"weight", weight}});
      }
      out << doc.dump(2) << "\n";
      break;
    }
  }
  return out.str();
}

void export_graph(const AssociationGraph& graph, const ComponentPartition& partition, const NodeLabels& labels,
                  GraphFormat format, const std::string& path) {
  write_file_atomic(path, render_graph(graph, partition, labels, format));
}

ImportedGraph import_graph_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
    ImportedGraph imported;
    std::set<EntityId> nodes;
    for (const auto& node : doc.at("nodes")) {
      const auto id = node.at("id").get<EntityId>();
      nodes.insert(id);
      imported.labels[id] = node.at("label").get<std::string>();
    }
    std::map<EdgeKey, std::size_t> edges;
    for (const auto& edge : doc.at("edges")) {
      edges[EdgeKey(edge.at("source").get<EntityId>(), edge.at("target").get<EntityId>())] =
          edge.at("weight").get<std::size_t>();
    }
    imported.graph = AssociationGraph(std::move(nodes), std::move(edges), doc.value("window", 0),
                                      doc.value("paragraph_filter", std::string()));
    return imported;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed graph JSON: ") + e.what());
  }
}

std::string render_band_svg(const BandSpec& band, const SvgOptions& options) {
  options.validate();
  for (const auto& entry : band.legend) {
    if (!is_hex_color(entry.color)) throw ParameterError("color for \"" + entry.name + "\" is not #RRGGBB");
  }
  constexpr double kSwatch = 10;
  constexpr double kLegendRow = 16;
  constexpr double kLegendTop = 10;

  const double strip_width = static_cast<double>(band.cells.size()) * options.cell_width;
  double legend_width = 0;
  for (const auto& entry : band.legend) {
    legend_width = std::max(legend_width, kSwatch + 6 + 8 * static_cast<double>(entry.name.size()));
  }
  const double width = std::max({options.width, strip_width, legend_width, 1.0});
  const double height =
      options.strip_height + kLegendTop + kLegendRow * static_cast<double>(band.legend.size()) + 4;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(width) << "\" height=\""
      << format_number(height) << "\" viewBox=\"0 0 " << format_number(width) << ' ' << format_number(height)
      << "\">\n";
  out << "  <g class=\"cells\">\n";
  for (std::size_t i = 0; i < band.cells.size(); ++i) {
    const std::string x = format_number(static_cast<double>(i) * options.cell_width);
    const auto& colors = band.cells[i].colors;
    if (colors.empty()) {
      out << "    <rect class=\"cell\" data-paragraph=\"" << i + 1 << "\" x=\"" << x << "\" y=\"0\" width=\""
          << format_number(options.cell_width) << "\" height=\"" << format_number(options.strip_height)
          << "\" fill=\"#FFFFFF\"/>\n";
      continue;
    }
    const double sub_height = options.strip_height / static_cast<double>(colors.size());
    for (std::size_t k = 0; k < colors.size(); ++k) {
      out << "    <rect class=\"cell\" data-paragraph=\"" << i + 1 << "\" x=\"" << x << "\" y=\""
          << format_number(sub_height * static_cast<double>(k)) << "\" width=\"" << format_number(options.cell_width)
          << "\" height=\"" << format_number(sub_height) << "\" fill=\"" << colors[k] << "\"/>\n";
    }
  }
  out << "  </g>\n";
  out << "  <g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < band.legend.size(); ++k) {
    const double y = options.strip_height + kLegendTop + kLegendRow * static_cast<double>(k);
    out << "    <rect class=\"legend-swatch\" x=\"0\" y=\"" << format_number(y) << "\" width=\"" << kSwatch
        << "\" height=\"" << kSwatch << "\" fill=\"" << band.legend[k].color << "\"/>\n";
    out << "    <text x=\"" << kSwatch + 4 << "\" y=\"" << format_number(y + kSwatch) << "\">"
        << xml_escape(band.legend[k].name) << "</text>\n";
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

void export_band_svg(const BandSpec& band, const SvgOptions& options, const std::string& path) {
  write_file_atomic(path, render_band_svg(band, options));
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += csv_field(fields[i]);
  }
  row += '\n';
  return row;
}

std::string repeats_csv(const std::vector<RepeatedPhrase>& phrases) {
  std::string out = csv_row({"phrase", "n", "word_count", "count", "occurrences"});
  for (const auto& phrase : phrases) {
    std::vector<std::string> occurrences;
    for (const auto& occurrence : phrase.occurrences) {
      occurrences.push_back(paragraph_number(occurrence.paragraph_idx) + ":" +
                            std::to_string(occurrence.start_pos_in_paragraph));
    }
    out += csv_row({phrase.text(), std::to_string(phrase.n), std::to_string(phrase.word_count),
                    std::to_string(phrase.count), join(occurrences, ";")});
  }
  return out;
}

nlohmann::json repeats_json(const RepeatSet& repeat_set) {
  const auto& config = repeat_set.config;
  nlohmann::json doc;
  doc["config"] = {{"min_n", config.min_n},
                   {"max_n", config.max_n},
                   {"span_paragraphs", config.span_paragraphs},
                   {"count_overlapping", config.count_overlapping},
                   {"include_punct", config.include_punct},
                   {"strict_maximality", config.strict_maximality}};
  doc["unpruned_count"] = repeat_set.unpruned_count;
  doc["longest_n"] = repeat_set.longest_n;
  doc["phrases"] = nlohmann::json::array();
  for (const auto& phrase : repeat_set.phrases) {
    nlohmann::json occurrences = nlohmann::json::array();
    for (const auto& occurrence : phrase.occurrences) {
      occurrences.push_back({{"paragraph", occurrence.paragraph_idx + 1},
                             {"end_paragraph", occurrence.end_paragraph_idx + 1},
                             {"start", occurrence.start_pos_in_paragraph},
                             {"global_start", occurrence.global_start}});
    }
    doc["phrases"].push_back({{"text", phrase.text()},
                              {"tokens", phrase.tokens},
                              {"n", phrase.n},
                              {"word_count", phrase.word_count},
                              {"count", phrase.count},
                              {"occurrences", std::move(occurrences)}});
  }
  return doc;
}

RepeatSet repeats_from_json(const nlohmann::json& doc) {
  try {
    RepeatSet set;
    const auto& config = doc.at("config");
    set.config.min_n = config.at("min_n").get<std::size_t>();
    set.config.max_n = config.at("max_n").get<std::size_t>();
    set.config.span_paragraphs = config.at("span_paragraphs").get<bool>();
    set.config.count_overlapping = config.at("count_overlapping").get<bool>();
    set.config.include_punct = config.at("include_punct").get<bool>();
    set.config.strict_maximality = config.at("strict_maximality").get<bool>();
    set.unpruned_count = doc.at("unpruned_count").get<std::size_t>();
    set.longest_n = doc.at("longest_n").get<std::size_t>();
    for (const auto& item : doc.at("phrases")) {
      RepeatedPhrase phrase;
      phrase.tokens = item.at("tokens").get<std::vector<std::string>>();
      phrase.n = item.at("n").get<std::size_t>();
      phrase.word_count = item.at("word_count").get<std::size_t>();
      for (const auto& occurrence : item.at("occurrences")) {
        phrase.occurrences.push_back({occurrence.at("paragraph").get<std::size_t>() - 1,
                                      occurrence.at("start").get<std::size_t>(),
                                      occurrence.at("global_start").get<std::size_t>(),
                                      occurrence.at("end_paragraph").get<std::size_t>() - 1});
      }
      phrase.count = phrase.occurrences.size();
      set.phrases.push_back(std::move(phrase));
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed repeats JSON: ") + e.what());
  }
}

std::string mentions_csv(const std::vector<Mention>& mentions, const Gazetteer& gazetteer) {
  std::string out = csv_row({"entity_id", "canonical", "paragraph", "start", "end"});
  for (const auto& mention : mentions) {
    out += csv_row({std::to_string(mention.entity_id), gazetteer.entity(mention.entity_id).canonical,
                    paragraph_number(mention.paragraph_idx), std::to_string(mention.token_span.start),
                    std::to_string(mention.token_span.end)});
  }
  return out;
}

std::string candidates_csv(const std::vector<Candidate>& candidates) {
  std::string out = csv_row({"candidate", "frequency"});
  for (const auto& candidate : candidates) {
    out += csv_row({candidate.text(), std::to_string(candidate.frequency)});
  }
  return out;
}

std::string components_csv(const ComponentPartition& partition, const std::vector<std::string>& names,
                           const NodeLabels& labels) {
  std::string out = csv_row({"component", "name", "size", "members"});
  for (std::size_t k = 0; k < partition.components.size(); ++k) {
    std::vector<std::string> members;
    for (EntityId id : partition.components[k]) members.push_back(label_of(labels, id));
    out += csv_row({std::to_string(k + 1), k < names.size() ? names[k] : std::to_string(k + 1),
                    std::to_string(partition.components[k].size()), join(members, ";")});
  }
  return out;
}

std::string centrality_csv(const AssociationGraph& graph, const ComponentPartition& partition,
                           const std::map<EntityId, double>& scores, const NodeLabels& labels) {
  const auto degrees = degree_weights(graph);
  std::vector<EntityId> order(graph.nodes().begin(), graph.nodes().end());
  auto score_of = [&](EntityId id) {
    auto it = scores.find(id);
    return it == scores.end() ? 0.0 : it->second;
  };
  std::stable_sort(order.begin(), order.end(), [&](EntityId a, EntityId b) { return score_of(a) > score_of(b); });
  std::string out = csv_row({"entity_id", "label", "component", "degree", "weighted_degree", "pagerank"});
  for (EntityId id : order) {
    const auto& degree = degrees.at(id);
    out += csv_row({std::to_string(id), label_of(labels, id), std::to_string(component_number(partition, id)),
                    std::to_string(degree.degree), std::to_string(degree.weighted_degree), format_score(score_of(id))});
  }
  return out;
}

std::string runs_csv(const RunSequence& runs, const NetworkLabeling& labeling) {
  std::string out = csv_row({"component", "name", "start_paragraph", "end_paragraph", "length", "segment"});
  for (const auto& run : runs.runs) {
    out += csv_row({std::to_string(run.component + 1), labeling.name_of(run.component),
                    paragraph_number(run.start_paragraph), paragraph_number(run.end_paragraph),
                    std::to_string(run.length), std::to_string(run.segment + 1)});
  }
  return out;
}

std::string patterns_csv(const PatternCounts& counts, const NetworkLabeling& labeling) {
  std::string out = csv_row({"pattern", "length", "count"});
  for (const auto& [pattern, count] : ordered_patterns(counts)) {
    out += csv_row({pattern_name(pattern, labeling), std::to_string(pattern.size()), std::to_string(count)});
  }
  return out;
}

nlohmann::json patterns_json(const PatternCounts& counts, const NetworkLabeling& labeling) {
  nlohmann::json doc;
  doc["max_len"] = counts.max_len;
  doc["patterns"] = nlohmann::json::array();
  for (const auto& [pattern, count] : ordered_patterns(counts)) {
    std::vector<std::size_t> ids;
    for (ComponentId id : pattern) ids.push_back(id + 1);
    doc["patterns"].push_back({{"pattern", pattern_name(pattern, labeling)}, {"components", ids}, {"count", count}});
  }
  return doc;
}

nlohmann::json comparison_json(const WindowComparison& comparison, const NodeLabels& labels) {
  nlohmann::json doc;
  doc["edges_subset"] = comparison.edges_subset;
  doc["components_w0"] = comparison.components_w0.components.size();
  doc["components_w1"] = comparison.components_w1.components.size();
  doc["new_edges"] = nlohmann::json::array();
  for (const auto& edge : comparison.new_edges) {
    doc["new_edges"].push_back({label_of(labels, edge.first), label_of(labels, edge.second)});
  }
  doc["weight_deltas"] = nlohmann::json::array();
  for (const auto& delta : comparison.deltas) {
    doc["weight_deltas"].push_back({{"source", label_of(labels, delta.edge.first)},
                                    {"target", label_of(labels, delta.edge.second)},
                                    {"w0", delta.weight_w0},
                                    {"w1", delta.weight_w1}});
  }
  doc["merged_components"] = nlohmann::json::array();
  for (const auto& [a, b] : comparison.merged_components) {
    doc["merged_components"].push_back({a + 1, b + 1});
  }
  doc["bridges"] = nlohmann::json::array();
  for (EntityId id : comparison.bridges) doc["bridges"].push_back(label_of(labels, id));
  return doc;
}

Report export_report(const ReportInputs& inputs) {
  Report report;
  auto& doc = report.json;
  std::ostringstream text;
  doc["provenance"] = inputs.provenance;

  if (inputs.corpus) {
    const auto& stats = *inputs.corpus;
    doc["corpus"] = {{"paragraphs", stats.paragraph_count},
                     {"sentences", stats.sentence_count},
                     {"words", stats.word_count},
                     {"tokens", stats.token_count}};
    text << "Corpus\n"
         << "  paragraphs: " << stats.paragraph_count << "\n"
         << "  sentences:  " << stats.sentence_count << "\n"
         << "  words:      " << stats.word_count << "\n"
         << "  tokens:     " << stats.token_count << "\n";
  }

  if (inputs.repeats && inputs.repeats->repeat_set) {
    const auto& summary = *inputs.repeats;
    const auto& set = *summary.repeat_set;
    nlohmann::json block;
    block["maximal_phrases"] = set.phrases.size();
    block["unpruned_phrases"] = set.unpruned_count;
    block["longest_n"] = set.longest_n;
    block["min_words"] = summary.min_words;
    block["paragraphs_with_repeats"] = summary.paragraphs_with_repeats;
    auto table = [](const std::vector<RepeatedPhrase>& phrases) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& phrase : phrases) rows.push_back({{"text", phrase.text()}, {"n", phrase.n}, {"count", phrase.count}});
      return rows;
    };
    const auto longest = top_by_length(set, 5);
    const auto frequent = top_by_frequency(set, 10);
    block["top_by_length"] = table(longest);
    block["top_by_frequency"] = table(frequent);
    doc["repeats"] = std::move(block);

    text << "Repeated phrases\n"
         << "  maximal phrases:  " << set.phrases.size() << " (" << set.unpruned_count << " before pruning)\n"
         << "  longest n:        " << set.longest_n << "\n"
         << "  paragraphs with a repeat of >" << summary.min_words << " words: " << summary.paragraphs_with_repeats
         << "\n";
    text << "  longest:\n";
    for (const auto& phrase : longest) text << "    [" << phrase.n << "] " << phrase.text() << "\n";
    text << "  most frequent:\n";
    for (const auto& phrase : frequent) text << "    x" << phrase.count << "  " << phrase.text() << "\n";
  }

  if (inputs.entities) {
    const auto& summary = *inputs.entities;
    nlohmann::json block{{"gazetteer_entities", summary.gazetteer_entities},
                         {"mentions", summary.mentions},
                         {"distinct_entities_mentioned", summary.distinct_entities},
                         {"candidates", summary.candidates}};
    text << "Entities\n"
         << "  gazetteer entities: " << summary.gazetteer_entities << "\n"
         << "  mentions:           " << summary.mentions << "\n"
         << "  distinct mentioned: " << summary.distinct_entities << "\n";
    if (summary.in_repeats) {
      block["entities_in_repeat_paragraphs"] = summary.in_repeats->entities.size();
      block["repeat_paragraphs_with_entities"] = summary.in_repeats->paragraphs.size();
      text << "  in repeat-bearing paragraphs: " << summary.in_repeats->entities.size() << " entities over "
           << summary.in_repeats->paragraphs.size() << " paragraphs\n";
    }
    doc["entities"] = std::move(block);
  }

  if (!inputs.graphs.empty()) {
    doc["graphs"] = nlohmann::json::array();
    for (const auto& summary : inputs.graphs) {
      if (!summary.graph || !summary.partition) continue;
      const auto& graph = *summary.graph;
      nlohmann::json components = nlohmann::json::array();
      for (std::size_t k = 0; k < summary.partition->components.size(); ++k) {
        components.push_back({{"component", k + 1},
                              {"name", k < summary.component_names.size() ? summary.component_names[k] : ""},
                              {"size", summary.partition->components[k].size()}});
      }
      std::vector<std::pair<EntityId, double>> ranked(summary.pagerank.begin(), summary.pagerank.end());
      std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
      nlohmann::json hubs = nlohmann::json::array();
      for (std::size_t k = 0; k < std::min<std::size_t>(10, ranked.size()); ++k) {
        hubs.push_back({{"entity", label_of(summary.labels, ranked[k].first)}, {"pagerank", format_score(ranked[k].second)}});
      }
      const auto multi = std::count_if(summary.partition->components.begin(), summary.partition->components.end(),
                                       [](const auto& c) { return c.size() > 1; });
      doc["graphs"].push_back({{"window", graph.window()},
                               {"paragraph_filter", graph.paragraph_filter()},
                               {"nodes", graph.nodes().size()},
                               {"edges", graph.edges().size()},
                               {"components", components},
                               {"multi_node_components", multi},
                               {"top_pagerank", hubs}});
      text << "Association graph (window " << graph.window() << ")\n"
           << "  nodes: " << graph.nodes().size() << ", edges: " << graph.edges().size()
           << ", components: " << summary.partition->components.size() << " (" << multi << " with more than one node)\n";
      for (std::size_t k = 0; k < std::min<std::size_t>(5, ranked.size()); ++k) {
        text << "  hub " << k + 1 << ": " << label_of(summary.labels, ranked[k].first) << " ("
             << format_score(ranked[k].second) << ")\n";
      }
    }
  }

  if (inputs.comparison) {
    NodeLabels labels;
    for (const auto& summary : inputs.graphs) labels.insert(summary.labels.begin(), summary.labels.end());
    doc["window_comparison"] = comparison_json(*inputs.comparison, labels);
    text << "Window comparison\n"
         << "  w0 edges contained in w1: " << (inputs.comparison->edges_subset ? "yes" : "no") << "\n"
         << "  new edges at w1: " << inputs.comparison->new_edges.size() << "\n"
         << "  merged component pairs: " << inputs.comparison->merged_components.size() << "\n"
         << "  bridge entities: " << inputs.comparison->bridges.size() << "\n";
  }

  if (inputs.sequences && inputs.sequences->labeling && inputs.sequences->runs && inputs.sequences->patterns) {
    const auto& summary = *inputs.sequences;
    std::vector<std::string> selected;
    for (const auto& ref : summary.labeling->component_universe) selected.push_back(ref.name);
    doc["sequences"] = {{"selected", selected},
                        {"labeled_paragraphs", summary.labeling->labels.size()},
                        {"runs", summary.runs->runs.size()},
                        {"segments", summary.runs->segment_count()},
                        {"patterns", patterns_json(*summary.patterns, *summary.labeling)["patterns"]}};
    text << "Sequences (" << join(selected, ", ") << ")\n"
         << "  labeled paragraphs: " << summary.labeling->labels.size() << ", runs: " << summary.runs->runs.size()
         << "\n";
    for (const auto& [pattern, count] : ordered_patterns(*summary.patterns)) {
      if (count < 2) continue;
      text << "  <" << pattern_name(pattern, *summary.labeling) << "> " << count << "\n";
    }
  }
  report.text = text.str();
  return report;
}

}  // namespace repetext
