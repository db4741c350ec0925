#include "repetext/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>

#include "repetext/error.hpp"

namespace fs = std::filesystem;

namespace repetext {
namespace {

const std::vector<std::string>& fallback_colors() {
  static const std::vector<std::string> colors{"#FFA500", "#800080", "#808080", "#A52A2A",
                                               "#FFD700", "#008080", "#000080", "#808000"};
  return colors;
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

template <typename T>
T get_as(const nlohmann::json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError("config key \"" + key + "\" has the wrong type");
  }
}

std::vector<GraphFormat> parse_formats(const std::vector<std::string>& names) {
  std::vector<GraphFormat> formats;
  for (const auto& name : names) {
    if (name == "all") return {GraphFormat::dot, GraphFormat::graphml, GraphFormat::json};
    auto format = parse_graph_format(name);
    if (!format) throw UsageError("unknown graph format \"" + name + "\" (expected dot, graphml, json or all)");
    if (std::find(formats.begin(), formats.end(), *format) == formats.end()) formats.push_back(*format);
  }
  return formats;
}

// Lazily computed pipeline stages for one command invocation.
class Pipeline {
 public:
  explicit Pipeline(const RunConfig& config) : config_(config) {}

  const std::string& input_bytes() {
    if (!input_) input_ = read_file(config_.input);
    return *input_;
  }

  const Corpus& corpus() {
    if (!corpus_) corpus_ = load_corpus(input_bytes(), config_.tokenize, fs::path(config_.input).filename().string());
    return *corpus_;
  }

  const RepeatSet& repeats() {
    if (repeats_) return *repeats_;
    const auto& config = config_.repeat;
    std::string key = input_bytes();
    key += "\n#tokenize case_fold=" + std::to_string(config_.tokenize.case_fold);
    key += " repeat " + repeats_json(RepeatSet{{}, config, 0, 0})["config"].dump();
    const fs::path cache_dir = fs::path(config_.out) / ".cache";
    const fs::path cache_file = cache_dir / ("repeats-" + hex64(fnv1a64(key)) + ".json");
    if (fs::exists(cache_file)) {
      try {
        repeats_ = repeats_from_json(nlohmann::json::parse(read_file(cache_file.string())));
        if (repeats_->config == config) return *repeats_;
      } catch (const std::exception&) {
      }
      repeats_.reset();
    }
    repeats_ = extract_repeats(corpus(), config);
    fs::create_directories(cache_dir);
    for (const auto& entry : fs::directory_iterator(cache_dir)) {
      if (entry.path().filename().string().rfind("repeats-", 0) == 0) fs::remove(entry.path());
    }
    write_file_atomic(cache_file.string(), repeats_json(*repeats_).dump() + "\n");
    return *repeats_;
  }

  const std::set<std::size_t>& repeat_paragraphs() {
    if (!repeat_paragraphs_) repeat_paragraphs_ = paragraphs_with_repeats(repeats(), config_.min_words);
    return *repeat_paragraphs_;
  }

  const Gazetteer& gazetteer() {
    if (!config_.gazetteer) {
      throw UsageError("this command needs a gazetteer: pass --gazetteer PATH or set \"gazetteer\" in the config");
    }
    if (!gazetteer_) gazetteer_ = load_gazetteer(*config_.gazetteer);
    return *gazetteer_;
  }

  const std::vector<Mention>& mentions() {
    if (!mentions_) mentions_ = find_mentions(corpus(), gazetteer());
    return *mentions_;
  }

  // Mentions feeding the association graphs.
  const std::vector<Mention>& graph_mentions() {
    if (!config_.fragment_only) return mentions();
    if (!fragment_mentions_) fragment_mentions_ = mentions_in_fragments(mentions(), repeats(), config_.min_words);
    return *fragment_mentions_;
  }

  const AssociationGraph& graph(int window) {
    auto& slot = graphs_[window];
    if (!slot) {
      const std::string description = std::string(config_.fragment_only ? "repeated-phrase spans" : "paragraphs") +
                                      " with a repeat of more than " + std::to_string(config_.min_words) + " words";
      slot = build_graph(graph_mentions(), ParagraphSet::from(repeat_paragraphs(), description), window);
    }
    return *slot;
  }

  const ComponentPartition& partition(int window) {
    auto& slot = partitions_[window];
    if (!slot) slot = connected_components(graph(window));
    return *slot;
  }

  std::vector<std::string> names(int window) {
    std::map<std::string, std::string> labels;
    if (config_.labels) labels = load_component_labels(*config_.labels);
    return component_names(partition(window), gazetteer(), labels);
  }

  std::set<ComponentId> selected_components() {
    const auto& components = partition(config_.window).components;
    const auto display = names(config_.window);
    std::set<ComponentId> selected;
    if (config_.selected_components.empty()) {
      for (ComponentId k = 0; k < components.size(); ++k) {
        if (components[k].size() > 1) selected.insert(k);
      }
      if (selected.empty()) {
        for (ComponentId k = 0; k < components.size(); ++k) selected.insert(k);
      }
      if (selected.empty()) {
        throw InputError("the association graph has no components to sequence");
      }
      return selected;
    }
    for (const auto& wanted : config_.selected_components) {
      auto it = std::find(display.begin(), display.end(), wanted);
      if (it != display.end()) {
        selected.insert(static_cast<ComponentId>(std::distance(display.begin(), it)));
        continue;
      }
      try {
        std::size_t used = 0;
        const auto number = std::stoul(wanted, &used);
        if (used == wanted.size() && number >= 1 && number <= components.size()) {
          selected.insert(number - 1);
          continue;
        }
      } catch (const std::exception&) {
      }
      throw UsageError("selected component \"" + wanted + "\" matches no component name or number");
    }
    return selected;
  }

  std::map<std::string, std::string> colors(const std::vector<std::string>& names) {
    std::map<std::string, std::string> colors;
    std::size_t fallback = 0;
    for (const auto& name : names) {
      if (auto it = config_.color_map.find(name); it != config_.color_map.end()) {
        colors[name] = it->second;
      } else if (auto def = default_palette().find(name); def != default_palette().end()) {
        colors[name] = def->second;
      } else {
        colors[name] = fallback_colors()[fallback++ % fallback_colors().size()];
      }
    }
    return colors;
  }

  nlohmann::json provenance() {
    nlohmann::json doc;
    doc["tool"] = "repetext";
    doc["version"] = std::string(kVersion);
    doc["config"] = config_.to_json();
    doc["config"].erase("out");
    doc["input_fnv1a64"] = hex64(fnv1a64(input_bytes()));
    if (config_.timestamp) {
      const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      char buffer[32];
      std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      doc["timestamp"] = buffer;
    }
    return doc;
  }

 private:
  const RunConfig& config_;
  std::optional<std::string> input_;
  std::optional<Corpus> corpus_;
  std::optional<RepeatSet> repeats_;
  std::optional<std::set<std::size_t>> repeat_paragraphs_;
  std::optional<Gazetteer> gazetteer_;
  std::optional<std::vector<Mention>> mentions_;
  std::optional<std::vector<Mention>> fragment_mentions_;
  std::map<int, std::optional<AssociationGraph>> graphs_;
  std::map<int, std::optional<ComponentPartition>> partitions_;
};

}  // namespace

void RunConfig::validate() const {
  if (input.empty()) throw UsageError("no input text: pass --input PATH or set \"input\" in the config");
  if (out.empty()) throw UsageError("no output directory");
  repeat.validate();
  if (window != 0 && window != 1) throw UsageError("--window must be 0 or 1");
  if (max_pattern_len < 2) throw UsageError("--max-pattern-len must be at least 2");
  if (formats.empty()) throw UsageError("at least one graph format is required");
  svg.validate();
  for (const auto& [name, color] : color_map) {
    if (!is_hex_color(color)) throw UsageError("color for \"" + name + "\" must be #RRGGBB (got \"" + color + "\")");
  }
  if (!fs::is_regular_file(input)) throw IoError("input file not found: " + input);
  if (gazetteer && !fs::is_regular_file(*gazetteer)) throw IoError("gazetteer not found: " + *gazetteer);
  if (labels && !fs::is_regular_file(*labels)) throw IoError("labels file not found: " + *labels);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json doc;
  doc["input"] = input;
  doc["gazetteer"] = gazetteer ? nlohmann::json(*gazetteer) : nlohmann::json(nullptr);
  doc["labels"] = labels ? nlohmann::json(*labels) : nlohmann::json(nullptr);
  doc["out"] = out;
  doc["case_fold"] = tokenize.case_fold;
  doc["min_n"] = repeat.min_n;
  doc["max_n"] = repeat.max_n;
  doc["span_paragraphs"] = repeat.span_paragraphs;
  doc["count_overlapping"] = repeat.count_overlapping;
  doc["include_punct"] = repeat.include_punct;
  doc["strict_maximality"] = repeat.strict_maximality;
  doc["min_words"] = min_words;
  doc["fragment_only"] = fragment_only;
  doc["window"] = window;
  doc["selected_components"] = selected_components;
  doc["max_gap"] = run_policy.max_gap ? nlohmann::json(*run_policy.max_gap) : nlohmann::json(nullptr);
  doc["multi_policy"] = std::string(to_string(run_policy.multi_policy));
  doc["max_pattern_len"] = max_pattern_len;
  std::vector<std::string> format_names;
  for (auto format : formats) format_names.emplace_back(to_string(format));
  doc["format"] = format_names;
  doc["color_map"] = color_map;
  doc["svg_width"] = svg.width;
  doc["cell_width"] = svg.cell_width;
  doc["strip_height"] = svg.strip_height;
  doc["timestamp"] = timestamp;
  return doc;
}

void apply_config_json(RunConfig& config, const nlohmann::json& doc) {
  if (!doc.is_object()) throw UsageError("config file must contain a JSON object");
  auto optional_path = [](const nlohmann::json& value, const std::string& key) -> std::optional<std::string> {
    if (value.is_null()) return std::nullopt;
    return get_as<std::string>(value, key);
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "input") config.input = get_as<std::string>(value, key);
    else if (key == "gazetteer") config.gazetteer = optional_path(value, key);
    else if (key == "labels") config.labels = optional_path(value, key);
    else if (key == "out") config.out = get_as<std::string>(value, key);
    else if (key == "case_fold") config.tokenize.case_fold = get_as<bool>(value, key);
    else if (key == "min_n") config.repeat.min_n = get_as<std::size_t>(value, key);
    else if (key == "max_n") config.repeat.max_n = get_as<std::size_t>(value, key);
    else if (key == "span_paragraphs") config.repeat.span_paragraphs = get_as<bool>(value, key);
    else if (key == "count_overlapping") config.repeat.count_overlapping = get_as<bool>(value, key);
    else if (key == "include_punct") config.repeat.include_punct = get_as<bool>(value, key);
    else if (key == "strict_maximality") config.repeat.strict_maximality = get_as<bool>(value, key);
    else if (key == "min_words") config.min_words = get_as<std::size_t>(value, key);
    else if (key == "fragment_only") config.fragment_only = get_as<bool>(value, key);
    else if (key == "window") config.window = get_as<int>(value, key);
    else if (key == "selected_components") config.selected_components = get_as<std::vector<std::string>>(value, key);
    else if (key == "max_gap") {
      config.run_policy.max_gap =
          value.is_null() ? std::nullopt : std::optional<std::size_t>(get_as<std::size_t>(value, key));
    } else if (key == "multi_policy") {
      auto policy = parse_multi_policy(get_as<std::string>(value, key));
      if (!policy) throw UsageError("multi_policy must be \"break\" or \"emit_all\"");
      config.run_policy.multi_policy = *policy;
    } else if (key == "max_pattern_len") config.max_pattern_len = get_as<std::size_t>(value, key);
    else if (key == "format") {
      config.formats = parse_formats(value.is_string() ? std::vector<std::string>{value.get<std::string>()}
                                                       : get_as<std::vector<std::string>>(value, key));
    } else if (key == "color_map") config.color_map = get_as<std::map<std::string, std::string>>(value, key);
    else if (key == "svg_width") config.svg.width = get_as<double>(value, key);
    else if (key == "cell_width") config.svg.cell_width = get_as<double>(value, key);
    else if (key == "strip_height") config.svg.strip_height = get_as<double>(value, key);
    else if (key == "timestamp") config.timestamp = get_as<bool>(value, key);
    else throw UsageError("unknown config key \"" + key + "\"");
  }
}

RunConfig load_run_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError&) {
    throw UsageError("cannot read config file: " + path);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
  RunConfig config;
  apply_config_json(config, doc);
  // Relative paths in a config file are resolved against its directory.
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](std::string& p) {
    if (!p.empty() && fs::path(p).is_relative()) p = (base / p).lexically_normal().string();
  };
  resolve(config.input);
  if (!config.out.empty()) resolve(config.out);
  if (config.gazetteer) resolve(*config.gazetteer);
  if (config.labels) resolve(*config.labels);
  return config;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t hash = seed;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::optional<Command> parse_command(std::string_view name) {
  if (name == "stats") return Command::stats;
  if (name == "repeats") return Command::repeats;
  if (name == "entities") return Command::entities;
  if (name == "graph") return Command::graph;
  if (name == "sequences") return Command::sequences;
  if (name == "all") return Command::all;
  return std::nullopt;
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::stats: return "stats";
    case Command::repeats: return "repeats";
    case Command::entities: return "entities";
    case Command::graph: return "graph";
    case Command::sequences: return "sequences";
    case Command::all: return "all";
  }
  return "all";
}

CommandResult run_command(Command command, const RunConfig& config) {
  config.validate();
  fs::create_directories(config.out);

  Pipeline pipeline(config);
  CommandResult result;
  ReportInputs inputs;
  const fs::path out(config.out);
  auto write = [&](const std::string& name, std::string_view content) {
    write_file_atomic((out / name).string(), content);
    result.written.push_back(name);
  };

  const bool want_repeats = command == Command::repeats || command == Command::all;
  const bool want_entities = command == Command::entities || command == Command::all;
  const bool want_graph = command == Command::graph || command == Command::all;
  const bool want_sequences = command == Command::sequences || command == Command::all;

  if (want_entities || want_graph || want_sequences) pipeline.gazetteer();

  inputs.corpus = pipeline.corpus().stats();

  if (want_repeats || want_entities || want_graph || want_sequences) {
    const auto& set = pipeline.repeats();
    inputs.repeats = RepeatSummary{&set, config.min_words, pipeline.repeat_paragraphs().size()};
  }

  if (want_repeats) {
    const auto& set = pipeline.repeats();
    write("repeats.csv", repeats_csv(set.phrases));
    write("repeats.json", repeats_json(set).dump(2) + "\n");
    write("top_by_length.csv", repeats_csv(top_by_length(set, 5)));
    write("top_by_frequency.csv", repeats_csv(top_by_frequency(set, 10)));
  }

  if (want_entities || want_graph || want_sequences) {
    const auto& mentions = pipeline.mentions();
    std::set<EntityId> distinct;
    for (const auto& mention : mentions) distinct.insert(mention.entity_id);
    EntitySummary summary;
    summary.gazetteer_entities = pipeline.gazetteer().entities().size();
    summary.mentions = mentions.size();
    summary.distinct_entities = distinct.size();
    summary.in_repeats = entities_in_repeats(mentions, pipeline.repeats(), config.min_words);
    if (want_entities) {
      const auto candidates = candidate_entities(pipeline.corpus());
      summary.candidates = candidates.size();
      write("mentions.csv", mentions_csv(mentions, pipeline.gazetteer()));
      write("candidates.csv", candidates_csv(candidates));
    }
    inputs.entities = summary;
  }

  std::vector<std::map<EntityId, double>> scores(2);
  if (want_graph) {
    for (int window : {0, 1}) {
      const auto& graph = pipeline.graph(window);
      const auto& partition = pipeline.partition(window);
      const auto labels = node_labels(graph, pipeline.gazetteer());
      const auto names = pipeline.names(window);
      const std::string suffix = "_w" + std::to_string(window);
      for (auto format : config.formats) {
        write("graph" + suffix + "." + std::string(file_extension(format)), render_graph(graph, partition, labels, format));
      }
      if (!graph.empty()) scores[window] = pagerank(graph);
      write("components" + suffix + ".csv", components_csv(partition, names, labels));
      write("centrality" + suffix + ".csv", centrality_csv(graph, partition, scores[window], labels));
      inputs.graphs.push_back({&graph, &partition, names, scores[window], labels});
    }
    inputs.comparison = subgraph_window_comparison(pipeline.graph(0), pipeline.graph(1));
    NodeLabels labels = node_labels(pipeline.graph(1), pipeline.gazetteer());
    write("window_comparison.json", comparison_json(*inputs.comparison, labels).dump(2) + "\n");
  }

  std::optional<NetworkLabeling> labeling;
  std::optional<RunSequence> runs;
  std::optional<PatternCounts> patterns;
  if (want_sequences) {
    const auto& partition = pipeline.partition(config.window);
    const auto names = pipeline.names(config.window);
    const auto selected = pipeline.selected_components();
    const std::size_t paragraph_count = pipeline.corpus().paragraphs().size();

    labeling = label_paragraphs(pipeline.mentions(), partition, selected, paragraph_count, names);
    runs = compress_runs(*labeling, selected, config.run_policy);
    patterns = count_patterns(*runs, config.max_pattern_len);
    write("runs.csv", runs_csv(*runs, *labeling));
    write("patterns.csv", patterns_csv(*patterns, *labeling));
    write("patterns.json", patterns_json(*patterns, *labeling).dump(2) + "\n");

    const std::vector<ComponentId> selected_order(selected.begin(), selected.end());
    std::vector<std::string> selected_names;
    for (ComponentId id : selected_order) selected_names.push_back(labeling->name_of(id));
    write("bands_selected.svg",
          render_band_svg(band_data(*labeling, selected_order, pipeline.colors(selected_names)), config.svg));

    std::set<ComponentId> every;
    std::vector<ComponentId> every_order;
    for (ComponentId k = 0; k < partition.components.size(); ++k) {
      if (partition.components[k].size() > 1 || selected.count(k)) {
        every.insert(k);
        every_order.push_back(k);
      }
    }
    const auto full = label_paragraphs(pipeline.mentions(), partition, every, paragraph_count, names);
    std::vector<std::string> every_names;
    for (ComponentId id : every_order) every_names.push_back(full.name_of(id));
    write("bands_all.svg", render_band_svg(band_data(full, every_order, pipeline.colors(every_names)), config.svg));
    inputs.sequences = SequenceSummary{&*labeling, &*runs, &*patterns};
  }

  inputs.provenance = pipeline.provenance();
  inputs.provenance["command"] = std::string(to_string(command));
  result.report = export_report(inputs);
  write("report.json", result.report.json.dump(2) + "\n");
  write("report.txt", result.report.text);
  return result;
}

}  // namespace repetext
