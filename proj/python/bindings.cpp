#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "repetext/error.hpp"
#include "repetext/pipeline.hpp"

namespace py = pybind11;
using namespace repetext;

namespace {

py::dict edge_dict(const AssociationGraph& graph) {
  py::dict edges;
  for (const auto& [key, weight] : graph.edges()) {
    edges[py::make_tuple(key.first, key.second)] = weight;
  }
  return edges;
}

void bind_corpus(py::module_& m) {
  py::class_<TokenizeOptions>(m, "TokenizeOptions")
      .def(py::init<>())
      .def(py::init([](bool case_fold) { return TokenizeOptions{case_fold}; }), py::arg("case_fold"))
      .def_readwrite("case_fold", &TokenizeOptions::case_fold);

  py::class_<Token>(m, "Token")
      .def_readonly("surface", &Token::surface)
      .def_readonly("norm", &Token::norm)
      .def_readonly("paragraph_idx", &Token::paragraph_idx)
      .def_readonly("pos_in_paragraph", &Token::pos_in_paragraph)
      .def_readonly("global_pos", &Token::global_pos)
      .def_readonly("byte_offset", &Token::byte_offset)
      .def_readonly("is_punct", &Token::is_punct)
      .def_readonly("is_word", &Token::is_word)
      .def("__repr__", [](const Token& t) { return "<Token '" + t.surface + "'>"; });

  py::class_<CorpusStats>(m, "CorpusStats")
      .def(py::init<>())
      .def_readonly("paragraph_count", &CorpusStats::paragraph_count)
      .def_readonly("sentence_count", &CorpusStats::sentence_count)
      .def_readonly("word_count", &CorpusStats::word_count)
      .def_readonly("token_count", &CorpusStats::token_count)
      .def(py::self == py::self)
      .def("__repr__", [](const CorpusStats& s) {
        return "CorpusStats(paragraphs=" + std::to_string(s.paragraph_count) + ", sentences=" +
               std::to_string(s.sentence_count) + ", words=" + std::to_string(s.word_count) +
               ", tokens=" + std::to_string(s.token_count) + ")";
      });

  py::class_<Paragraph>(m, "Paragraph")
      .def_readonly("idx", &Paragraph::idx)
      .def_readonly("tokens", &Paragraph::tokens)
      .def_readonly("sentence_count", &Paragraph::sentence_count)
      .def_property_readonly("char_span", [](const Paragraph& p) { return py::make_tuple(p.char_span.start, p.char_span.end); });

  py::class_<Corpus>(m, "Corpus")
      .def_property_readonly("paragraphs", &Corpus::paragraphs)
      .def_property_readonly("stats", &Corpus::stats)
      .def_property_readonly("source_name", &Corpus::source_name);

  m.def("load_corpus", &load_corpus, py::arg("text"), py::arg("options") = TokenizeOptions{},
        py::arg("source_name") = "<memory>");
  m.def("load_corpus_file", &load_corpus_file, py::arg("path"), py::arg("options") = TokenizeOptions{});
  m.def("corpus_stats", &corpus_stats);
}

void bind_repeats(py::module_& m) {
  py::class_<RepeatConfig>(m, "RepeatConfig")
      .def(py::init<>())
      .def_readwrite("min_n", &RepeatConfig::min_n)
      .def_readwrite("max_n", &RepeatConfig::max_n)
      .def_readwrite("span_paragraphs", &RepeatConfig::span_paragraphs)
      .def_readwrite("count_overlapping", &RepeatConfig::count_overlapping)
      .def_readwrite("include_punct", &RepeatConfig::include_punct)
      .def_readwrite("strict_maximality", &RepeatConfig::strict_maximality);

  py::class_<Occurrence>(m, "Occurrence")
      .def_readonly("paragraph_idx", &Occurrence::paragraph_idx)
      .def_readonly("start_pos_in_paragraph", &Occurrence::start_pos_in_paragraph)
      .def_readonly("global_start", &Occurrence::global_start)
      .def_readonly("end_paragraph_idx", &Occurrence::end_paragraph_idx);

  py::class_<RepeatedPhrase>(m, "RepeatedPhrase")
      .def_readonly("tokens", &RepeatedPhrase::tokens)
      .def_readonly("n", &RepeatedPhrase::n)
      .def_readonly("word_count", &RepeatedPhrase::word_count)
      .def_readonly("occurrences", &RepeatedPhrase::occurrences)
      .def_readonly("count", &RepeatedPhrase::count)
      .def_property_readonly("text", &RepeatedPhrase::text)
      .def("__repr__", [](const RepeatedPhrase& p) { return "<RepeatedPhrase '" + p.text() + "' x" + std::to_string(p.count) + ">"; });

  py::class_<RepeatSet>(m, "RepeatSet")
      .def_readonly("phrases", &RepeatSet::phrases)
      .def_readonly("config", &RepeatSet::config)
      .def_readonly("unpruned_count", &RepeatSet::unpruned_count)
      .def_readonly("longest_n", &RepeatSet::longest_n)
      .def(py::self == py::self)
      .def("__len__", [](const RepeatSet& s) { return s.phrases.size(); });

  m.def("extract_repeats", &extract_repeats, py::arg("corpus"), py::arg("config") = RepeatConfig{});
  m.def("oracle_repeats", &oracle_repeats, py::arg("corpus"), py::arg("config") = RepeatConfig{});
  m.def("paragraphs_with_repeats", &paragraphs_with_repeats, py::arg("repeat_set"), py::arg("min_words"));
  m.def("top_by_length", &top_by_length, py::arg("repeat_set"), py::arg("k"));
  m.def("top_by_frequency", &top_by_frequency, py::arg("repeat_set"), py::arg("k"));
}

void bind_entities(py::module_& m) {
  py::class_<Entity>(m, "Entity")
      .def_readonly("id", &Entity::id)
      .def_readonly("canonical", &Entity::canonical)
      .def_readonly("aliases", &Entity::aliases)
      .def_property_readonly("category", [](const Entity& e) -> py::object {
        if (!e.category) return py::none();
        return py::str(std::string(to_string(*e.category)));
      });

  py::class_<Gazetteer>(m, "Gazetteer")
      .def_property_readonly("entities", &Gazetteer::entities)
      .def_property_readonly("case_sensitive", &Gazetteer::case_sensitive)
      .def("find_by_canonical", &Gazetteer::find_by_canonical);

  py::class_<Mention>(m, "Mention")
      .def_readonly("entity_id", &Mention::entity_id)
      .def_readonly("paragraph_idx", &Mention::paragraph_idx)
      .def_readonly("global_start", &Mention::global_start)
      .def_property_readonly("token_span", [](const Mention& x) { return py::make_tuple(x.token_span.start, x.token_span.end); });

  py::class_<Candidate>(m, "Candidate")
      .def_readonly("tokens", &Candidate::tokens)
      .def_readonly("frequency", &Candidate::frequency)
      .def_property_readonly("text", &Candidate::text);

  py::class_<RepeatEntities>(m, "RepeatEntities")
      .def_readonly("entities", &RepeatEntities::entities)
      .def_readonly("paragraphs", &RepeatEntities::paragraphs);

  m.def("parse_gazetteer", &parse_gazetteer, py::arg("json_text"));
  m.def("load_gazetteer", &load_gazetteer, py::arg("path"));
  m.def("find_mentions", &find_mentions, py::arg("corpus"), py::arg("gazetteer"));
  m.def("candidate_entities", &candidate_entities, py::arg("corpus"));
  m.def("entities_in_repeats", &entities_in_repeats, py::arg("mentions"), py::arg("repeat_set"), py::arg("min_words") = 3);
}

void bind_networks(py::module_& m) {
  py::class_<AssociationGraph>(m, "AssociationGraph")
      .def_property_readonly("nodes", &AssociationGraph::nodes)
      .def_property_readonly("edges", &edge_dict)
      .def_property_readonly("window", &AssociationGraph::window)
      .def_property_readonly("paragraph_filter", &AssociationGraph::paragraph_filter)
      .def("weight", &AssociationGraph::weight)
      .def(py::self == py::self);

  py::class_<ComponentPartition>(m, "ComponentPartition")
      .def_readonly("components", &ComponentPartition::components)
      .def_readonly("node_to_component", &ComponentPartition::node_to_component);

  py::class_<DegreeInfo>(m, "DegreeInfo")
      .def_readonly("degree", &DegreeInfo::degree)
      .def_readonly("weighted_degree", &DegreeInfo::weighted_degree);

  py::class_<WindowComparison>(m, "WindowComparison")
      .def_readonly("edges_subset", &WindowComparison::edges_subset)
      .def_property_readonly("new_edges", [](const WindowComparison& c) {
        py::list edges;
        for (const auto& e : c.new_edges) edges.append(py::make_tuple(e.first, e.second));
        return edges;
      })
      .def_readonly("merged_components", &WindowComparison::merged_components)
      .def_readonly("bridges", &WindowComparison::bridges);

  m.def(
      "build_graph",
      [](const std::vector<Mention>& mentions, std::optional<std::set<std::size_t>> paragraphs, int window,
         std::optional<std::size_t> paragraph_count) {
        ParagraphSet set;
        if (paragraphs) {
          set = ParagraphSet::from(*paragraphs, "selected paragraphs");
        } else {
          std::size_t count = paragraph_count.value_or(0);
          for (const auto& mention : mentions) count = std::max(count, mention.paragraph_idx + 1);
          set = ParagraphSet::all(count);
        }
        return build_graph(mentions, set, window);
      },
      py::arg("mentions"), py::arg("paragraphs") = py::none(), py::arg("window") = 0,
      py::arg("paragraph_count") = py::none());
  m.def("connected_components", &connected_components);
  m.def("degree_weights", &degree_weights);
  m.def(
      "pagerank",
      [](const AssociationGraph& graph, double damping, double tol, std::size_t max_iter) {
        return pagerank(graph, PageRankOptions{damping, tol, max_iter});
      },
      py::arg("graph"), py::arg("damping") = 0.85, py::arg("tol") = 1e-9, py::arg("max_iter") = 1000);
  m.def("subgraph_window_comparison", &subgraph_window_comparison, py::arg("g0"), py::arg("g1"));
}

void bind_sequences(py::module_& m) {
  py::class_<NetworkLabeling>(m, "NetworkLabeling")
      .def_readonly("labels", &NetworkLabeling::labels)
      .def_readonly("paragraph_count", &NetworkLabeling::paragraph_count);

  py::class_<Run>(m, "Run")
      .def_readonly("component", &Run::component)
      .def_readonly("start_paragraph", &Run::start_paragraph)
      .def_readonly("end_paragraph", &Run::end_paragraph)
      .def_readonly("length", &Run::length)
      .def_readonly("segment", &Run::segment);

  py::class_<RunSequence>(m, "RunSequence").def_readonly("runs", &RunSequence::runs);

  py::class_<PatternCounts>(m, "PatternCounts")
      .def_readonly("counts", &PatternCounts::counts)
      .def("count", &PatternCounts::count);

  m.def("label_paragraphs", &label_paragraphs, py::arg("mentions"), py::arg("partition"), py::arg("selected"),
        py::arg("paragraph_count"), py::arg("names") = std::vector<std::string>{});
  m.def(
      "compress_runs",
      [](const NetworkLabeling& labeling, const std::set<ComponentId>& selected, std::optional<std::size_t> max_gap,
         const std::string& multi_policy) {
        auto policy = parse_multi_policy(multi_policy);
        if (!policy) throw ParameterError("multi_policy must be 'break' or 'emit_all'");
        return compress_runs(labeling, selected, RunPolicy{max_gap, *policy});
      },
      py::arg("labeling"), py::arg("selected"), py::arg("max_gap") = py::none(), py::arg("multi_policy") = "break");
  m.def("count_patterns", &count_patterns, py::arg("runs"), py::arg("max_len"));
}

void bind_export(py::module_& m) {
  m.def(
      "render_graph",
      [](const AssociationGraph& graph, const ComponentPartition& partition, const NodeLabels& labels,
         const std::string& format) {
        auto parsed = parse_graph_format(format);
        if (!parsed) throw ParameterError("format must be dot, graphml or json");
        return render_graph(graph, partition, labels, *parsed);
      },
      py::arg("graph"), py::arg("partition"), py::arg("labels") = NodeLabels{}, py::arg("format") = "json");
  m.def("import_graph_json", [](const std::string& text) {
    auto imported = import_graph_json(text);
    return py::make_tuple(imported.graph, imported.labels);
  });
  m.def(
      "run",
      [](const std::string& command, const py::dict& config_dict) {
        auto parsed = parse_command(command);
        if (!parsed) throw UsageError("unknown command: " + command);
        RunConfig config;
        auto json_module = py::module_::import("json");
        const std::string text = py::str(json_module.attr("dumps")(config_dict));
        apply_config_json(config, nlohmann::json::parse(text));
        if (config.out.empty()) config.out = std::string(kDefaultOutDir);
        auto result = run_command(*parsed, config);
        return py::make_tuple(result.report.json.dump(), result.written);
      },
      py::arg("command"), py::arg("config"));
}

}  // namespace

PYBIND11_MODULE(_repetext, m) {
  m.doc() = "Repetition structure of paragraph-segmented text";
  m.attr("__version__") = std::string(kVersion);

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());

  bind_corpus(m);
  bind_repeats(m);
  bind_entities(m);
  bind_networks(m);
  bind_sequences(m);
  bind_export(m);
}
