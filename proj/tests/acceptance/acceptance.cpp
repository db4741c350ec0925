// Acceptance suite: one PASS/FAIL/SKIP line per criterion, exit 1 on any FAIL.
//
//   repetext_acceptance [criterion...]     (default: all)
//
// Criterion 9 needs a user-supplied text of the novel; set REPETEXT_NOVEL to
// its path (and optionally REPETEXT_NOVEL_GAZETTEER) to run it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "repetext/pipeline.hpp"
#include "support.hpp"

#ifndef REPETEXT_FIXTURE_DIR
#error "REPETEXT_FIXTURE_DIR must be defined"
#endif
#ifndef REPETEXT_GOLDEN_DIR
#error "REPETEXT_GOLDEN_DIR must be defined"
#endif

namespace fs = std::filesystem;
using namespace repetext;
namespace rt = repetext::testing;

namespace {

enum class Verdict { pass, fail, skip };

struct Outcome {
  Verdict verdict = Verdict::pass;
  std::string detail;
};

Outcome fail(std::string why) { return {Verdict::fail, std::move(why)}; }
Outcome skip(std::string why) { return {Verdict::skip, std::move(why)}; }

std::string fixture(const std::string& name) { return std::string(REPETEXT_FIXTURE_DIR) + "/" + name; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("repetext-acceptance-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// 1 -------------------------------------------------------------------------
Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> alphabet(2, 50);
  std::uniform_int_distribution<std::size_t> paragraphs(1, 100);
  // Lengths skew short so the brute-force oracle stays fast, but the range
  // is covered end to end.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t corpora = 0, comparisons = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int round = 0; round < 200; ++round) {
    std::size_t length = 10 + static_cast<std::size_t>(std::pow(unit(rng), 2.0) * 4990.0);
    if (round == 0) length = 10;
    if (round == 1) length = 5000;
    std::size_t a = alphabet(rng);
    if (round == 1) a = 2;
    const auto corpus = load_corpus(rt::random_corpus_text(rng, a, length, paragraphs(rng)));
    ++corpora;
    for (int combo = 0; combo < 4; ++combo) {
      RepeatConfig config;
      config.span_paragraphs = combo & 1;
      config.count_overlapping = (combo & 2) == 0;
      const auto fast = extract_repeats(corpus, config);
      const auto slow = oracle_repeats(corpus, config);
      ++comparisons;
      if (!(fast == slow)) {
        return fail("mismatch on corpus " + std::to_string(round) + " (alphabet " + std::to_string(a) + ", " +
                    std::to_string(length) + " tokens, combo " + std::to_string(combo) + "): " +
                    std::to_string(fast.phrases.size()) + " vs " + std::to_string(slow.phrases.size()) + " phrases");
      }
    }
  }
  std::ostringstream detail;
  detail << corpora << " corpora, " << comparisons << " comparisons in " << seconds_since(start) << " s";
  return {Verdict::pass, detail.str()};
}

// 2 -------------------------------------------------------------------------
Outcome micro_examples() {
  const auto abc = extract_repeats(load_corpus("a b c a b c"));
  if (abc.phrases.size() != 1 || abc.phrases[0].tokens != std::vector<std::string>{"a", "b", "c"} ||
      abc.phrases[0].count != 2) {
    return fail("\"a b c a b c\" did not yield the single phrase a b c x2");
  }
  const auto xyx = extract_repeats(load_corpus("x y x y x"));
  if (xyx.phrases.size() != 1 || xyx.phrases[0].tokens != std::vector<std::string>{"x", "y", "x"} ||
      xyx.phrases[0].count != 2) {
    return fail("\"x y x y x\" did not yield the single phrase x y x x2");
  }
  const auto& occ = xyx.phrases[0].occurrences;
  if (occ.size() != 2 || occ[0].start_pos_in_paragraph != 0 || occ[1].start_pos_in_paragraph != 2) {
    return fail("x y x occurrences are not at positions 0 and 2");
  }
  if (!(abc == oracle_repeats(load_corpus("a b c a b c"))) || !(xyx == oracle_repeats(load_corpus("x y x y x")))) {
    return fail("oracle disagrees on a micro-example");
  }
  return {Verdict::pass, "a b c x2; x y x x2 at 0 and 2"};
}

// 3 -------------------------------------------------------------------------
Outcome window_monotonicity() {
  std::mt19937_64 rng(31337);
  std::size_t edges_checked = 0;
  for (int round = 0; round < 100; ++round) {
    const std::size_t paragraphs = 5 + round;
    const auto mentions = rt::random_mentions(rng, 3 + round % 20, paragraphs, 1 + round % 4);
    std::set<std::size_t> subset;
    for (std::size_t p = 0; p < paragraphs; ++p) {
      if (round % 2 == 0 || p % 3 != 0) subset.insert(p);
    }
    const auto set = ParagraphSet::from(subset, "random subset");
    const auto g0 = build_graph(mentions, set, 0);
    const auto g1 = build_graph(mentions, set, 1);
    for (const auto& [key, weight] : g0.edges()) {
      ++edges_checked;
      if (g1.weight(key.first, key.second) < weight) {
        return fail("round " + std::to_string(round) + ": w=1 weight below w=0 weight");
      }
    }
    if (!subgraph_window_comparison(g0, g1).edges_subset) return fail("comparison reports a missing w=0 edge");
  }
  return {Verdict::pass, "100 streams, " + std::to_string(edges_checked) + " w=0 edges, 0 violations"};
}

// 4 -------------------------------------------------------------------------
AssociationGraph cycle(std::size_t n, std::size_t weight) {
  std::set<EntityId> nodes;
  std::map<EdgeKey, std::size_t> edges;
  for (EntityId i = 0; i < n; ++i) {
    nodes.insert(i);
    edges[EdgeKey(i, static_cast<EntityId>((i + 1) % n))] = weight;
  }
  return AssociationGraph(nodes, edges, 0, "cycle");
}

AssociationGraph complete(std::size_t n) {
  std::set<EntityId> nodes;
  std::map<EdgeKey, std::size_t> edges;
  for (EntityId i = 0; i < n; ++i) {
    nodes.insert(i);
    for (EntityId j = i + 1; j < n; ++j) edges[EdgeKey(i, j)] = 2;
  }
  return AssociationGraph(nodes, edges, 0, "complete");
}

AssociationGraph hypercube(std::size_t dim) {
  std::set<EntityId> nodes;
  std::map<EdgeKey, std::size_t> edges;
  for (EntityId i = 0; i < (1u << dim); ++i) {
    nodes.insert(i);
    for (std::size_t b = 0; b < dim; ++b) edges[EdgeKey(i, i ^ (1u << b))] = 1;
  }
  return AssociationGraph(nodes, edges, 0, "hypercube");
}

Outcome pagerank_checks() {
  auto uniform = [](const AssociationGraph& g, const std::string& name) -> std::optional<Outcome> {
    const auto scores = pagerank(g);
    const double expected = 1.0 / static_cast<double>(g.nodes().size());
    double sum = 0.0;
    for (const auto& [id, score] : scores) {
      sum += score;
      if (std::abs(score - expected) > 1e-9) return fail(name + ": score " + std::to_string(score) + " not uniform");
    }
    if (std::abs(sum - 1.0) > 1e-9) return fail(name + ": scores sum to " + std::to_string(sum));
    return std::nullopt;
  };
  if (auto bad = uniform(cycle(3, 1), "triangle")) return *bad;
  for (std::size_t n : {4, 7, 12}) {
    if (auto bad = uniform(cycle(n, 3), "cycle " + std::to_string(n))) return *bad;
  }
  for (std::size_t n : {2, 5, 9}) {
    if (auto bad = uniform(complete(n), "complete " + std::to_string(n))) return *bad;
  }
  if (auto bad = uniform(hypercube(4), "hypercube 4")) return *bad;

  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::uniform_real_distribution<double> density(0.02, 0.5);
  double worst = 0.0;
  for (int round = 0; round < 20; ++round) {
    const auto g = rt::random_graph(rng, size(rng), density(rng));
    const auto fast = pagerank(g);
    const auto dense = rt::dense_pagerank(g);
    double sum = 0.0;
    for (const auto& [id, score] : fast) {
      sum += score;
      worst = std::max(worst, std::abs(score - dense.at(id)));
    }
    if (std::abs(sum - 1.0) > 1e-9) return fail("random graph scores sum to " + std::to_string(sum));
  }
  if (worst > 1e-6) return fail("max deviation from dense oracle " + std::to_string(worst));
  std::ostringstream detail;
  detail << "uniform on 8 vertex-transitive graphs; 20 random graphs, max |diff| " << worst;
  return {Verdict::pass, detail.str()};
}

// 5 -------------------------------------------------------------------------
Outcome sequence_properties() {
  std::mt19937_64 rng(777);
  std::size_t patterns_checked = 0;
  const std::set<ComponentId> all{0, 1, 2, 3, 4};
  for (int round = 0; round < 100; ++round) {
    const auto labeling = rt::random_labeling(rng, 2 + round % 4, 20 + round * 3);
    RunPolicy policy;
    policy.multi_policy = round % 2 ? MultiPolicy::emit_all : MultiPolicy::break_run;
    if (round % 3 == 0) policy.max_gap = round % 5;
    const auto seq = compress_runs(labeling, all, policy);
    const auto counts = count_patterns(seq, 10);

    std::map<std::size_t, std::size_t> runs_per_segment;
    for (std::size_t i = 0; i < seq.runs.size(); ++i) {
      ++runs_per_segment[seq.runs[i].segment];
      if (i > 0 && seq.runs[i].segment == seq.runs[i - 1].segment &&
          seq.runs[i].component == seq.runs[i - 1].component) {
        return fail("round " + std::to_string(round) + ": adjacent runs share a component");
      }
    }
    for (const auto& [pattern, count] : counts.counts) {
      ++patterns_checked;
      if (pattern.size() > 2) {
        const std::vector<ComponentId> prefix(pattern.begin(), pattern.end() - 1);
        const std::vector<ComponentId> suffix(pattern.begin() + 1, pattern.end());
        if (counts.count(prefix) < count || counts.count(suffix) < count) {
          return fail("round " + std::to_string(round) + ": a pattern outnumbers its prefix or suffix");
        }
      }
    }
    for (std::size_t len = 2; len <= 10; ++len) {
      std::size_t total = 0, expected = 0;
      for (const auto& [pattern, count] : counts.counts) {
        if (pattern.size() == len) total += count;
      }
      for (const auto& [segment, r] : runs_per_segment) expected += r + 1 > len ? r - len + 1 : 0;
      if (total != expected) {
        return fail("round " + std::to_string(round) + ": " + std::to_string(total) + " windows of length " +
                    std::to_string(len) + ", expected " + std::to_string(expected));
      }
    }
  }
  return {Verdict::pass, "100 labelings, " + std::to_string(patterns_checked) + " patterns"};
}

// 6 -------------------------------------------------------------------------
Outcome published_counts_consistency() {
  std::ifstream in(fixture("published_run_counts.csv"));
  if (!in) return fail("missing fixture published_run_counts.csv");
  std::map<std::vector<int>, std::size_t> table;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    std::istringstream pattern_in(line.substr(0, comma));
    std::vector<int> pattern;
    for (int c; pattern_in >> c;) pattern.push_back(c);
    table[pattern] = std::stoul(line.substr(comma + 1));
  }
  if (table.size() != 16) return fail("expected 16 rows, read " + std::to_string(table.size()));

  std::size_t pairs = 0;
  for (const auto& [outer, outer_count] : table) {
    for (const auto& [inner, inner_count] : table) {
      if (inner.size() >= outer.size()) continue;
      const bool contained =
          std::search(outer.begin(), outer.end(), inner.begin(), inner.end()) != outer.end();
      if (!contained) continue;
      ++pairs;
      if (inner_count < outer_count) {
        return fail("a sub-pattern is rarer than a pattern containing it");
      }
    }
  }
  // The <2,3>-rooted prefix chain spelled out.
  std::vector<std::size_t> chain;
  for (std::size_t len : {2, 3, 4, 5, 6, 7, 8, 10}) {
    std::vector<int> pattern;
    for (std::size_t i = 0; i < len; ++i) pattern.push_back(i % 2 ? 3 : 2);
    chain.push_back(table.at(pattern));
  }
  if (!std::is_sorted(chain.rbegin(), chain.rend())) return fail("<2,3> prefix chain is not non-increasing");
  std::ostringstream detail;
  detail << pairs << " contained pairs monotone; chain";
  for (auto c : chain) detail << " " << c;
  return {Verdict::pass, detail.str()};
}

// 7 -------------------------------------------------------------------------
RunConfig mini_novel_config(const fs::path& out) {
  RunConfig config;
  config.input = fixture("mini_novel.txt");
  config.gazetteer = fixture("gazetteer.json");
  config.labels = fixture("labels.json");
  config.out = out.string();
  return config;
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) files[fs::relative(entry.path(), root).generic_string()] = read_file(entry.path());
  }
  return files;
}

Outcome determinism() {
  const auto first = scratch_dir("det-a");
  const auto second = scratch_dir("det-b");
  run_command(Command::all, mini_novel_config(first));
  run_command(Command::all, mini_novel_config(second));
  const auto a = snapshot(first);
  const auto b = snapshot(second);
  // Third run reuses the first tree's repeats cache.
  run_command(Command::all, mini_novel_config(first));
  const auto c = snapshot(first);
  fs::remove_all(first);
  fs::remove_all(second);
  if (a.size() < 20) return fail("only " + std::to_string(a.size()) + " files written");
  if (a != b) {
    for (const auto& [name, content] : a) {
      if (!b.contains(name) || b.at(name) != content) return fail("fresh runs differ in " + name);
    }
    return fail("fresh runs produced different file sets");
  }
  if (a != c) return fail("cached run differs from the fresh run");
  return {Verdict::pass, std::to_string(a.size()) + " files byte-identical across 2 fresh runs and 1 cached run"};
}

// 8 -------------------------------------------------------------------------
Outcome export_round_trip() {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 50; ++round) {
    auto g = rt::random_graph(rng, round % 40, 0.2);
    NodeLabels labels;
    for (auto id : g.nodes()) labels[id] = "Entity \"" + std::to_string(id) + "\" <&>";
    const auto text = render_graph(g, connected_components(g), labels, GraphFormat::json);
    const auto back = import_graph_json(text);
    if (!(back.graph == g) || back.labels != labels) return fail("round " + std::to_string(round) + " differs");
  }
  const AssociationGraph triangle({0, 1, 2}, {{EdgeKey(0, 1), 1}, {EdgeKey(1, 2), 1}, {EdgeKey(0, 2), 2}}, 0,
                                  "paragraphs with repeats");
  const NodeLabels labels{{0, "Anna \"A\" Bell"}, {1, "Ben & Co"}, {2, "Cleo"}};
  const auto partition = connected_components(triangle);
  const std::string golden_dir = REPETEXT_GOLDEN_DIR;
  if (render_graph(triangle, partition, labels, GraphFormat::dot) != read_file(golden_dir + "/triangle.dot")) {
    return fail("DOT output differs from golden triangle.dot");
  }
  if (render_graph(triangle, partition, labels, GraphFormat::graphml) !=
      read_file(golden_dir + "/triangle.graphml")) {
    return fail("GraphML output differs from golden triangle.graphml");
  }
  return {Verdict::pass, "50 JSON round trips; DOT and GraphML match goldens"};
}

// 9 -------------------------------------------------------------------------
Outcome full_novel() {
  const char* novel = std::getenv("REPETEXT_NOVEL");
  if (!novel || !*novel) {
    return skip("conditional: set REPETEXT_NOVEL=/path/to/novel.txt (see README, 'Full-novel replication')");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = load_corpus_file(novel);
  const auto stats = corpus.stats();
  std::ostringstream detail;
  auto within = [](double got, double want, double tol) { return std::abs(got - want) <= tol * want; };
  bool ok = true;
  auto check = [&](const char* name, double got, double want, double tol) {
    const bool good = within(got, want, tol);
    ok = ok && good;
    detail << name << "=" << got << (good ? "" : "(!)") << " ";
  };
  check("paragraphs", static_cast<double>(stats.paragraph_count), 3804, 0.02);
  check("sentences", static_cast<double>(stats.sentence_count), 4352, 0.02);
  check("words", static_cast<double>(stats.word_count), 81970, 0.02);
  const auto repeats = extract_repeats(corpus);
  check("phrases", static_cast<double>(repeats.phrases.size()), 4503, 0.05);
  bool think = false;
  for (const auto& phrase : top_by_frequency(repeats, 10)) {
    if (phrase.text().find("now that I think about it") != std::string::npos && phrase.count == 8) think = true;
  }
  detail << "top10 has 'now that I think about it' x8: " << (think ? "yes" : "no(!)") << " ";
  ok = ok && think;
  if (const char* gaz = std::getenv("REPETEXT_NOVEL_GAZETTEER"); gaz && *gaz) {
    const auto mentions = find_mentions(corpus, load_gazetteer(gaz));
    std::set<EntityId> distinct;
    for (const auto& m : mentions) distinct.insert(m.entity_id);
    detail << "entities=" << distinct.size() << " (gazetteer-dependent, 462 expected) ";
  }
  detail << "in " << seconds_since(start) << " s";
  return {ok ? Verdict::pass : Verdict::fail, detail.str()};
}

// 10 ------------------------------------------------------------------------
// Zipf-distributed vocabulary plus recurring phrases and capitalised names,
// roughly the texture of prose.
std::string synthetic_novel(std::size_t tokens, std::vector<std::string>& names) {
  std::mt19937_64 rng(2016);
  std::vector<double> weights(4000);
  for (std::size_t k = 0; k < weights.size(); ++k) weights[k] = 1.0 / static_cast<double>(k + 1);
  std::discrete_distribution<std::size_t> word(weights.begin(), weights.end());
  names.clear();
  for (int k = 0; k < 60; ++k) {
    std::string name = rt::word_for(static_cast<std::size_t>(k) * 7 + 30);
    name[0] = static_cast<char>(name[0] - 'a' + 'A');
    names.push_back(name + "son");
  }
  std::vector<std::vector<std::string>> refrains;
  for (int k = 0; k < 200; ++k) {
    std::vector<std::string> refrain;
    const std::size_t len = 3 + static_cast<std::size_t>(k % 12);
    for (std::size_t i = 0; i < len; ++i) refrain.push_back(rt::word_for(word(rng)));
    refrains.push_back(refrain);
  }
  std::uniform_int_distribution<int> event(0, 99);
  std::uniform_int_distribution<std::size_t> pick_name(0, names.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_refrain(0, refrains.size() - 1);
  std::uniform_int_distribution<std::size_t> para_len(10, 45);
  std::string text;
  std::size_t emitted = 0;
  while (emitted < tokens) {
    const std::size_t len = para_len(rng);
    // Names cluster by paragraph group so the graph has components.
    const std::size_t cluster = (emitted / 2000) % 6;
    for (std::size_t i = 0; i < len && emitted < tokens; ++i) {
      const int e = event(rng);
      if (e < 4) {
        text += names[(cluster * 10 + pick_name(rng) % 10) % names.size()];
        ++emitted;
      } else if (e < 6) {
        for (const auto& w : refrains[pick_refrain(rng)]) {
          text += w + ' ';
          ++emitted;
        }
        continue;
      } else if (e < 12) {
        text += '.';
        ++emitted;
      } else {
        text += rt::word_for(word(rng));
        ++emitted;
      }
      text += ' ';
    }
    text += ".\n\n";
    ++emitted;
  }
  return text;
}

Outcome performance() {
  std::vector<std::string> names;
  const auto text = synthetic_novel(100000, names);
  const auto dir = scratch_dir("perf");
  {
    std::ofstream(dir / "novel.txt", std::ios::binary) << text;
    nlohmann::json gazetteer = nlohmann::json::array();
    for (const auto& name : names) gazetteer.push_back({{"canonical", name}});
    std::ofstream(dir / "gazetteer.json") << gazetteer.dump();
  }
  const auto corpus = load_corpus(text);
  auto start = std::chrono::steady_clock::now();
  const auto repeats = extract_repeats(corpus);
  const double extract_s = seconds_since(start);

  RunConfig config;
  config.input = (dir / "novel.txt").string();
  config.gazetteer = (dir / "gazetteer.json").string();
  config.out = (dir / "out").string();
  start = std::chrono::steady_clock::now();
  run_command(Command::all, config);
  const double all_s = seconds_since(start);
  fs::remove_all(dir);

  std::ostringstream detail;
  detail << corpus.stats().token_count << " tokens, " << repeats.phrases.size() << " phrases; extract_repeats "
         << extract_s << " s (< 10), cmd_all " << all_s << " s (< 30)";
  if (extract_s >= 10.0 || all_s >= 30.0) return fail(detail.str());
  return {Verdict::pass, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence (repeats)", oracle_equivalence},
      {"worked micro-examples", micro_examples},
      {"window monotonicity", window_monotonicity},
      {"pagerank checks", pagerank_checks},
      {"sequence properties", sequence_properties},
      {"published run counts consistency", published_counts_consistency},
      {"determinism", determinism},
      {"export round-trip", export_round_trip},
      {"full-novel checks", full_novel},
      {"performance", performance},
  };
  std::set<std::size_t> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoul(argv[i]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!wanted.empty() && !wanted.contains(k + 1)) continue;
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = fail(std::string("threw: ") + e.what());
    }
    const char* tag = outcome.verdict == Verdict::pass ? "PASS" : outcome.verdict == Verdict::fail ? "FAIL" : "SKIP";
    if (outcome.verdict == Verdict::fail) ++failures;
    std::cout << tag << "  " << k + 1 << ". " << criteria[k].first << " -- " << outcome.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
