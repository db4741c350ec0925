// repetext: repetition structure of paragraph-segmented text.
//
//   repetext <stats|repeats|entities|graph|sequences|all> [flags]
//
// Flags override values from --config; the output directory falls back to
// $REPETEXT_OUT and then ./repetext-out.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "repetext/error.hpp"
#include "repetext/pipeline.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> input;
  std::optional<std::string> out;
  std::optional<std::string> gazetteer;
  std::optional<std::string> labels;
  std::optional<std::size_t> min_n;
  std::optional<std::size_t> max_n;
  std::optional<std::size_t> min_words;
  std::optional<int> window;
  std::optional<std::string> max_gap;
  std::optional<std::string> multi_policy;
  std::optional<std::size_t> max_pattern_len;
  std::vector<std::string> formats;
  std::vector<std::string> select;
  std::optional<double> cell_width;
  std::optional<double> strip_height;
  bool span_paragraphs = false;
  bool strict_maximality = false;
  bool case_fold = false;
  bool no_overlap = false;
  bool exclude_punct = false;
  bool fragment_only = false;
  bool timestamp = false;
};

repetext::RunConfig effective_config(const CLI::App& app, const Flags& flags) {
  using repetext::UsageError;
  repetext::RunConfig config = flags.config ? repetext::load_run_config(*flags.config) : repetext::RunConfig{};

  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (flags.input) config.input = *flags.input;
  if (flags.gazetteer) config.gazetteer = *flags.gazetteer;
  if (flags.labels) config.labels = *flags.labels;
  if (flags.min_n) config.repeat.min_n = *flags.min_n;
  if (flags.max_n) config.repeat.max_n = *flags.max_n;
  if (flags.min_words) config.min_words = *flags.min_words;
  if (flags.window) config.window = *flags.window;
  if (flags.max_pattern_len) config.max_pattern_len = *flags.max_pattern_len;
  if (flags.cell_width) config.svg.cell_width = *flags.cell_width;
  if (flags.strip_height) config.svg.strip_height = *flags.strip_height;
  if (given("--span-paragraphs")) config.repeat.span_paragraphs = flags.span_paragraphs;
  if (given("--strict-maximality")) config.repeat.strict_maximality = flags.strict_maximality;
  if (given("--case-fold")) config.tokenize.case_fold = flags.case_fold;
  if (given("--no-overlap")) config.repeat.count_overlapping = !flags.no_overlap;
  if (given("--exclude-punct")) config.repeat.include_punct = !flags.exclude_punct;
  if (given("--fragment-only")) config.fragment_only = flags.fragment_only;
  if (given("--timestamp")) config.timestamp = flags.timestamp;
  if (!flags.select.empty()) config.selected_components = flags.select;
  if (!flags.formats.empty()) {
    nlohmann::json formats = flags.formats;
    repetext::apply_config_json(config, {{"format", formats}});
  }
  if (flags.multi_policy) {
    auto policy = repetext::parse_multi_policy(*flags.multi_policy);
    if (!policy) throw UsageError("--multi-policy must be break or emit_all");
    config.run_policy.multi_policy = *policy;
  }
  if (flags.max_gap) {
    if (*flags.max_gap == "unbounded") {
      config.run_policy.max_gap.reset();
    } else {
      try {
        std::size_t used = 0;
        const auto gap = std::stoul(*flags.max_gap, &used);
        if (used != flags.max_gap->size()) throw std::invalid_argument("trailing");
        config.run_policy.max_gap = gap;
      } catch (const std::exception&) {
        throw UsageError("--max-gap must be a non-negative integer or \"unbounded\"");
      }
    }
  }

  if (flags.out) {
    config.out = *flags.out;
  } else if (config.out.empty()) {
    const char* env = std::getenv(std::string(repetext::kOutEnvVar).c_str());
    config.out = env && *env ? env : std::string(repetext::kDefaultOutDir);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface the repetition structure of a paragraph-segmented text"};
  app.set_version_flag("--version", std::string(repetext::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "JSON config file (keys mirror the long flag names)");
  app.add_option("--input", flags.input, "UTF-8 plain-text input");
  app.add_option("--out", flags.out, "Output directory (default $REPETEXT_OUT or ./repetext-out)");
  app.add_option("--gazetteer", flags.gazetteer, "Gazetteer JSON file");
  app.add_option("--labels", flags.labels, "Component labels JSON file");
  app.add_option("--min-n", flags.min_n, "Smallest n-gram length (>= 2)");
  app.add_option("--max-n", flags.max_n, "Largest n-gram length (<= 32)");
  app.add_flag("--span-paragraphs", flags.span_paragraphs, "Let n-grams cross paragraph boundaries");
  app.add_flag("--strict-maximality", flags.strict_maximality, "Keep shorter repeats that occur outside longer ones");
  app.add_flag("--no-overlap", flags.no_overlap, "Count only non-overlapping occurrences");
  app.add_flag("--exclude-punct", flags.exclude_punct, "Treat punctuation as an n-gram barrier");
  app.add_flag("--case-fold", flags.case_fold, "Case-fold tokens before matching n-grams");
  app.add_option("--min-words", flags.min_words, "Repeat-bearing paragraphs need a phrase with more words than this");
  app.add_flag("--fragment-only", flags.fragment_only, "Count co-mentions only inside repeated phrases");
  app.add_option("--window", flags.window, "Co-mention window used for sequencing (0 or 1)");
  app.add_option("--select", flags.select, "Components to sequence (display names or 1-based numbers)");
  app.add_option("--max-gap", flags.max_gap, "Widest unlabeled gap a run may span, or 'unbounded'");
  app.add_option("--multi-policy", flags.multi_policy, "break | emit_all");
  app.add_option("--max-pattern-len", flags.max_pattern_len, "Longest sequence pattern counted (>= 2)");
  app.add_option("--format", flags.formats, "Graph formats: dot, graphml, json, all");
  app.add_option("--cell-width", flags.cell_width, "Band plot cell width in px");
  app.add_option("--strip-height", flags.strip_height, "Band plot strip height in px");
  app.add_flag("--timestamp", flags.timestamp, "Record a timestamp in the report provenance");

  std::optional<repetext::Command> command;
  const std::vector<std::pair<std::string, std::string>> subcommands{
      {"stats", "Corpus statistics"},
      {"repeats", "Maximal repeated n-grams"},
      {"entities", "Gazetteer mentions and candidate entities"},
      {"graph", "Association graphs, components and PageRank"},
      {"sequences", "Network run sequences, pattern counts and band plots"},
      {"all", "Full pipeline and report"},
  };
  for (const auto& [name, description] : subcommands) {
    app.add_subcommand(name, description)->callback([&command, name = name] { command = repetext::parse_command(name); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto config = effective_config(app, flags);
    const auto result = repetext::run_command(*command, config);
    std::cout << result.report.text;
    for (const auto& name : result.written) std::cerr << "wrote " << config.out << "/" << name << "\n";
    return 0;
  } catch (const repetext::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const repetext::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
