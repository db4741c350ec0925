#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "repetext/export.hpp"

namespace repetext {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kOutEnvVar = "REPETEXT_OUT";
inline constexpr std::string_view kDefaultOutDir = "repetext-out";

struct RunConfig {
  std::string input;
  std::optional<std::string> gazetteer;
  std::optional<std::string> labels;
  std::string out;

  TokenizeOptions tokenize;
  RepeatConfig repeat;
  std::size_t min_words = 3;

  // Count co-mentions only inside repeated-phrase occurrences rather than
  // across whole repeat-bearing paragraphs.
  bool fragment_only = false;
  int window = 0;

  std::vector<std::string> selected_components;  // names or 1-based numbers
  RunPolicy run_policy;
  std::size_t max_pattern_len = 10;

  std::vector<GraphFormat> formats{GraphFormat::dot, GraphFormat::graphml, GraphFormat::json};
  std::map<std::string, std::string> color_map;
  SvgOptions svg;
  bool timestamp = false;

  // Throws UsageError for bad bounds and InputError for missing files.
  void validate() const;
  nlohmann::json to_json() const;
};

// Overlays the keys of a JSON config document onto `config`. Unknown keys
// are a UsageError.
void apply_config_json(RunConfig& config, const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

enum class Command { stats, repeats, entities, graph, sequences, all };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);

struct CommandResult {
  Report report;
  std::vector<std::string> written;  // paths relative to the output directory
};

// Runs `command` and every stage it depends on, writing artifacts into
// config.out. Repeat extraction results are cached under config.out/.cache
// keyed by a hash of the input bytes and the tokenize/repeat settings.
CommandResult run_command(Command command, const RunConfig& config);

}  // namespace repetext
