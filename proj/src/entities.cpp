#include "repetext/entities.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "repetext/error.hpp"

namespace repetext {

std::optional<EntityCategory> parse_category(std::string_view name) {
  if (name == "person") return EntityCategory::person;
  if (name == "place") return EntityCategory::place;
  if (name == "org") return EntityCategory::org;
  if (name == "work") return EntityCategory::work;
  if (name == "other") return EntityCategory::other;
  return std::nullopt;
}

std::string_view to_string(EntityCategory category) {
  switch (category) {
    case EntityCategory::person: return "person";
    case EntityCategory::place: return "place";
    case EntityCategory::org: return "org";
    case EntityCategory::work: return "work";
    case EntityCategory::other: return "other";
  }
  return "other";
}

Gazetteer::Gazetteer(std::vector<Entity> entities, bool case_sensitive)
    : entities_(std::move(entities)), case_sensitive_(case_sensitive) {
  for (std::size_t idx = 0; idx < entities_.size(); ++idx) {
    auto& entity = entities_[idx];
    entity.id = static_cast<EntityId>(idx);
    if (entity.canonical.empty()) {
      throw FormatError("gazetteer entity #" + std::to_string(idx) + " has an empty canonical name");
    }

    std::vector<std::string> aliases{entity.canonical};
    for (const auto& alias : entity.aliases) {
      if (std::find(aliases.begin(), aliases.end(), alias) == aliases.end()) {
        aliases.push_back(alias);
      }
    }

    std::vector<std::string> kept;
    for (const auto& alias : aliases) {
      const auto tokens = tokenize_fragment(alias);
      const bool has_word = std::any_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_word; });
      if (!has_word) {
        throw FormatError("entity \"" + entity.canonical + "\" has an alias without any word token: \"" + alias + "\"");
      }
      std::vector<std::string> key;
      for (const auto& token : tokens) {
        key.push_back(match_key(token.surface));
      }
      auto [it, inserted] = alias_index_.try_emplace(key, entity.id);
      if (!inserted && it->second != entity.id) {
        throw CollisionError("alias \"" + alias + "\" is claimed by both \"" + entities_[it->second].canonical +
                             "\" and \"" + entity.canonical + "\"");
      }
      if (inserted) {
        kept.push_back(alias);
        longest_alias_ = std::max(longest_alias_, key.size());
      }
    }
    entity.aliases = std::move(kept);
  }
}

std::optional<EntityId> Gazetteer::find_by_canonical(std::string_view canonical) const {
  for (const auto& entity : entities_) {
    if (entity.canonical == canonical) {
      return entity.id;
    }
  }
  return std::nullopt;
}

std::string Gazetteer::match_key(std::string_view surface) const {
  return case_sensitive_ ? std::string(surface) : fold_case(surface);
}

Gazetteer parse_gazetteer(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("gazetteer is not valid JSON: ") + e.what());
  }

  bool case_sensitive = true;
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (doc.contains("case_sensitive")) {
      if (!doc["case_sensitive"].is_boolean()) {
        throw FormatError("gazetteer \"case_sensitive\" must be a boolean");
      }
      case_sensitive = doc["case_sensitive"].get<bool>();
    }
    if (!doc.contains("entities")) {
      throw FormatError("gazetteer object must contain an \"entities\" array");
    }
    list = &doc["entities"];
  }
  if (!list->is_array()) {
    throw FormatError("gazetteer must be a JSON array of entity objects");
  }

  std::vector<Entity> entities;
  for (const auto& item : *list) {
    if (!item.is_object() || !item.contains("canonical") || !item["canonical"].is_string()) {
      throw FormatError("each gazetteer entry needs a string \"canonical\" field");
    }
    Entity entity;
    entity.canonical = item["canonical"].get<std::string>();
    if (item.contains("aliases")) {
      if (!item["aliases"].is_array()) {
        throw FormatError("\"aliases\" of \"" + entity.canonical + "\" must be an array");
      }
      for (const auto& alias : item["aliases"]) {
        if (!alias.is_string() || alias.get<std::string>().empty()) {
          throw FormatError("\"" + entity.canonical + "\" has an empty or non-string alias");
        }
        entity.aliases.push_back(alias.get<std::string>());
      }
    }
    if (item.contains("category") && !item["category"].is_null()) {
      const auto name = item["category"].get<std::string>();
      entity.category = parse_category(name);
      if (!entity.category) {
        throw FormatError("unknown category \"" + name + "\" for \"" + entity.canonical + "\"");
      }
    }
    entities.push_back(std::move(entity));
  }
  return Gazetteer(std::move(entities), case_sensitive);
}

Gazetteer load_gazetteer(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open gazetteer: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_gazetteer(buffer.str());
}

std::vector<Mention> find_mentions(const Corpus& corpus, const Gazetteer& gazetteer) {
  std::vector<Mention> mentions;
  const auto& index = gazetteer.alias_index();
  if (index.empty()) {
    return mentions;
  }
  for (const auto& paragraph : corpus.paragraphs()) {
    std::vector<std::string> keys;
    keys.reserve(paragraph.tokens.size());
    for (const auto& token : paragraph.tokens) {
      keys.push_back(gazetteer.match_key(token.surface));
    }
    std::size_t i = 0;
    while (i < keys.size()) {
      std::size_t matched = 0;
      EntityId entity = 0;
      const std::size_t limit = std::min(gazetteer.longest_alias(), keys.size() - i);
      std::vector<std::string> probe(keys.begin() + static_cast<std::ptrdiff_t>(i),
                                     keys.begin() + static_cast<std::ptrdiff_t>(i + limit));
      for (std::size_t len = limit; len > 0; --len) {
        probe.resize(len);
        if (auto it = index.find(probe); it != index.end()) {
          matched = len;
          entity = it->second;
          break;
        }
      }
      if (matched == 0) {
        ++i;
        continue;
      }
      mentions.push_back({entity, paragraph.idx, {i, i + matched}, paragraph.tokens[i].global_pos});
      i += matched;
    }
  }
  return mentions;
}

const std::vector<std::string>& candidate_connectors() {
  static const std::vector<std::string> connectors{"de", "of", "van", "la", "the"};
  return connectors;
}

std::string Candidate::text() const {
  std::string joined;
  for (const auto& token : tokens) {
    if (!joined.empty()) joined += ' ';
    joined += token;
  }
  return joined;
}

namespace {

bool is_capitalized(const Token& token) { return token.is_word && starts_with_uppercase(token.surface); }

bool is_connector(const Token& token) {
  const auto& connectors = candidate_connectors();
  return token.is_word && std::find(connectors.begin(), connectors.end(), token.surface) != connectors.end();
}

// True when only non-terminal punctuation separates the token from the start
// of its paragraph or from a sentence terminal.
bool is_sentence_initial(const std::vector<Token>& tokens, std::size_t pos) {
  for (std::size_t k = pos; k-- > 0;) {
    if (tokens[k].is_word) return false;
    if (is_sentence_terminal(tokens[k].surface)) return true;
  }
  return true;
}

}  // namespace

std::vector<Candidate> candidate_entities(const Corpus& corpus) {
  std::map<std::vector<std::string>, std::pair<std::size_t, std::size_t>> seen;  // tokens -> (freq, first pos)
  for (const auto& paragraph : corpus.paragraphs()) {
    const auto& tokens = paragraph.tokens;
    std::size_t i = 0;
    while (i < tokens.size()) {
      if (!is_capitalized(tokens[i])) {
        ++i;
        continue;
      }
      std::size_t end = i + 1;
      while (true) {
        std::size_t probe = end;
        while (probe < tokens.size() && is_connector(tokens[probe])) ++probe;
        if (probe < tokens.size() && is_capitalized(tokens[probe])) {
          end = probe + 1;
        } else {
          break;
        }
      }
      const std::size_t length = end - i;
      const bool lone_initial = length == 1 && is_sentence_initial(tokens, i);
      const bool pronoun = length == 1 && tokens[i].surface == "I";
      if (!lone_initial && !pronoun) {
        std::vector<std::string> run;
        for (std::size_t k = i; k < end; ++k) run.push_back(tokens[k].surface);
        auto [it, inserted] = seen.try_emplace(std::move(run), 0, tokens[i].global_pos);
        ++it->second.first;
      }
      i = end;
    }
  }

  std::vector<std::pair<std::size_t, Candidate>> ordered;
  for (auto& [run, info] : seen) {
    ordered.push_back({info.second, Candidate{run, info.first}});
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.second.frequency != b.second.frequency) return a.second.frequency > b.second.frequency;
    return a.first < b.first;
  });
  std::vector<Candidate> candidates;
  candidates.reserve(ordered.size());
  for (auto& entry : ordered) candidates.push_back(std::move(entry.second));
  return candidates;
}

RepeatEntities entities_in_repeats(const std::vector<Mention>& mentions, const RepeatSet& repeat_set,
                                   std::size_t min_words) {
  const auto repeat_paragraphs = paragraphs_with_repeats(repeat_set, min_words);
  RepeatEntities result;
  for (const auto& mention : mentions) {
    if (repeat_paragraphs.count(mention.paragraph_idx) > 0) {
      result.entities.insert(mention.entity_id);
      result.paragraphs.insert(mention.paragraph_idx);
    }
  }
  return result;
}

std::vector<Mention> mentions_in_fragments(const std::vector<Mention>& mentions, const RepeatSet& repeat_set,
                                           std::size_t min_words) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // global [start, end)
  for (const auto& phrase : repeat_set.phrases) {
    if (phrase.word_count <= min_words) continue;
    for (const auto& occurrence : phrase.occurrences) {
      spans.emplace_back(occurrence.global_start, occurrence.global_start + phrase.n);
    }
  }
  std::sort(spans.begin(), spans.end());
  std::vector<std::size_t> reach(spans.size());
  for (std::size_t k = 0; k < spans.size(); ++k) {
    reach[k] = std::max(spans[k].second, k == 0 ? 0 : reach[k - 1]);
  }

  std::vector<Mention> inside;
  for (const auto& mention : mentions) {
    const std::size_t start = mention.global_start;
    const std::size_t end = start + (mention.token_span.end - mention.token_span.start);
    auto it = std::upper_bound(spans.begin(), spans.end(), std::make_pair(start, SIZE_MAX));
    if (it == spans.begin()) continue;
    const auto k = static_cast<std::size_t>(std::distance(spans.begin(), it)) - 1;
    if (reach[k] >= end) {
      inside.push_back(mention);
    }
  }
  return inside;
}

}  // namespace repetext
