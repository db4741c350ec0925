#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repetext/corpus.hpp"
#include "repetext/repeats.hpp"

namespace repetext {

using EntityId = std::uint32_t;

enum class EntityCategory { person, place, org, work, other };

std::optional<EntityCategory> parse_category(std::string_view name);
std::string_view to_string(EntityCategory category);

struct Entity {
  EntityId id = 0;
  std::string canonical;
  std::vector<std::string> aliases;  // includes canonical
  std::optional<EntityCategory> category;

  bool operator==(const Entity&) const = default;
};

class Gazetteer {
 public:
  Gazetteer() = default;
  // Builds the alias index. Throws CollisionError when one alias belongs to two
  // entities and FormatError for aliases without a word token.
  Gazetteer(std::vector<Entity> entities, bool case_sensitive = true);

  const std::vector<Entity>& entities() const noexcept { return entities_; }
  bool case_sensitive() const noexcept { return case_sensitive_; }
  const Entity& entity(EntityId id) const { return entities_.at(id); }
  std::optional<EntityId> find_by_canonical(std::string_view canonical) const;

  // Token-sequence key to entity id.
  const std::map<std::vector<std::string>, EntityId>& alias_index() const noexcept { return alias_index_; }
  std::size_t longest_alias() const noexcept { return longest_alias_; }

  // Key used for matching a corpus token against alias tokens.
  std::string match_key(std::string_view surface) const;

 private:
  std::vector<Entity> entities_;
  std::map<std::vector<std::string>, EntityId> alias_index_;
  std::size_t longest_alias_ = 0;
  bool case_sensitive_ = true;
};

// Accepts either a JSON array of {"canonical", "aliases", "category"} objects
// or an object {"case_sensitive": bool, "entities": [...]}.
Gazetteer parse_gazetteer(std::string_view json_text);
Gazetteer load_gazetteer(const std::string& path);

struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  bool operator==(const TokenSpan&) const = default;
};

struct Mention {
  EntityId entity_id = 0;
  std::size_t paragraph_idx = 0;
  TokenSpan token_span;
  std::size_t global_start = 0;

  bool operator==(const Mention&) const = default;
};

// Left-to-right, longest-match-wins, non-overlapping scan of every paragraph.
// Ordered by (paragraph_idx, start).
std::vector<Mention> find_mentions(const Corpus& corpus, const Gazetteer& gazetteer);

struct Candidate {
  std::vector<std::string> tokens;
  std::size_t frequency = 0;

  std::string text() const;
  bool operator==(const Candidate&) const = default;
};

// Runs of capitalized words, possibly joined by lowercase connectors, as a
// gazetteer authoring aid. Sorted by frequency desc, then first appearance.
std::vector<Candidate> candidate_entities(const Corpus& corpus);

const std::vector<std::string>& candidate_connectors();

struct RepeatEntities {
  std::set<EntityId> entities;
  std::set<std::size_t> paragraphs;

  bool operator==(const RepeatEntities&) const = default;
};

RepeatEntities entities_in_repeats(const std::vector<Mention>& mentions, const RepeatSet& repeat_set,
                                   std::size_t min_words);

// Mentions lying wholly inside an occurrence of a repeated phrase with more
// than `min_words` words.
std::vector<Mention> mentions_in_fragments(const std::vector<Mention>& mentions, const RepeatSet& repeat_set,
                                           std::size_t min_words);

}  // namespace repetext
