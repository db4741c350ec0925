#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "repetext/corpus.hpp"

namespace repetext {

inline constexpr std::size_t kMaxNgram = 32;
inline constexpr std::size_t kOracleTokenLimit = 10'000;

struct RepeatConfig {
  std::size_t min_n = 2;
  std::size_t max_n = kMaxNgram;
  bool span_paragraphs = false;
  bool count_overlapping = true;
  // When false, punctuation tokens act as barriers: no n-gram contains one.
  bool include_punct = true;
  // Keep a shorter repeat if any of its occurrences lies outside every
  // occurrence of a longer repeat.
  bool strict_maximality = false;

  void validate() const;
  bool operator==(const RepeatConfig&) const = default;
};

struct Occurrence {
  std::size_t paragraph_idx = 0;
  std::size_t start_pos_in_paragraph = 0;
  std::size_t global_start = 0;
  // Last paragraph touched; differs from paragraph_idx only with span_paragraphs.
  std::size_t end_paragraph_idx = 0;

  bool operator==(const Occurrence&) const = default;
};

struct RepeatedPhrase {
  std::vector<std::string> tokens;
  std::size_t n = 0;
  std::size_t word_count = 0;  // tokens that are words, punctuation excluded
  std::vector<Occurrence> occurrences;
  std::size_t count = 0;

  std::string text() const;
  bool operator==(const RepeatedPhrase&) const = default;
};

struct RepeatSet {
  std::vector<RepeatedPhrase> phrases;
  RepeatConfig config;
  // Repeated n-grams found across all lengths before subsequence pruning.
  std::size_t unpruned_count = 0;
  // Largest n at which some repeat was found (0 if none).
  std::size_t longest_n = 0;

  bool operator==(const RepeatSet&) const = default;
};

// Unique maximal repeated n-grams of `corpus`, ordered by
// (n desc, count desc, first occurrence asc).
RepeatSet extract_repeats(const Corpus& corpus, const RepeatConfig& config = {});

// Same contract computed by direct enumeration of every n-gram. Refuses
// corpora above kOracleTokenLimit tokens with a GuardError.
RepeatSet oracle_repeats(const Corpus& corpus, const RepeatConfig& config = {});

std::set<std::size_t> paragraphs_with_repeats(const RepeatSet& repeat_set, std::size_t min_words);

std::vector<RepeatedPhrase> top_by_length(const RepeatSet& repeat_set, std::size_t k);
std::vector<RepeatedPhrase> top_by_frequency(const RepeatSet& repeat_set, std::size_t k);

// Canonical output order shared by both implementations.
void sort_phrases(std::vector<RepeatedPhrase>& phrases);

}  // namespace repetext
