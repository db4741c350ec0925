// Reference implementation of repeat extraction by exhaustive enumeration.
// It shares nothing with extract_repeats beyond the output ordering and is
// meant for verification on small corpora only.

#include <map>
#include <unordered_set>

#include "repetext/error.hpp"
#include "repetext/repeats.hpp"

namespace repetext {
namespace {

using Gram = std::vector<std::string>;

struct Candidate {
  Gram gram;
  std::vector<std::size_t> windows;   // every window start
  std::vector<std::size_t> recorded;  // starts counted under the config
};

std::string join_key(Gram::const_iterator begin, Gram::const_iterator end) {
  std::string key;
  for (auto it = begin; it != end; ++it) {
    key += *it;
    key += '\x1f';
  }
  return key;
}

}  // namespace

RepeatSet oracle_repeats(const Corpus& corpus, const RepeatConfig& config) {
  config.validate();
  if (corpus.stats().token_count > kOracleTokenLimit) {
    throw GuardError("oracle_repeats supports at most " + std::to_string(kOracleTokenLimit) + " tokens (got " +
                     std::to_string(corpus.stats().token_count) + ")");
  }

  const auto tokens = corpus.flat_tokens();

  // Maximal token ranges an n-gram may lie in.
  std::vector<std::vector<std::size_t>> segments;
  std::vector<std::size_t> current;
  std::size_t current_paragraph = 0;
  for (const Token* token : tokens) {
    if (!config.span_paragraphs && token->paragraph_idx != current_paragraph) {
      if (!current.empty()) segments.push_back(current);
      current.clear();
      current_paragraph = token->paragraph_idx;
    }
    if (!config.include_punct && token->is_punct) {
      if (!current.empty()) segments.push_back(current);
      current.clear();
      continue;
    }
    current.push_back(token->global_pos);
  }
  if (!current.empty()) segments.push_back(current);

  std::vector<Candidate> repeats;
  for (std::size_t n = config.min_n; n <= config.max_n; ++n) {
    std::map<Gram, std::vector<std::size_t>> windows;
    for (const auto& segment : segments) {
      for (std::size_t a = 0; a + n <= segment.size(); ++a) {
        Gram gram;
        for (std::size_t k = 0; k < n; ++k) {
          gram.push_back(tokens[segment[a + k]]->norm);
        }
        windows[gram].push_back(segment[a]);
      }
    }
    bool found = false;
    for (auto& [gram, starts] : windows) {
      std::sort(starts.begin(), starts.end());
      std::vector<std::size_t> recorded;
      for (std::size_t s : starts) {
        if (config.count_overlapping || recorded.empty() || s >= recorded.back() + n) {
          recorded.push_back(s);
        }
      }
      if (recorded.size() >= 2) {
        repeats.push_back({gram, starts, recorded});
        found = true;
      }
    }
    if (!found) {
      break;
    }
  }

  RepeatSet result;
  result.config = config;
  result.unpruned_count = repeats.size();
  for (const auto& candidate : repeats) {
    result.longest_n = std::max(result.longest_n, candidate.gram.size());
  }

  std::vector<bool> discard(repeats.size(), false);
  if (!config.strict_maximality) {
    std::unordered_set<std::string> inside_longer;
    for (const auto& candidate : repeats) {
      const auto& gram = candidate.gram;
      for (std::size_t a = 0; a < gram.size(); ++a) {
        for (std::size_t b = a + 1; b <= gram.size(); ++b) {
          if (b - a < gram.size()) {
            inside_longer.insert(join_key(gram.begin() + a, gram.begin() + b));
          }
        }
      }
    }
    for (std::size_t i = 0; i < repeats.size(); ++i) {
      discard[i] = inside_longer.count(join_key(repeats[i].gram.begin(), repeats[i].gram.end())) > 0;
    }
  } else {
    for (std::size_t i = 0; i < repeats.size(); ++i) {
      const std::size_t n = repeats[i].gram.size();
      bool all_covered = true;
      for (std::size_t s : repeats[i].recorded) {
        bool covered = false;
        for (const auto& other : repeats) {
          const std::size_t m = other.gram.size();
          if (m <= n) continue;
          for (std::size_t t : other.windows) {
            if (t <= s && s + n <= t + m) {
              covered = true;
              break;
            }
          }
          if (covered) break;
        }
        if (!covered) {
          all_covered = false;
          break;
        }
      }
      discard[i] = all_covered;
    }
  }

  for (std::size_t i = 0; i < repeats.size(); ++i) {
    if (discard[i]) continue;
    const auto& candidate = repeats[i];
    RepeatedPhrase phrase;
    phrase.tokens = candidate.gram;
    phrase.n = candidate.gram.size();
    for (std::size_t k = 0; k < phrase.n; ++k) {
      phrase.word_count += tokens[candidate.recorded.front() + k]->is_word ? 1 : 0;
    }
    for (std::size_t s : candidate.recorded) {
      phrase.occurrences.push_back(
          {tokens[s]->paragraph_idx, tokens[s]->pos_in_paragraph, s, tokens[s + phrase.n - 1]->paragraph_idx});
    }
    phrase.count = phrase.occurrences.size();
    result.phrases.push_back(std::move(phrase));
  }
  sort_phrases(result.phrases);
  return result;
}

}  // namespace repetext
