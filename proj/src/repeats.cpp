#include "repetext/repeats.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "repetext/error.hpp"

namespace repetext {
namespace {

constexpr std::int32_t kNone = -1;

// Token stream over the whole corpus with per-position segment limits. A
// window [i, i + n) is valid iff i + n <= segment_end[i].
struct Stream {
  std::vector<const Token*> tokens;
  std::vector<std::uint32_t> ids;
  std::vector<std::uint32_t> segment_end;
};

Stream build_stream(const Corpus& corpus, const RepeatConfig& config) {
  Stream stream;
  stream.tokens = corpus.flat_tokens();
  const auto size = stream.tokens.size();
  stream.ids.resize(size);
  stream.segment_end.resize(size);

  std::unordered_map<std::string, std::uint32_t> vocabulary;
  for (std::size_t i = 0; i < size; ++i) {
    auto [it, inserted] = vocabulary.try_emplace(stream.tokens[i]->norm, static_cast<std::uint32_t>(vocabulary.size()));
    stream.ids[i] = it->second;
  }

  auto is_barrier = [&](std::size_t i) { return !config.include_punct && stream.tokens[i]->is_punct; };
  std::size_t end = size;
  for (std::size_t k = size; k-- > 0;) {
    if (is_barrier(k)) {
      stream.segment_end[k] = static_cast<std::uint32_t>(k);
      end = k;
      continue;
    }
    if (k + 1 < size && !config.span_paragraphs &&
        stream.tokens[k + 1]->paragraph_idx != stream.tokens[k]->paragraph_idx) {
      end = k + 1;
    }
    stream.segment_end[k] = static_cast<std::uint32_t>(end);
  }
  return stream;
}

// Equivalence classes of all length-n windows that occur at least twice.
struct Level {
  std::size_t n = 0;
  std::vector<std::int32_t> cls;           // per position, kNone if inactive
  std::vector<std::uint32_t> active;       // ascending positions with a class
  std::vector<std::vector<std::uint32_t>> positions;  // per class, ascending
  std::vector<std::vector<std::uint32_t>> recorded;   // occurrences under the count mode
  std::vector<bool> repeated;                         // recorded.size() >= 2
  std::size_t repeated_count = 0;
};

Level initial_level(const Stream& stream) {
  Level level;
  level.n = 1;
  level.cls.assign(stream.ids.size(), kNone);
  for (std::size_t i = 0; i < stream.ids.size(); ++i) {
    if (stream.segment_end[i] > i) {
      level.cls[i] = static_cast<std::int32_t>(stream.ids[i]);
      level.active.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return level;
}

Level extend(const Stream& stream, const Level& previous, bool count_overlapping) {
  Level next;
  next.n = previous.n + 1;
  next.cls.assign(stream.ids.size(), kNone);

  std::unordered_map<std::uint64_t, std::int32_t> classes;
  classes.reserve(previous.active.size());
  std::vector<std::uint32_t> window_counts;
  std::vector<std::uint32_t> candidates;
  candidates.reserve(previous.active.size());
  for (std::uint32_t i : previous.active) {
    if (i + previous.n >= stream.segment_end[i]) {
      continue;
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(previous.cls[i]) << 32) | stream.ids[i + previous.n];
    auto [it, inserted] = classes.try_emplace(key, static_cast<std::int32_t>(window_counts.size()));
    if (inserted) {
      window_counts.push_back(0);
    }
    ++window_counts[it->second];
    next.cls[i] = it->second;
    candidates.push_back(i);
  }

  // Renumber the classes that occur at least twice, in order of first position.
  std::vector<std::int32_t> renumber(window_counts.size(), kNone);
  for (std::uint32_t i : candidates) {
    const auto raw = next.cls[i];
    if (window_counts[raw] < 2) {
      next.cls[i] = kNone;
      continue;
    }
    if (renumber[raw] == kNone) {
      renumber[raw] = static_cast<std::int32_t>(next.positions.size());
      next.positions.emplace_back();
    }
    next.cls[i] = renumber[raw];
    next.positions[renumber[raw]].push_back(i);
    next.active.push_back(i);
  }

  next.recorded.resize(next.positions.size());
  next.repeated.resize(next.positions.size());
  for (std::size_t c = 0; c < next.positions.size(); ++c) {
    if (count_overlapping) {
      next.recorded[c] = next.positions[c];
    } else {
      std::size_t last_end = 0;
      for (std::uint32_t p : next.positions[c]) {
        if (next.recorded[c].empty() || p >= last_end) {
          next.recorded[c].push_back(p);
          last_end = p + next.n;
        }
      }
    }
    next.repeated[c] = next.recorded[c].size() >= 2;
    next.repeated_count += next.repeated[c] ? 1 : 0;
  }
  return next;
}

bool repeated_at(const Level& level, std::int64_t position) {
  if (position < 0) {
    return false;
  }
  const auto c = level.cls[static_cast<std::size_t>(position)];
  return c != kNone && level.repeated[c];
}

// Marks which repeated classes of `level` are absorbed by repeats of `longer`.
std::vector<bool> pruned_classes(const Level& level, const Level* longer, bool strict) {
  std::vector<bool> pruned(level.positions.size(), false);
  if (longer == nullptr) {
    return pruned;
  }
  if (!strict) {
    for (std::size_t c = 0; c < longer->positions.size(); ++c) {
      if (!longer->repeated[c]) {
        continue;
      }
      const std::uint32_t p = longer->positions[c].front();
      pruned[level.cls[p]] = true;
      pruned[level.cls[p + 1]] = true;
    }
    return pruned;
  }
  for (std::size_t c = 0; c < level.positions.size(); ++c) {
    if (!level.repeated[c]) {
      continue;
    }
    pruned[c] = std::all_of(level.recorded[c].begin(), level.recorded[c].end(), [&](std::uint32_t s) {
      return repeated_at(*longer, s) || repeated_at(*longer, static_cast<std::int64_t>(s) - 1);
    });
  }
  return pruned;
}

RepeatedPhrase make_phrase(const Stream& stream, std::size_t n, const std::vector<std::uint32_t>& recorded) {
  RepeatedPhrase phrase;
  phrase.n = n;
  const std::size_t first = recorded.front();
  for (std::size_t k = 0; k < n; ++k) {
    const Token* token = stream.tokens[first + k];
    phrase.tokens.push_back(token->norm);
    phrase.word_count += token->is_word ? 1 : 0;
  }
  for (std::uint32_t start : recorded) {
    const Token* head = stream.tokens[start];
    phrase.occurrences.push_back(
        {head->paragraph_idx, head->pos_in_paragraph, head->global_pos, stream.tokens[start + n - 1]->paragraph_idx});
  }
  phrase.count = phrase.occurrences.size();
  return phrase;
}

void emit(const Stream& stream, const Level& level, const Level* longer, bool strict, RepeatSet& out) {
  const auto pruned = pruned_classes(level, longer, strict);
  for (std::size_t c = 0; c < level.positions.size(); ++c) {
    if (level.repeated[c] && !pruned[c]) {
      out.phrases.push_back(make_phrase(stream, level.n, level.recorded[c]));
    }
  }
}

}  // namespace

void RepeatConfig::validate() const {
  if (min_n < 2 || min_n > max_n || max_n > kMaxNgram) {
    throw ParameterError("n-gram bounds must satisfy 2 <= min_n <= max_n <= 32 (got min_n=" + std::to_string(min_n) +
                         ", max_n=" + std::to_string(max_n) + ")");
  }
}

std::string RepeatedPhrase::text() const {
  std::string joined;
  for (const auto& token : tokens) {
    if (!joined.empty()) {
      joined += ' ';
    }
    joined += token;
  }
  return joined;
}

void sort_phrases(std::vector<RepeatedPhrase>& phrases) {
  std::sort(phrases.begin(), phrases.end(), [](const RepeatedPhrase& a, const RepeatedPhrase& b) {
    if (a.n != b.n) return a.n > b.n;
    if (a.count != b.count) return a.count > b.count;
    return a.occurrences.front().global_start < b.occurrences.front().global_start;
  });
}

RepeatSet extract_repeats(const Corpus& corpus, const RepeatConfig& config) {
  config.validate();
  RepeatSet result;
  result.config = config;

  const Stream stream = build_stream(corpus, config);
  Level level = initial_level(stream);
  while (level.n < config.min_n && !level.active.empty()) {
    level = extend(stream, level, config.count_overlapping);
  }
  if (level.n < config.min_n || level.repeated_count == 0) {
    return result;
  }

  while (true) {
    result.unpruned_count += level.repeated_count;
    result.longest_n = level.n;
    if (level.n == config.max_n) {
      emit(stream, level, nullptr, config.strict_maximality, result);
      break;
    }
    Level longer = extend(stream, level, config.count_overlapping);
    if (longer.repeated_count == 0) {
      emit(stream, level, nullptr, config.strict_maximality, result);
      break;
    }
    emit(stream, level, &longer, config.strict_maximality, result);
    level = std::move(longer);
  }

  sort_phrases(result.phrases);
  return result;
}

std::set<std::size_t> paragraphs_with_repeats(const RepeatSet& repeat_set, std::size_t min_words) {
  std::set<std::size_t> paragraphs;
  for (const auto& phrase : repeat_set.phrases) {
    if (phrase.word_count <= min_words) {
      continue;
    }
    for (const auto& occurrence : phrase.occurrences) {
      for (std::size_t p = occurrence.paragraph_idx; p <= occurrence.end_paragraph_idx; ++p) {
        paragraphs.insert(p);
      }
    }
  }
  return paragraphs;
}

namespace {

std::vector<RepeatedPhrase> top_by(const RepeatSet& repeat_set, std::size_t k, bool by_length) {
  std::vector<RepeatedPhrase> sorted = repeat_set.phrases;
  std::stable_sort(sorted.begin(), sorted.end(), [by_length](const RepeatedPhrase& a, const RepeatedPhrase& b) {
    const auto primary_a = by_length ? a.n : a.count;
    const auto primary_b = by_length ? b.n : b.count;
    if (primary_a != primary_b) return primary_a > primary_b;
    const auto secondary_a = by_length ? a.count : a.n;
    const auto secondary_b = by_length ? b.count : b.n;
    if (secondary_a != secondary_b) return secondary_a > secondary_b;
    return a.occurrences.front().global_start < b.occurrences.front().global_start;
  });
  sorted.resize(std::min(k, sorted.size()));
  return sorted;
}

}  // namespace

std::vector<RepeatedPhrase> top_by_length(const RepeatSet& repeat_set, std::size_t k) {
  return top_by(repeat_set, k, true);
}

std::vector<RepeatedPhrase> top_by_frequency(const RepeatSet& repeat_set, std::size_t k) {
  return top_by(repeat_set, k, false);
}

}  // namespace repetext
