#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace repetext {

struct TokenizeOptions {
  bool case_fold = false;

  bool operator==(const TokenizeOptions&) const = default;
};

struct Token {
  std::string surface;  // exact source bytes
  std::string norm;     // surface, case folded when requested
  std::size_t paragraph_idx = 0;
  std::size_t pos_in_paragraph = 0;
  std::size_t global_pos = 0;
  std::size_t byte_offset = 0;  // into the source text
  bool is_punct = false;
  bool is_word = false;

  bool operator==(const Token&) const = default;
};

struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const CharSpan&) const = default;
};

struct CorpusStats {
  std::size_t paragraph_count = 0;
  std::size_t sentence_count = 0;
  std::size_t word_count = 0;
  std::size_t token_count = 0;

  CorpusStats& operator+=(const CorpusStats& other);
  bool operator==(const CorpusStats&) const = default;
};

struct Paragraph {
  std::size_t idx = 0;
  std::vector<Token> tokens;
  std::size_t sentence_count = 0;
  CharSpan char_span;

  bool operator==(const Paragraph&) const = default;
};

class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Paragraph> paragraphs, std::string source_name, TokenizeOptions options);

  const std::vector<Paragraph>& paragraphs() const noexcept { return paragraphs_; }
  const CorpusStats& stats() const noexcept { return stats_; }
  const std::string& source_name() const noexcept { return source_name_; }
  const TokenizeOptions& options() const noexcept { return options_; }

  // Tokens in corpus order, i.e. indexed by global_pos.
  std::vector<const Token*> flat_tokens() const;

  bool operator==(const Corpus&) const = default;

 private:
  std::vector<Paragraph> paragraphs_;
  CorpusStats stats_;
  std::string source_name_;
  TokenizeOptions options_;
};

// Splits `text` into blank-line separated paragraphs and tokenizes each one.
// Throws EncodingError on malformed UTF-8 and EmptyCorpusError when no
// paragraph survives segmentation.
Corpus load_corpus(std::string_view text, const TokenizeOptions& options = {},
                   std::string source_name = "<memory>");

Corpus load_corpus_file(const std::string& path, const TokenizeOptions& options = {});

CorpusStats corpus_stats(const Corpus& corpus);
CorpusStats paragraph_stats(const Paragraph& paragraph);

// Tokenizes a single line of text (gazetteer aliases use this). Positions are
// relative to the fragment; paragraph_idx is 0.
std::vector<Token> tokenize_fragment(std::string_view text, const TokenizeOptions& options = {});

bool is_sentence_terminal(std::string_view surface);

// Unicode helpers shared with the entity module.
std::string fold_case(std::string_view utf8);
bool starts_with_uppercase(std::string_view utf8);

}  // namespace repetext
