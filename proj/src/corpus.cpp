#include "repetext/corpus.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <fstream>
#include <sstream>

#include "repetext/error.hpp"

namespace repetext {
namespace {

struct CodePoint {
  UChar32 value = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Decodes the code point starting at `offset`. Input must already be validated.
CodePoint decode_at(std::string_view text, std::size_t offset) {
  CodePoint cp;
  cp.begin = offset;
  int32_t i = static_cast<int32_t>(offset);
  U8_NEXT(reinterpret_cast<const uint8_t*>(text.data()), i, static_cast<int32_t>(text.size()), cp.value);
  cp.end = static_cast<std::size_t>(i);
  return cp;
}

void validate_utf8(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(INT32_MAX)) {
    throw InputError("input larger than 2 GiB is not supported");
  }
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      throw EncodingError(static_cast<std::size_t>(start), "malformed or truncated sequence");
    }
  }
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) || c == 0xFEFF; }

bool is_word_char(UChar32 c) { return u_isalnum(c) != 0; }

bool is_mark(UChar32 c) {
  const auto type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK || type == U_ENCLOSING_MARK;
}

// Apostrophes and hyphens are kept inside a word when flanked by word characters.
bool is_joiner(UChar32 c) { return c == '\'' || c == 0x2019 || c == '-' || c == 0x2010; }

void tokenize_range(std::string_view text, std::size_t begin, std::size_t end,
                    const TokenizeOptions& options, std::vector<Token>& out) {
  std::size_t offset = begin;
  while (offset < end) {
    CodePoint cp = decode_at(text, offset);
    if (is_space(cp.value)) {
      offset = cp.end;
      continue;
    }
    Token token;
    token.byte_offset = cp.begin;
    std::size_t token_end = cp.end;
    if (is_word_char(cp.value)) {
      token.is_word = true;
      while (token_end < end) {
        CodePoint next = decode_at(text, token_end);
        if (is_word_char(next.value) || is_mark(next.value)) {
          token_end = next.end;
          continue;
        }
        if (is_joiner(next.value) && next.end < end) {
          CodePoint after = decode_at(text, next.end);
          if (is_word_char(after.value)) {
            token_end = after.end;
            continue;
          }
        }
        break;
      }
    } else {
      token.is_punct = true;
    }
    token.surface = std::string(text.substr(cp.begin, token_end - cp.begin));
    token.norm = options.case_fold ? fold_case(token.surface) : token.surface;
    out.push_back(std::move(token));
    offset = token_end;
  }
}

std::size_t count_sentences(const std::vector<Token>& tokens) {
  std::size_t sentences = 0;
  bool has_word = false;
  bool previous_terminal = false;
  for (const auto& token : tokens) {
    has_word = has_word || token.is_word;
    const bool terminal = token.is_punct && is_sentence_terminal(token.surface);
    if (terminal && !previous_terminal) {
      ++sentences;
    }
    previous_terminal = terminal;
  }
  if (sentences == 0 && has_word) {
    return 1;
  }
  return sentences;
}

bool is_blank(std::string_view text, std::size_t begin, std::size_t end) {
  std::size_t offset = begin;
  while (offset < end) {
    CodePoint cp = decode_at(text, offset);
    if (!is_space(cp.value)) {
      return false;
    }
    offset = cp.end;
  }
  return true;
}

}  // namespace

CorpusStats& CorpusStats::operator+=(const CorpusStats& other) {
  paragraph_count += other.paragraph_count;
  sentence_count += other.sentence_count;
  word_count += other.word_count;
  token_count += other.token_count;
  return *this;
}

Corpus::Corpus(std::vector<Paragraph> paragraphs, std::string source_name, TokenizeOptions options)
    : paragraphs_(std::move(paragraphs)), source_name_(std::move(source_name)), options_(options) {
  stats_ = corpus_stats(*this);
}

std::vector<const Token*> Corpus::flat_tokens() const {
  std::vector<const Token*> flat;
  flat.reserve(stats_.token_count);
  for (const auto& paragraph : paragraphs_) {
    for (const auto& token : paragraph.tokens) {
      flat.push_back(&token);
    }
  }
  return flat;
}

bool is_sentence_terminal(std::string_view surface) {
  return surface == "." || surface == "!" || surface == "?" || surface == "…";
}

std::string fold_case(std::string_view utf8) {
  std::string folded;
  folded.reserve(utf8.size());
  std::size_t offset = 0;
  while (offset < utf8.size()) {
    CodePoint cp = decode_at(utf8, offset);
    UChar32 lower = u_foldCase(cp.value, U_FOLD_CASE_DEFAULT);
    uint8_t buffer[U8_MAX_LENGTH];
    int32_t length = 0;
    U8_APPEND_UNSAFE(buffer, length, lower);
    folded.append(reinterpret_cast<const char*>(buffer), static_cast<std::size_t>(length));
    offset = cp.end;
  }
  return folded;
}

bool starts_with_uppercase(std::string_view utf8) {
  if (utf8.empty()) {
    return false;
  }
  CodePoint cp = decode_at(utf8, 0);
  return u_isupper(cp.value) || u_istitle(cp.value);
}

std::vector<Token> tokenize_fragment(std::string_view text, const TokenizeOptions& options) {
  validate_utf8(text);
  std::vector<Token> tokens;
  tokenize_range(text, 0, text.size(), options, tokens);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    tokens[i].pos_in_paragraph = i;
    tokens[i].global_pos = i;
  }
  return tokens;
}

Corpus load_corpus(std::string_view text, const TokenizeOptions& options, std::string source_name) {
  validate_utf8(text);

  std::vector<Paragraph> paragraphs;
  std::size_t global_pos = 0;
  std::size_t block_begin = std::string_view::npos;
  std::size_t block_end = 0;

  auto flush_block = [&]() {
    if (block_begin == std::string_view::npos) {
      return;
    }
    Paragraph paragraph;
    paragraph.idx = paragraphs.size();
    tokenize_range(text, block_begin, block_end, options, paragraph.tokens);
    block_begin = std::string_view::npos;
    if (paragraph.tokens.empty()) {
      return;
    }
    for (std::size_t i = 0; i < paragraph.tokens.size(); ++i) {
      auto& token = paragraph.tokens[i];
      token.paragraph_idx = paragraph.idx;
      token.pos_in_paragraph = i;
      token.global_pos = global_pos++;
    }
    const auto& last = paragraph.tokens.back();
    paragraph.char_span = {paragraph.tokens.front().byte_offset, last.byte_offset + last.surface.size()};
    paragraph.sentence_count = count_sentences(paragraph.tokens);
    paragraphs.push_back(std::move(paragraph));
  };

  std::size_t line_begin = 0;
  while (line_begin <= text.size()) {
    std::size_t newline = text.find('\n', line_begin);
    const std::size_t line_end = newline == std::string_view::npos ? text.size() : newline;
    if (is_blank(text, line_begin, line_end)) {
      flush_block();
    } else {
      if (block_begin == std::string_view::npos) {
        block_begin = line_begin;
      }
      block_end = line_end;
    }
    if (newline == std::string_view::npos) {
      break;
    }
    line_begin = newline + 1;
  }
  flush_block();

  if (paragraphs.empty()) {
    throw EmptyCorpusError();
  }
  return Corpus(std::move(paragraphs), std::move(source_name), options);
}

Corpus load_corpus_file(const std::string& path, const TokenizeOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open input file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_corpus(buffer.str(), options, path);
}

CorpusStats paragraph_stats(const Paragraph& paragraph) {
  CorpusStats stats;
  stats.paragraph_count = 1;
  stats.sentence_count = paragraph.sentence_count;
  stats.token_count = paragraph.tokens.size();
  for (const auto& token : paragraph.tokens) {
    stats.word_count += token.is_word ? 1 : 0;
  }
  return stats;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats total;
  for (const auto& paragraph : corpus.paragraphs()) {
    total += paragraph_stats(paragraph);
  }
  return total;
}

}  // namespace repetext
