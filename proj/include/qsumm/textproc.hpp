#pragma once

// Sentence splitting, tokenization, stopword removal and stemming.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qsumm/error.hpp"
#include "qsumm/porter.hpp"

namespace qsumm {

using Tokens = std::vector<std::string>;

struct Sentence {
  std::size_t index = 0;  // 0-based position within its source text
  std::size_t begin = 0;  // byte span [begin, end) of raw in the source
  std::size_t end = 0;
  std::string raw;
  Tokens tokens;  // lowercase words
  Tokens stems;   // tokens minus stopwords, Porter-stemmed
};

struct TokenizedText {
  std::string raw;
  std::vector<Sentence> sentences;
};

// Classic 127-word English stopword list. Mirrors data/stopwords_en.txt.
inline constexpr std::array<std::string_view, 127> kDefaultStopwords{
    "i",          "me",       "my",      "myself",     "we",
    "our",        "ours",     "ourselves", "you",      "your",
    "yours",      "yourself", "yourselves", "he",      "him",
    "his",        "himself",  "she",     "her",        "hers",
    "herself",    "it",       "its",     "itself",     "they",
    "them",       "their",    "theirs",  "themselves", "what",
    "which",      "who",      "whom",    "this",       "that",
    "these",      "those",    "am",      "is",         "are",
    "was",        "were",     "be",      "been",       "being",
    "have",       "has",      "had",     "having",     "do",
    "does",       "did",      "doing",   "a",          "an",
    "the",        "and",      "but",     "if",         "or",
    "because",    "as",       "until",   "while",      "of",
    "at",         "by",       "for",     "with",       "about",
    "against",    "between",  "into",    "through",    "during",
    "before",     "after",    "above",   "below",      "to",
    "from",       "up",       "down",    "in",         "out",
    "on",         "off",      "over",    "under",      "again",
    "further",    "then",     "once",    "here",       "there",
    "when",       "where",    "why",     "how",        "all",
    "any",        "both",     "each",    "few",        "more",
    "most",       "other",    "some",    "such",       "no",
    "nor",        "not",      "only",    "own",        "same",
    "so",         "than",     "too",     "very",       "s",
    "t",          "can",      "will",    "just",       "don",
    "should",     "now"};

// Abbreviations whose trailing period never ends a sentence. Mirrors
// data/abbreviations_en.txt.
inline constexpr std::array<std::string_view, 36> kDefaultAbbreviations{
    "e.g.",  "i.e.",  "et al.", "etc.", "vs.",   "cf.",  "approx.", "ca.",
    "dr.",   "mr.",   "mrs.",   "ms.",  "prof.", "fig.", "figs.",   "eq.",
    "vol.",  "resp.", "st.",    "sp.",  "spp.",  "inc.", "ltd.",    "co.",
    "jan.",  "feb.",  "mar.",   "apr.", "jun.",  "jul.", "aug.",    "sep.",
    "sept.", "oct.",  "nov.",   "dec."};

/// Reads a one-entry-per-line list. Blank lines and lines starting with '#'
/// are skipped; entries are trimmed and lowercased.
inline std::vector<std::string> read_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileUnreadable("cannot open word list: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string entry = line.substr(b, e - b + 1);
    for (auto& c : entry)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(std::move(entry));
  }
  return out;
}

namespace textproc_detail {

inline bool is_word_byte(unsigned char c) {
  // Non-ASCII bytes stay inside words so UTF-8 letters (alpha, beta, ...)
  // are never split apart.
  return std::isalnum(c) || c >= 0x80;
}

inline bool is_space(unsigned char c) { return std::isspace(c) != 0; }

inline bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

inline bool is_opener(char c) {
  return c == '"' || c == '\'' || c == '(' || c == '[';
}

inline bool starts_sentence(unsigned char c) {
  return std::isupper(c) || std::isdigit(c);
}

inline bool ieq_suffix(std::string_view text, std::size_t end,
                       std::string_view entry) {
  if (entry.size() > end) return false;
  const std::size_t start = end - entry.size();
  for (std::size_t i = 0; i < entry.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[start + i]);
    if (static_cast<char>(std::tolower(c)) != entry[i]) return false;
  }
  return start == 0 || !is_word_byte(static_cast<unsigned char>(text[start - 1]));
}

}  // namespace textproc_detail

/// Lowercases and splits on every non-alphanumeric byte.
inline Tokens tokenize(std::string_view text) {
  Tokens out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (textproc_detail::is_word_byte(c)) {
      cur.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::string stem(std::string_view token) { return porter_stem(token); }

class StopwordList {
 public:
  StopwordList() {
    for (auto w : kDefaultStopwords) words_.emplace(w);
  }
  explicit StopwordList(std::span<const std::string> words)
      : words_(words.begin(), words.end()) {}

  static StopwordList from_file(const std::string& path) {
    auto words = read_word_list(path);
    return StopwordList(words);
  }

  bool contains(std::string_view w) const {
    return words_.count(std::string(w)) != 0;
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

class AbbreviationList {
 public:
  AbbreviationList()
      : entries_(kDefaultAbbreviations.begin(), kDefaultAbbreviations.end()) {}
  explicit AbbreviationList(std::vector<std::string> entries)
      : entries_(std::move(entries)) {}

  static AbbreviationList from_file(const std::string& path) {
    return AbbreviationList(read_word_list(path));
  }

  /// True when text[0, end) finishes with a listed abbreviation.
  bool ends_with_abbreviation(std::string_view text, std::size_t end) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) {
      return textproc_detail::ieq_suffix(text, end, e);
    });
  }

  const std::vector<std::string>& entries() const { return entries_; }

 private:
  std::vector<std::string> entries_;
};

inline Tokens remove_stopwords(std::span<const std::string> tokens,
                               const StopwordList& stopwords = {}) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!stopwords.contains(t)) out.push_back(t);
  return out;
}

struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Rule-based splitter: a sentence ends at '.', '!' or '?' (plus any closing
/// quotes/brackets) followed by whitespace and an uppercase letter or digit,
/// optionally behind an opening quote/bracket. A '.' that closes a listed
/// abbreviation never ends a sentence. Spans are trimmed; spans without any
/// word token are dropped.
inline std::vector<SentenceSpan> split_sentence_spans(
    std::string_view text, const AbbreviationList& abbreviations = {}) {
  using namespace textproc_detail;
  std::vector<SentenceSpan> spans;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && is_space(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && is_space(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b == e) return;
    const auto piece = text.substr(b, e - b);
    if (std::none_of(piece.begin(), piece.end(), [](char c) {
          return is_word_byte(static_cast<unsigned char>(c));
        }))
      return;
    spans.push_back({b, e});
  };

  std::size_t start = 0;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    while (j < n && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
    while (j < n && is_closer(text[j])) ++j;
    const std::size_t end = j;
    if (j >= n || !is_space(static_cast<unsigned char>(text[j]))) continue;
    while (j < n && is_space(static_cast<unsigned char>(text[j]))) ++j;
    std::size_t k = j;
    while (k < n && is_opener(text[k])) ++k;
    if (k >= n || !starts_sentence(static_cast<unsigned char>(text[k]))) continue;
    if (c == '.' && abbreviations.ends_with_abbreviation(text, i + 1)) continue;
    emit(start, end);
    start = j;
    i = j - 1;
  }
  emit(start, n);
  return spans;
}

/// Splits and tokenizes with the default stopword list and abbreviations.
class Preprocessor {
 public:
  Preprocessor() = default;
  Preprocessor(StopwordList stopwords, AbbreviationList abbreviations)
      : stopwords_(std::move(stopwords)),
        abbreviations_(std::move(abbreviations)) {}

  const StopwordList& stopwords() const { return stopwords_; }
  const AbbreviationList& abbreviations() const { return abbreviations_; }

  std::vector<SentenceSpan> split_spans(std::string_view text) const {
    return split_sentence_spans(text, abbreviations_);
  }

  Tokens content_stems(std::span<const std::string> tokens) const {
    Tokens out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
      if (!stopwords_.contains(t)) out.push_back(stem(t));
    return out;
  }

  /// Stems of every token, stopwords kept. This is the ROUGE unit stream.
  static Tokens all_stems(std::span<const std::string> tokens) {
    Tokens out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(stem(t));
    return out;
  }

  Sentence make_sentence(std::string_view raw, std::size_t index = 0,
                         std::size_t begin = 0) const {
    Sentence s;
    s.index = index;
    s.begin = begin;
    s.end = begin + raw.size();
    s.raw = std::string(raw);
    s.tokens = tokenize(raw);
    s.stems = content_stems(s.tokens);
    return s;
  }

  TokenizedText process(std::string_view text) const {
    TokenizedText out;
    out.raw = std::string(text);
    for (const auto& sp : split_spans(text)) {
      out.sentences.push_back(make_sentence(
          text.substr(sp.begin, sp.end - sp.begin), out.sentences.size(),
          sp.begin));
    }
    return out;
  }

  /// Content stems of a whole text, sentence boundaries ignored.
  Tokens text_stems(std::string_view text) const {
    return content_stems(tokenize(text));
  }

  /// ROUGE units of a text, one token list per sentence.
  std::vector<Tokens> rouge_sentences(std::string_view text) const {
    std::vector<Tokens> out;
    for (const auto& sp : split_spans(text))
      out.push_back(all_stems(tokenize(text.substr(sp.begin, sp.end - sp.begin))));
    return out;
  }

 private:
  StopwordList stopwords_;
  AbbreviationList abbreviations_;
};

inline std::vector<Sentence> split_sentences(std::string_view text,
                                             const Preprocessor& pre = {}) {
  return pre.process(text).sentences;
}

}  // namespace qsumm
