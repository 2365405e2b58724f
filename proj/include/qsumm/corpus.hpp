#pragma once

// Question/sentence records, the JSON-lines corpus file, and the
// pre-processed view of a question that annotation and ranking work on.

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsumm/error.hpp"
#include "qsumm/rouge.hpp"
#include "qsumm/textproc.hpp"

namespace qsumm {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct SentenceRecord {
  std::size_t index = 0;
  std::string doc_id;
  std::string raw;

  bool operator==(const SentenceRecord&) const = default;
};

struct QuestionRecord {
  std::string id;
  std::string body;
  std::string type;
  std::vector<std::string> ideal_answers;
  std::vector<std::string> document_ids;
  std::vector<SentenceRecord> sentences;
  bool usable = true;
  std::string unusable_reason;

  bool operator==(const QuestionRecord&) const = default;
};

struct Corpus {
  static constexpr int kFormatVersion = 1;

  std::string created_by = std::string("qsumm ") + kToolkitVersion;
  std::optional<std::uint64_t> seed;
  std::vector<QuestionRecord> questions;

  bool operator==(const Corpus&) const = default;
};

inline void to_json(nlohmann::json& j, const SentenceRecord& s) {
  j = {{"index", s.index}, {"doc_id", s.doc_id}, {"raw", s.raw}};
}

inline void from_json(const nlohmann::json& j, SentenceRecord& s) {
  j.at("index").get_to(s.index);
  s.doc_id = j.value("doc_id", "");
  j.at("raw").get_to(s.raw);
}

inline void to_json(nlohmann::json& j, const QuestionRecord& q) {
  j = {{"id", q.id},
       {"body", q.body},
       {"type", q.type},
       {"ideal_answers", q.ideal_answers},
       {"documents", q.document_ids},
       {"usable", q.usable},
       {"sentences", q.sentences}};
  if (!q.unusable_reason.empty()) j["unusable_reason"] = q.unusable_reason;
}

inline void from_json(const nlohmann::json& j, QuestionRecord& q) {
  j.at("id").get_to(q.id);
  q.body = j.value("body", "");
  q.type = j.value("type", "");
  q.ideal_answers = j.value("ideal_answers", std::vector<std::string>{});
  q.document_ids = j.value("documents", std::vector<std::string>{});
  q.usable = j.value("usable", true);
  q.unusable_reason = j.value("unusable_reason", "");
  q.sentences = j.value("sentences", std::vector<SentenceRecord>{});
}

/// Header line, then one question per line.
inline void write_corpus(std::ostream& out, const Corpus& corpus) {
  nlohmann::json header = {{"format_version", Corpus::kFormatVersion},
                           {"created_by", corpus.created_by}};
  if (corpus.seed) header["seed"] = *corpus.seed;
  out << header.dump() << '\n';
  for (const auto& q : corpus.questions) out << nlohmann::json(q).dump() << '\n';
}

inline void write_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileUnreadable("cannot write corpus: " + path);
  write_corpus(out, corpus);
}

inline Corpus read_corpus(std::istream& in, const std::string& name = "corpus") {
  Corpus corpus;
  std::string line;
  if (!std::getline(in, line)) throw FormatError(name + ": empty corpus file");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(name + ": bad header: " + e.what());
  }
  if (!header.is_object() || header.value("format_version", 0) != Corpus::kFormatVersion)
    throw FormatError(name + ": missing or unsupported format_version header");
  corpus.created_by = header.value("created_by", "");
  if (header.contains("seed")) corpus.seed = header["seed"].get<std::uint64_t>();
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      corpus.questions.push_back(nlohmann::json::parse(line).get<QuestionRecord>());
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return corpus;
}

inline Corpus read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileUnreadable("cannot open corpus: " + path);
  return read_corpus(in, path);
}

/// Linguistic view of one question, computed once and shared by every stage.
struct PreparedQuestion {
  std::string id;
  Tokens query_stems;
  std::vector<Sentence> sentences;         // candidate pool
  std::vector<Tokens> sentence_units;      // ROUGE units per candidate
  std::vector<SkipBigramBag> sentence_bags;
  std::vector<std::vector<Tokens>> ideal_units;  // per answer, per sentence
  std::vector<SkipBigramBag> ideal_bags;
  Tokens abstract_stems;  // content stems of all ideal answers
};

inline PreparedQuestion prepare_question(const QuestionRecord& q,
                                         const Preprocessor& pre,
                                         int d_skip = kDefaultSkipDistance) {
  PreparedQuestion p;
  p.id = q.id;
  p.query_stems = pre.text_stems(q.body);
  p.sentences.reserve(q.sentences.size());
  for (std::size_t i = 0; i < q.sentences.size(); ++i) {
    auto s = pre.make_sentence(q.sentences[i].raw, i);
    p.sentence_units.push_back(Preprocessor::all_stems(s.tokens));
    p.sentence_bags.push_back(skip_bigrams(std::span<const std::string>(p.sentence_units.back()), d_skip));
    p.sentences.push_back(std::move(s));
  }
  for (const auto& answer : q.ideal_answers) {
    auto units = pre.rouge_sentences(answer);
    p.ideal_bags.push_back(skip_bigrams(std::span<const Tokens>(units), d_skip));
    p.ideal_units.push_back(std::move(units));
    auto stems = pre.text_stems(answer);
    p.abstract_stems.insert(p.abstract_stems.end(), stems.begin(), stems.end());
  }
  return p;
}

}  // namespace qsumm
