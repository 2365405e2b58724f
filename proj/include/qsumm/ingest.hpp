#pragma once

// BioASQ Task B training JSON, the local abstract store, candidate pools,
// and the seeded planted-summary corpus generator.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "qsumm/annotate.hpp"
#include "qsumm/corpus.hpp"
#include "qsumm/error.hpp"
#include "qsumm/rouge.hpp"
#include "qsumm/textproc.hpp"

namespace qsumm {

/// "http://www.ncbi.nlm.nih.gov/pubmed/23456789" -> "23456789".
inline std::string normalize_document_id(std::string_view raw) {
  auto b = raw.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = raw.find_last_not_of(" \t\r\n/");
  if (e == std::string_view::npos || e < b) return {};
  raw = raw.substr(b, e - b + 1);
  auto slash = raw.find_last_of('/');
  if (slash != std::string_view::npos) raw = raw.substr(slash + 1);
  return std::string(raw);
}

struct BioasqParseResult {
  std::vector<QuestionRecord> questions;
  std::vector<std::string> warnings;
};

inline BioasqParseResult parse_bioasq(const nlohmann::json& root) {
  if (!root.is_object() || !root.contains("questions") || !root["questions"].is_array())
    throw NotBioasqShape("expected a top-level \"questions\" array");
  BioasqParseResult out;
  std::set<std::string> seen;
  std::size_t position = 0;
  for (const auto& item : root["questions"]) {
    const std::string where = "questions[" + std::to_string(position++) + "]";
    if (!item.is_object()) {
      out.warnings.push_back(where + ": not an object, skipped");
      continue;
    }
    if (!item.contains("body") || !item["body"].is_string()) {
      out.warnings.push_back(where + ": missing \"body\", skipped");
      continue;
    }
    QuestionRecord q;
    q.id = item.contains("id") && item["id"].is_string() ? item["id"].get<std::string>()
                                                         : "q" + std::to_string(position - 1);
    if (!seen.insert(q.id).second) {
      out.warnings.push_back(where + ": duplicate id " + q.id + ", skipped");
      continue;
    }
    q.body = item["body"].get<std::string>();
    q.type = item.value("type", "");
    if (item.contains("documents") && item["documents"].is_array()) {
      for (const auto& d : item["documents"]) {
        if (!d.is_string()) {
          out.warnings.push_back(where + ": non-string document entry ignored");
          continue;
        }
        auto id = normalize_document_id(d.get<std::string>());
        if (!id.empty()) q.document_ids.push_back(std::move(id));
      }
    } else {
      out.warnings.push_back(where + " (" + q.id + "): no \"documents\" array");
    }
    if (item.contains("ideal_answer")) {
      const auto& ia = item["ideal_answer"];
      if (ia.is_string()) {
        q.ideal_answers.push_back(ia.get<std::string>());
      } else if (ia.is_array()) {
        for (const auto& a : ia)
          if (a.is_string()) q.ideal_answers.push_back(a.get<std::string>());
      }
    }
    if (q.ideal_answers.empty()) {
      q.usable = false;
      q.unusable_reason = "no ideal answer";
      out.warnings.push_back(where + " (" + q.id + "): no ideal answer, flagged unusable");
    }
    out.questions.push_back(std::move(q));
  }
  return out;
}

inline BioasqParseResult parse_bioasq(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileUnreadable("cannot open BioASQ file: " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw NotBioasqShape(path + ": not valid JSON: " + e.what());
  }
  return parse_bioasq(root);
}

struct AbstractEntry {
  std::string title;
  std::string abstract;
};

/// document id -> {title, abstract}, loaded from JSON lines {id, title, abstract}.
class AbstractStore {
 public:
  void add(const std::string& id, AbstractEntry entry) {
    entries_[normalize_document_id(id)] = std::move(entry);
  }

  const AbstractEntry* find(std::string_view id) const {
    auto it = entries_.find(normalize_document_id(id));
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }

  static AbstractStore load(std::istream& in, const std::string& name = "abstracts") {
    AbstractStore store;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        std::string id = j.at("id").is_string() ? j["id"].get<std::string>()
                                                : j["id"].dump();
        store.add(id, {j.value("title", ""), j.value("abstract", "")});
      } catch (const nlohmann::json::exception& e) {
        throw FormatError(name + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    return store;
  }

  static AbstractStore load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileUnreadable("cannot open abstract store: " + path);
    return load(in, path);
  }

 private:
  std::unordered_map<std::string, AbstractEntry> entries_;
};

struct PoolOptions {
  bool include_titles = true;
};

/// Fills each question's candidate pool from its resolvable documents, in
/// (document order, sentence order). Returns warnings for unresolved ids
/// and empty pools; questions with empty pools are flagged unusable.
inline std::vector<std::string> build_pools(std::vector<QuestionRecord>& questions,
                                            const AbstractStore& store,
                                            const Preprocessor& pre = {},
                                            PoolOptions options = {}) {
  std::vector<std::string> warnings;
  for (auto& q : questions) {
    q.sentences.clear();
    for (const auto& doc_id : q.document_ids) {
      const auto* entry = store.find(doc_id);
      if (entry == nullptr) {
        warnings.push_back(q.id + ": document " + doc_id + " not in abstract store");
        continue;
      }
      auto append = [&](const std::string& text) {
        for (const auto& sp : pre.split_spans(text)) {
          q.sentences.push_back(
              {q.sentences.size(), doc_id, text.substr(sp.begin, sp.end - sp.begin)});
        }
      };
      if (options.include_titles) append(entry->title);
      append(entry->abstract);
    }
    if (q.sentences.empty()) {
      if (q.usable) {
        q.usable = false;
        q.unusable_reason = "empty candidate pool";
      }
      warnings.push_back(q.id + ": empty candidate pool, flagged unusable");
    }
  }
  return warnings;
}

struct SyntheticOptions {
  std::size_t n_questions = 100;
  std::size_t pool_size = 10;
  std::size_t n_planted = 3;
  std::uint64_t seed = 7;
};

namespace synth_detail {

// Pronounceable consonant-vowel pseudo-words. Callers check stems for
// collisions and stopword/abbreviation clashes.
inline std::string pseudo_word(std::mt19937_64& rng) {
  static constexpr std::string_view consonants = "bdfgklmnprstvz";
  static constexpr std::string_view vowels = "aeiou";
  std::uniform_int_distribution<int> syllables(2, 3);
  std::uniform_int_distribution<std::size_t> pick_c(0, consonants.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_v(0, vowels.size() - 1);
  std::string w;
  const int n = syllables(rng);
  for (int i = 0; i < n; ++i) {
    w.push_back(consonants[pick_c(rng)]);
    w.push_back(vowels[pick_v(rng)]);
  }
  w.push_back(consonants[pick_c(rng)]);
  return w;
}

inline std::vector<std::string> word_pool(std::mt19937_64& rng, std::size_t n,
                                          std::set<std::string>& used_stems,
                                          const Preprocessor& pre) {
  std::vector<std::string> out;
  while (out.size() < n) {
    auto w = pseudo_word(rng);
    if (pre.stopwords().contains(w)) continue;
    if (!used_stems.insert(stem(w)).second) continue;
    out.push_back(std::move(w));
  }
  return out;
}

inline std::string make_sentence(std::mt19937_64& rng, const std::vector<std::string>& primary,
                                 const std::vector<std::string>* secondary, double p_primary) {
  std::uniform_int_distribution<int> len(6, 10);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_p(0, primary.size() - 1);
  std::string s;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    std::string w;
    if (secondary == nullptr || coin(rng) < p_primary) {
      w = primary[pick_p(rng)];
    } else {
      std::uniform_int_distribution<std::size_t> pick_s(0, secondary->size() - 1);
      w = (*secondary)[pick_s(rng)];
    }
    if (i == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    if (!s.empty()) s.push_back(' ');
    s += w;
  }
  s.push_back('.');
  return s;
}

}  // namespace synth_detail

/// Ceiling on SU4 between a distractor and the ideal answer.
inline constexpr double kSyntheticDistractorCeiling = 0.05;

/// Seeded planted-summary corpus. Each question draws a topic from a shared
/// "relevant" vocabulary; n_planted pool sentences and the query use topic
/// words, the other pool sentences come from a disjoint distractor
/// vocabulary, and the ideal answer is the planted sentences verbatim in
/// pool order. Questions violating the planted-dominates-distractors
/// guarantee are regenerated.
inline Corpus generate_synthetic(const SyntheticOptions& opt, const Preprocessor& pre = {}) {
  if (opt.n_questions == 0 || opt.pool_size == 0 || opt.n_planted == 0 ||
      opt.n_planted > opt.pool_size)
    throw InvalidParameters("synthetic corpus needs 1 <= n_planted <= pool_size and n_questions >= 1");

  std::mt19937_64 rng(opt.seed);
  std::set<std::string> used;
  const auto relevant = synth_detail::word_pool(rng, 300, used, pre);
  const auto distractor = synth_detail::word_pool(rng, 300, used, pre);

  Corpus corpus;
  corpus.seed = opt.seed;
  corpus.created_by = std::string("qsumm ") + kToolkitVersion + " synthetic";
  constexpr int kMaxAttempts = 100;

  for (std::size_t qi = 0; qi < opt.n_questions; ++qi) {
    bool ok = false;
    for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
      QuestionRecord q;
      q.id = "synth-" + std::to_string(qi);
      q.type = "summary";
      q.document_ids = {q.id + "-doc"};

      std::vector<std::string> topic;
      std::sample(relevant.begin(), relevant.end(), std::back_inserter(topic), 8, rng);
      std::shuffle(topic.begin(), topic.end(), rng);
      q.body = "What is known about " + topic[0] + " and " + topic[1] + " " + topic[2] + "?";

      std::vector<std::size_t> slots(opt.pool_size);
      std::iota(slots.begin(), slots.end(), std::size_t{0});
      std::vector<std::size_t> planted;
      std::sample(slots.begin(), slots.end(), std::back_inserter(planted), opt.n_planted, rng);
      std::vector<bool> is_planted(opt.pool_size, false);
      for (auto p : planted) is_planted[p] = true;

      std::string ideal;
      for (std::size_t i = 0; i < opt.pool_size; ++i) {
        std::string text = is_planted[i]
                               ? synth_detail::make_sentence(rng, topic, &relevant, 0.75)
                               : synth_detail::make_sentence(rng, distractor, nullptr, 1.0);
        if (is_planted[i]) {
          if (!ideal.empty()) ideal.push_back(' ');
          ideal += text;
        }
        q.sentences.push_back({i, q.document_ids[0], std::move(text)});
      }
      q.ideal_answers = {ideal};

      // The generated text must survive the splitter intact.
      if (pre.split_spans(ideal).size() != opt.n_planted) continue;
      const auto prepared = prepare_question(q, pre);
      const auto scores = score_sentences(prepared);
      double min_planted = 1.0;
      double max_distractor = 0.0;
      for (std::size_t i = 0; i < scores.size(); ++i) {
        if (is_planted[i])
          min_planted = std::min(min_planted, scores[i]);
        else
          max_distractor = std::max(max_distractor, scores[i]);
      }
      if (max_distractor >= kSyntheticDistractorCeiling || !(min_planted > max_distractor))
        continue;
      corpus.questions.push_back(std::move(q));
      ok = true;
    }
    if (!ok) throw InvalidParameters("could not generate a valid synthetic question");
  }
  return corpus;
}

}  // namespace qsumm
