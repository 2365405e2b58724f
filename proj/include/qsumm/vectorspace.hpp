#pragma once

// Vocabulary fitting, tf-idf weighting and cosine similarity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qsumm/error.hpp"
#include "qsumm/textproc.hpp"

namespace qsumm {

using TermId = std::uint32_t;

/// Sparse non-negative term weights, ids strictly increasing.
struct SparseVector {
  std::vector<std::pair<TermId, double>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }

  double norm() const {
    double s = 0.0;
    for (const auto& [id, w] : entries) s += w * w;
    return std::sqrt(s);
  }

  void normalize() {
    const double n = norm();
    if (n == 0.0) {
      entries.clear();
      return;
    }
    for (auto& e : entries) e.second /= n;
  }

  SparseVector scaled(double k) const {
    SparseVector out = *this;
    for (auto& e : out.entries) e.second *= k;
    return out;
  }

  bool operator==(const SparseVector&) const = default;
};

inline double dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

/// a.b / (|a| |b|); 0 when either side is empty.
inline double cosine(const SparseVector& a, const SparseVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

class Vocabulary {
 public:
  static constexpr int kFormatVersion = 1;

  Vocabulary() = default;

  /// One entry per distinct stem, ids assigned in lexicographic term order.
  /// Terms whose document frequency is below min_df are dropped.
  static Vocabulary fit(std::span<const Tokens> documents,
                        std::size_t min_df = 1) {
    std::map<std::string, std::uint32_t> df;
    bool any_term = false;
    for (const auto& doc : documents) {
      std::vector<std::string_view> seen(doc.begin(), doc.end());
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      for (auto t : seen) {
        ++df[std::string(t)];
        any_term = true;
      }
    }
    if (!any_term) throw EmptyCorpus("cannot fit a vocabulary on empty documents");
    Vocabulary v;
    v.n_docs_ = documents.size();
    for (auto& [term, count] : df) {
      if (count < min_df) continue;
      v.ids_.emplace(term, static_cast<TermId>(v.terms_.size()));
      v.terms_.push_back(term);
      v.df_.push_back(count);
    }
    return v;
  }

  std::size_t size() const { return terms_.size(); }
  std::size_t n_docs() const { return n_docs_; }
  const std::string& term(TermId id) const { return terms_.at(id); }
  std::uint32_t df(TermId id) const { return df_.at(id); }

  std::optional<TermId> find(const std::string& term) const {
    auto it = ids_.find(term);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  /// Smoothed idf: ln((1 + N) / (1 + df)) + 1.
  double idf(TermId id) const {
    return std::log((1.0 + static_cast<double>(n_docs_)) /
                    (1.0 + static_cast<double>(df_.at(id)))) +
           1.0;
  }

  /// FNV-1a over (term, df) pairs and n_docs.
  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* p, std::size_t n) {
      const auto* b = static_cast<const unsigned char*>(p);
      for (std::size_t i = 0; i < n; ++i) {
        h ^= b[i];
        h *= 1099511628211ULL;
      }
    };
    const std::uint64_t nd = n_docs_;
    mix(&nd, sizeof nd);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      mix(terms_[i].data(), terms_[i].size());
      const unsigned char sep = 0;
      mix(&sep, 1);
      mix(&df_[i], sizeof df_[i]);
    }
    return h;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t i = 0; i < terms_.size(); ++i)
      terms.push_back({{"term", terms_[i]}, {"id", i}, {"df", df_[i]}});
    return {{"format_version", kFormatVersion},
            {"n_docs", n_docs_},
            {"terms", std::move(terms)}};
  }

  static Vocabulary from_json(const nlohmann::json& j) {
    if (j.value("format_version", 0) != kFormatVersion)
      throw FormatError("unsupported vocabulary format_version");
    Vocabulary v;
    v.n_docs_ = j.at("n_docs").get<std::size_t>();
    const auto& terms = j.at("terms");
    v.terms_.resize(terms.size());
    v.df_.resize(terms.size());
    for (const auto& t : terms) {
      const auto id = t.at("id").get<std::size_t>();
      if (id >= terms.size()) throw FormatError("vocabulary ids are not dense");
      v.terms_[id] = t.at("term").get<std::string>();
      v.df_[id] = t.at("df").get<std::uint32_t>();
    }
    for (std::size_t i = 0; i < v.terms_.size(); ++i) {
      if (v.df_[i] < 1 || v.df_[i] > v.n_docs_)
        throw FormatError("vocabulary df out of range for " + v.terms_[i]);
      if (!v.ids_.emplace(v.terms_[i], static_cast<TermId>(i)).second)
        throw FormatError("duplicate vocabulary term " + v.terms_[i]);
    }
    return v;
  }

 private:
  std::unordered_map<std::string, TermId> ids_;
  std::vector<std::string> terms_;
  std::vector<std::uint32_t> df_;
  std::size_t n_docs_ = 0;
};

inline Vocabulary fit_vocabulary(std::span<const Tokens> documents,
                                 std::size_t min_df = 1) {
  return Vocabulary::fit(documents, min_df);
}

/// Raw count x idf for in-vocabulary stems, not normalized.
inline SparseVector term_weights(std::span<const std::string> stems,
                                 const Vocabulary& vocab) {
  std::map<TermId, double> counts;
  for (const auto& s : stems)
    if (auto id = vocab.find(s)) counts[*id] += 1.0;
  SparseVector v;
  v.entries.reserve(counts.size());
  for (const auto& [id, tf] : counts) v.entries.emplace_back(id, tf * vocab.idf(id));
  return v;
}

/// L2-normalized tf-idf; empty when every stem is out of vocabulary.
inline SparseVector tfidf(std::span<const std::string> stems,
                          const Vocabulary& vocab) {
  auto v = term_weights(stems, vocab);
  v.normalize();
  return v;
}

}  // namespace qsumm
