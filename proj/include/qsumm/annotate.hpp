#pragma once

// Turning reference summaries into training targets: SU4 scores for
// regression and 0/1 labels (or exclusion) for classification.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qsumm/corpus.hpp"
#include "qsumm/error.hpp"
#include "qsumm/rouge.hpp"
#include "qsumm/vectorspace.hpp"

namespace qsumm {

/// 1 = summary sentence, 0 = not, nullopt = excluded from training.
using Label = std::optional<int>;

struct AnnotationStrategy {
  enum class Kind { TopK, Threshold, Marcu, DualThreshold };

  Kind kind = Kind::Threshold;
  int k = 3;
  double threshold = 0.1;
  double hi = 0.7;
  double lo = 0.3;

  static AnnotationStrategy top_k(int k = 3) { return {Kind::TopK, k}; }
  static AnnotationStrategy thresholded(double t = 0.1) {
    AnnotationStrategy s;
    s.kind = Kind::Threshold;
    s.threshold = t;
    return s;
  }
  static AnnotationStrategy marcu() { return {Kind::Marcu}; }
  static AnnotationStrategy dual(double hi = 0.7, double lo = 0.3) {
    AnnotationStrategy s;
    s.kind = Kind::DualThreshold;
    s.hi = hi;
    s.lo = lo;
    return s;
  }

  void validate() const {
    switch (kind) {
      case Kind::TopK:
        if (k < 1) throw InvalidParameters("top-k needs k >= 1");
        break;
      case Kind::Threshold:
        if (!(threshold >= 0.0 && threshold <= 1.0))
          throw InvalidParameters("threshold must lie in [0, 1]");
        break;
      case Kind::DualThreshold:
        if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
          throw InvalidParameters("dual threshold needs 0 <= lo < hi <= 1");
        break;
      case Kind::Marcu:
        break;
    }
  }

  /// Stable identifier, e.g. "threshold-0.1", "topk-3", "dual-0.7-0.3".
  std::string id() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::TopK: os << "topk-" << k; break;
      case Kind::Threshold: os << "threshold-" << threshold; break;
      case Kind::Marcu: os << "marcu"; break;
      case Kind::DualThreshold: os << "dual-" << hi << "-" << lo; break;
    }
    return os.str();
  }

  bool operator==(const AnnotationStrategy&) const = default;
};

inline AnnotationStrategy::Kind parse_strategy_kind(const std::string& s) {
  using K = AnnotationStrategy::Kind;
  if (s == "topk") return K::TopK;
  if (s == "threshold") return K::Threshold;
  if (s == "marcu") return K::Marcu;
  if (s == "dual") return K::DualThreshold;
  throw InvalidParameters("unknown annotation strategy: " + s);
}

inline std::string strategy_kind_name(AnnotationStrategy::Kind k) {
  using K = AnnotationStrategy::Kind;
  switch (k) {
    case K::TopK: return "topk";
    case K::Threshold: return "threshold";
    case K::Marcu: return "marcu";
    case K::DualThreshold: return "dual";
  }
  return "?";
}

/// F1 ROUGE-SU4 of every candidate against the best-matching ideal answer.
inline std::vector<double> score_sentences(const PreparedQuestion& q) {
  if (q.ideal_bags.empty())
    throw EmptyReferenceSet("question " + q.id + " has no ideal answer");
  std::vector<double> out;
  out.reserve(q.sentence_bags.size());
  for (const auto& bag : q.sentence_bags)
    out.push_back(rouge_su_multi(bag, q.ideal_bags, RougeMode::SU).f1);
  return out;
}

/// The k best scores get 1; ties go to the lower index.
inline std::vector<Label> annotate_topk(std::span<const double> scores, int k) {
  if (k < 1) throw InvalidParameters("top-k needs k >= 1");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<Label> labels(scores.size(), 0);
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
  for (std::size_t i = 0; i < take; ++i) labels[order[i]] = 1;
  return labels;
}

/// 1 iff score > t.
inline std::vector<Label> annotate_threshold(std::span<const double> scores, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameters("threshold must lie in [0, 1]");
  std::vector<Label> labels;
  labels.reserve(scores.size());
  for (double s : scores) labels.emplace_back(s > t ? 1 : 0);
  return labels;
}

/// score > hi -> 1, score < lo -> 0, anything in between is left unlabelled.
inline std::vector<Label> annotate_dual_threshold(std::span<const double> scores,
                                                  double hi, double lo) {
  if (!(lo < hi)) throw InvalidParameters("dual threshold needs lo < hi");
  std::vector<Label> labels;
  labels.reserve(scores.size());
  for (double s : scores) {
    if (s > hi)
      labels.emplace_back(1);
    else if (s < lo)
      labels.emplace_back(0);
    else
      labels.emplace_back(std::nullopt);
  }
  return labels;
}

struct MarcuExtract {
  std::vector<std::size_t> retained;     // ascending sentence indices
  std::vector<double> similarity_trace;  // Sim(E, A) after each step, starting at E = T
};

// Removal must improve similarity by more than this to count as an increase;
// anything smaller is treated as a plateau and stops the loop.
inline constexpr double kMarcuImprovementEpsilon = 1e-12;

/// Greedy core extract. E starts as every sentence; while deleting the
/// sentence whose removal maximizes cos(tfidf(E \ S), tfidf(A)) strictly
/// raises the similarity, delete it. Argmax ties go to the lowest index and
/// the extract never shrinks below one sentence. tf-idf statistics come from
/// the abstract plus the sentences, each counted as one document.
inline MarcuExtract marcu_extract(std::span<const std::string> abstract_stems,
                                  std::span<const Tokens> sentences) {
  if (sentences.empty()) throw InvalidParameters("marcu_extract needs >= 1 sentence");
  if (abstract_stems.empty())
    throw DegenerateAbstract("abstract has no content stems");

  std::vector<Tokens> docs;
  docs.reserve(sentences.size() + 1);
  docs.emplace_back(abstract_stems.begin(), abstract_stems.end());
  docs.insert(docs.end(), sentences.begin(), sentences.end());
  const auto vocab = Vocabulary::fit(docs);
  const std::size_t dim = vocab.size();

  std::vector<double> abstract_w(dim, 0.0);
  for (const auto& [id, w] : term_weights(abstract_stems, vocab).entries) abstract_w[id] = w;
  double abstract_norm = 0.0;
  for (double w : abstract_w) abstract_norm += w * w;
  abstract_norm = std::sqrt(abstract_norm);
  if (abstract_norm == 0.0) throw DegenerateAbstract("abstract vectorizes to zero");

  std::vector<SparseVector> sent_w;
  sent_w.reserve(sentences.size());
  for (const auto& s : sentences) sent_w.push_back(term_weights(s, vocab));

  std::vector<double> extract_w(dim, 0.0);
  for (const auto& v : sent_w)
    for (const auto& [id, w] : v.entries) extract_w[id] += w;
  std::vector<bool> alive(sentences.size(), true);
  std::size_t n_alive = sentences.size();

  auto similarity_of = [&](double dotp, double norm2) {
    return norm2 > 0.0 ? dotp / (std::sqrt(norm2) * abstract_norm) : 0.0;
  };

  MarcuExtract out;
  while (true) {
    double dot_e = 0.0;
    double norm2_e = 0.0;
    for (std::size_t t = 0; t < dim; ++t) {
      dot_e += extract_w[t] * abstract_w[t];
      norm2_e += extract_w[t] * extract_w[t];
    }
    const double current = similarity_of(dot_e, norm2_e);
    out.similarity_trace.push_back(current);
    if (n_alive <= 1) break;

    std::size_t best = sentences.size();
    double best_sim = -1.0;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      if (!alive[s]) continue;
      double dotp = dot_e;
      double norm2 = norm2_e;
      for (const auto& [id, w] : sent_w[s].entries) {
        const double e = extract_w[id];
        dotp -= w * abstract_w[id];
        norm2 -= e * e - (e - w) * (e - w);
      }
      if (norm2 < 1e-12 * norm2_e) norm2 = 0.0;
      const double sim = similarity_of(dotp, norm2);
      if (sim > best_sim) {
        best_sim = sim;
        best = s;
      }
    }
    if (!(best_sim > current + kMarcuImprovementEpsilon)) break;
    alive[best] = false;
    --n_alive;
    for (const auto& [id, w] : sent_w[best].entries) extract_w[id] -= w;
  }
  for (std::size_t s = 0; s < sentences.size(); ++s)
    if (alive[s]) out.retained.push_back(s);
  return out;
}

struct QuestionAnnotation {
  std::vector<double> su4_f1;
  std::vector<Label> labels;
  bool fell_back = false;  // Marcu degenerate abstract -> Threshold(0.1)
};

inline QuestionAnnotation annotate_question(const PreparedQuestion& q,
                                            const AnnotationStrategy& strategy) {
  strategy.validate();
  QuestionAnnotation a;
  a.su4_f1 = score_sentences(q);
  using K = AnnotationStrategy::Kind;
  switch (strategy.kind) {
    case K::TopK: a.labels = annotate_topk(a.su4_f1, strategy.k); break;
    case K::Threshold: a.labels = annotate_threshold(a.su4_f1, strategy.threshold); break;
    case K::DualThreshold:
      a.labels = annotate_dual_threshold(a.su4_f1, strategy.hi, strategy.lo);
      break;
    case K::Marcu: {
      if (q.sentences.empty()) break;
      std::vector<Tokens> stems;
      stems.reserve(q.sentences.size());
      for (const auto& s : q.sentences) stems.push_back(s.stems);
      try {
        const auto extract = marcu_extract(q.abstract_stems, stems);
        a.labels.assign(q.sentences.size(), 0);
        for (auto i : extract.retained) a.labels[i] = 1;
      } catch (const DegenerateAbstract&) {
        a.labels = annotate_threshold(a.su4_f1, 0.1);
        a.fell_back = true;
      }
      break;
    }
  }
  return a;
}

}  // namespace qsumm
