#pragma once

// Stage orchestration: rank-and-select summaries, question-level k-fold
// cross-validation, per-fold ROUGE-SU4 statistics and run comparison.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qsumm/annotate.hpp"
#include "qsumm/corpus.hpp"
#include "qsumm/error.hpp"
#include "qsumm/models.hpp"
#include "qsumm/rouge.hpp"
#include "qsumm/vectorspace.hpp"

namespace qsumm {

enum class Approach { Regression, Classification, Random };

inline std::string to_string(Approach a) {
  switch (a) {
    case Approach::Regression: return "regression";
    case Approach::Classification: return "classification";
    case Approach::Random: return "random";
  }
  return "?";
}

inline Approach parse_approach(const std::string& s) {
  if (s == "regression") return Approach::Regression;
  if (s == "classification") return Approach::Classification;
  if (s == "random") return Approach::Random;
  throw InvalidParameters("unknown approach: " + s);
}

struct ExperimentConfig {
  Approach approach = Approach::Classification;
  AnnotationStrategy strategy = AnnotationStrategy::thresholded(0.1);
  std::size_t n_summary_sentences = 3;
  std::size_t k_folds = 10;
  Hyperparameters hyper;
  std::uint64_t seed = 42;  // fold partition and random baseline
  std::size_t min_df = 1;

  void validate() const {
    if (n_summary_sentences < 1) throw InvalidParameters("summary length must be >= 1");
    if (k_folds < 2) throw InvalidParameters("need at least 2 folds");
    if (min_df < 1) throw InvalidParameters("min_df must be >= 1");
    if (approach == Approach::Classification) strategy.validate();
    if (approach != Approach::Random) hyper.validate();
  }

  /// Column label used in reports, e.g. "classification-threshold-0.1".
  std::string label() const {
    if (approach == Approach::Classification) return "classification-" + strategy.id();
    return to_string(approach);
  }
};

struct Summary {
  std::string question_id;
  std::vector<std::size_t> indices;  // ascending
  std::string text;
};

/// The n highest scores (ties to the lower index), returned in document order.
inline std::vector<std::size_t> select_top(std::span<const double> scores, std::size_t n) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(std::min(n, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

inline Summary make_summary(const PreparedQuestion& q, std::vector<std::size_t> indices) {
  Summary s;
  s.question_id = q.id;
  for (auto i : indices) {
    if (!s.text.empty()) s.text.push_back(' ');
    s.text += q.sentences[i].raw;
  }
  s.indices = std::move(indices);
  return s;
}

inline Summary summarize(const PreparedQuestion& q, const Vocabulary& vocab,
                         const LinearModel& model, std::size_t n) {
  const auto features = assemble_features(q, vocab);
  const auto scores = decision_scores(model, features);
  return make_summary(q, select_top(scores, n));
}

/// Uniformly random n sentences; the chance baseline.
inline Summary summarize_random(const PreparedQuestion& q, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> all(q.sentences.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> pick;
  std::sample(all.begin(), all.end(), std::back_inserter(pick), std::min(n, all.size()), rng);
  return make_summary(q, std::move(pick));
}

/// ROUGE-SU4 of a summary against the question's ideal answers.
inline RougeScore score_summary(const PreparedQuestion& q, const Summary& s,
                                int d_skip = kDefaultSkipDistance) {
  SkipBigramBag bag;
  for (auto i : s.indices) bag.add_sentence(q.sentence_units[i], d_skip);
  return rouge_su_multi(bag, q.ideal_bags, RougeMode::SU);
}

using FoldPartition = std::vector<std::vector<std::string>>;

/// Seeded question-level partition into k folds whose sizes differ by at most
/// one. Within a fold, ids keep their input order.
inline FoldPartition make_folds(std::span<const std::string> question_ids, std::size_t k,
                                std::uint64_t seed) {
  if (k < 2) throw InvalidParameters("need at least 2 folds");
  if (k > question_ids.size())
    throw TooFewQuestions("cannot make " + std::to_string(k) + " folds from " +
                          std::to_string(question_ids.size()) + " questions");
  std::vector<std::size_t> order(question_ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t base = order.size() / k;
  const std::size_t extra = order.size() % k;
  FoldPartition folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = base + (f < extra ? 1 : 0);
    std::vector<std::size_t> members(order.begin() + pos, order.begin() + pos + len);
    std::sort(members.begin(), members.end());
    for (auto m : members) folds[f].push_back(question_ids[m]);
    pos += len;
  }
  return folds;
}

struct QuestionResult {
  std::string id;
  std::vector<std::size_t> selected;
  RougeScore score;
};

struct Moments {
  double mean = 0.0;
  double std = 0.0;  // population
};

inline Moments moments(std::span<const double> xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return m;
}

struct FoldReport {
  std::size_t fold = 0;
  std::vector<QuestionResult> questions;
  double mean = 0.0;
  double std = 0.0;
  std::uint64_t vocab_hash = 0;
  std::size_t n_train_examples = 0;

  std::vector<double> f1s() const {
    std::vector<double> out;
    for (const auto& q : questions) out.push_back(q.score.f1);
    return out;
  }
};

struct SkippedQuestion {
  std::string id;
  std::string reason;
};

struct ExperimentReport {
  ExperimentConfig config;
  FoldPartition partition;
  std::vector<FoldReport> folds;
  Moments micro;  // over all questions
  Moments macro;  // over fold means
  std::size_t n_questions = 0;
  std::vector<SkippedQuestion> skipped;
  std::vector<std::string> fallbacks;  // Marcu -> Threshold(0.1)
};

/// Handed to the fold observer after each fold is trained.
struct FoldContext {
  std::size_t fold = 0;
  const std::vector<std::string>& train_ids;
  const std::vector<std::string>& test_ids;
  const Vocabulary* vocab = nullptr;  // null for the random baseline
  const LinearModel* model = nullptr;
};

using FoldObserver = std::function<void(const FoldContext&)>;

/// Questions usable for experiments, preprocessed; the rest are reported as skipped.
struct PreparedCorpus {
  std::vector<PreparedQuestion> questions;
  std::vector<SkippedQuestion> skipped;
};

inline PreparedCorpus prepare_corpus(const Corpus& corpus, const Preprocessor& pre) {
  PreparedCorpus out;
  for (const auto& q : corpus.questions) {
    if (!q.usable) {
      out.skipped.push_back({q.id, q.unusable_reason.empty() ? "unusable" : q.unusable_reason});
      continue;
    }
    if (q.ideal_answers.empty()) {
      out.skipped.push_back({q.id, "no ideal answer"});
      continue;
    }
    if (q.sentences.empty()) {
      out.skipped.push_back({q.id, "empty candidate pool"});
      continue;
    }
    auto p = prepare_question(q, pre);
    if (std::all_of(p.ideal_bags.begin(), p.ideal_bags.end(),
                    [](const auto& b) { return b.unigram_total == 0; })) {
      out.skipped.push_back({q.id, "ideal answer has no tokens"});
      continue;
    }
    out.questions.push_back(std::move(p));
  }
  return out;
}

/// Vocabulary documents: every candidate sentence and every query text.
inline Vocabulary fit_fold_vocabulary(std::span<const PreparedQuestion* const> train,
                                      std::size_t min_df) {
  std::vector<Tokens> docs;
  for (const auto* q : train) {
    docs.push_back(q->query_stems);
    for (const auto& s : q->sentences) docs.push_back(s.stems);
  }
  return Vocabulary::fit(docs, min_df);
}

inline ExperimentReport run_experiment(const PreparedCorpus& prepared,
                                       const ExperimentConfig& config,
                                       const FoldObserver& observer = {}) {
  config.validate();
  if (prepared.questions.empty()) throw EmptyCorpus("no usable questions in corpus");

  ExperimentReport report;
  report.config = config;
  report.skipped = prepared.skipped;

  std::vector<std::string> ids;
  std::map<std::string, const PreparedQuestion*> by_id;
  for (const auto& q : prepared.questions) {
    ids.push_back(q.id);
    if (!by_id.emplace(q.id, &q).second) throw InvalidParameters("duplicate question id " + q.id);
  }
  report.partition = make_folds(ids, config.k_folds, config.seed);

  // Targets depend only on a question and its references, never on the fold.
  std::map<std::string, QuestionAnnotation> annotations;
  if (config.approach != Approach::Random) {
    const auto strategy = config.approach == Approach::Classification
                              ? config.strategy
                              : AnnotationStrategy::thresholded(0.1);
    for (const auto& q : prepared.questions) {
      auto a = annotate_question(q, strategy);
      if (a.fell_back && config.approach == Approach::Classification)
        report.fallbacks.push_back(q.id);
      annotations.emplace(q.id, std::move(a));
    }
  }

  std::vector<double> all_f1;
  std::vector<double> fold_means;
  for (std::size_t f = 0; f < report.partition.size(); ++f) {
    const auto& test_ids = report.partition[f];
    std::vector<std::string> train_ids;
    for (std::size_t g = 0; g < report.partition.size(); ++g)
      if (g != f)
        train_ids.insert(train_ids.end(), report.partition[g].begin(), report.partition[g].end());

    FoldReport fr;
    fr.fold = f;
    std::optional<Vocabulary> vocab;
    std::optional<LinearModel> model;
    if (config.approach != Approach::Random) {
      std::vector<const PreparedQuestion*> train;
      for (const auto& id : train_ids) train.push_back(by_id.at(id));
      vocab = fit_fold_vocabulary(train, config.min_df);
      fr.vocab_hash = vocab->hash();

      std::vector<FeatureVector> xs;
      std::vector<double> targets;
      std::vector<int> labels;
      for (const auto* q : train) {
        auto feats = assemble_features(*q, *vocab);
        const auto& a = annotations.at(q->id);
        for (std::size_t i = 0; i < feats.size(); ++i) {
          if (config.approach == Approach::Regression) {
            xs.push_back(std::move(feats[i]));
            targets.push_back(a.su4_f1[i]);
          } else if (a.labels[i]) {
            xs.push_back(std::move(feats[i]));
            labels.push_back(*a.labels[i]);
          }
        }
      }
      fr.n_train_examples = xs.size();
      if (xs.empty()) throw InvalidParameters("fold " + std::to_string(f) + " has no training examples");
      model = config.approach == Approach::Regression ? train_svr(xs, targets, config.hyper)
                                                      : train_svm(xs, labels, config.hyper);
      model->vocab_hash = fr.vocab_hash;
    }
    if (observer)
      observer(FoldContext{f, train_ids, test_ids, vocab ? &*vocab : nullptr,
                           model ? &*model : nullptr});

    std::mt19937_64 rng(config.seed ^ (0x9e3779b97f4a7c15ULL * (f + 1)));
    for (const auto& id : test_ids) {
      const auto& q = *by_id.at(id);
      const auto summary = model ? summarize(q, *vocab, *model, config.n_summary_sentences)
                                 : summarize_random(q, config.n_summary_sentences, rng);
      fr.questions.push_back({id, summary.indices, score_summary(q, summary)});
    }
    const auto f1 = fr.f1s();
    const auto m = moments(f1);
    fr.mean = m.mean;
    fr.std = m.std;
    all_f1.insert(all_f1.end(), f1.begin(), f1.end());
    fold_means.push_back(fr.mean);
    report.folds.push_back(std::move(fr));
  }
  report.micro = moments(all_f1);
  report.macro = moments(fold_means);
  report.n_questions = all_f1.size();
  return report;
}

inline ExperimentReport run_experiment(const Corpus& corpus, const ExperimentConfig& config,
                                       const Preprocessor& pre = {},
                                       const FoldObserver& observer = {}) {
  return run_experiment(prepare_corpus(corpus, pre), config, observer);
}

struct ComparisonTable {
  std::vector<std::string> labels;               // one per run
  std::vector<std::vector<double>> fold_means;   // [fold][run]
  std::vector<std::size_t> fold_winner;          // [fold], ties to the earlier run
  std::vector<std::size_t> wins;                 // [run]
  std::vector<Moments> aggregate;                // [run], over fold means
};

inline ComparisonTable compare_runs(std::span<const ExperimentReport> runs) {
  if (runs.empty()) throw InvalidParameters("nothing to compare");
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].partition != runs[0].partition)
      throw FoldMismatch("run " + std::to_string(r) + " (" + runs[r].config.label() +
                         ") used a different fold partition");
  ComparisonTable t;
  const std::size_t n_folds = runs[0].folds.size();
  t.wins.assign(runs.size(), 0);
  for (const auto& r : runs) t.labels.push_back(r.config.label());
  for (std::size_t f = 0; f < n_folds; ++f) {
    std::vector<double> row;
    for (const auto& r : runs) row.push_back(r.folds[f].mean);
    std::size_t best = 0;
    for (std::size_t r = 1; r < row.size(); ++r)
      if (row[r] > row[best]) best = r;
    t.fold_winner.push_back(best);
    ++t.wins[best];
    t.fold_means.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::vector<double> col;
    for (const auto& row : t.fold_means) col.push_back(row[r]);
    t.aggregate.push_back(moments(col));
  }
  return t;
}

}  // namespace qsumm
