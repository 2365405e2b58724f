#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qsumm/models.hpp"

using qsumm::FeatureVector;
using qsumm::Hyperparameters;
using qsumm::ModelKind;

namespace {

FeatureVector dense_features(const std::vector<double>& x) {
  FeatureVector f;
  f.vocab_size = x.size();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) f.tfidf.entries.emplace_back(static_cast<qsumm::TermId>(i), x[i]);
  return f;
}

struct Toy {
  std::vector<FeatureVector> xs;
  std::vector<int> labels;
};

// Two clusters separated by a gap of at least 0.2 along x0 - x1.
Toy separable_set(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Toy t;
  while (t.xs.size() < n) {
    const double a = u(rng), b = u(rng);
    if (std::abs(a - b) < 0.2) continue;
    t.xs.push_back(dense_features({a, b}));
    t.labels.push_back(a > b ? 1 : 0);
  }
  return t;
}

}  // namespace

TEST(Features, IdenticalToQueryHasCosineOne) {
  std::vector<qsumm::Tokens> docs{{"insulin", "glucos"}, {"cell"}};
  const auto vocab = qsumm::fit_vocabulary(docs);
  const auto q = qsumm::tfidf(qsumm::Tokens{"insulin", "glucos"}, vocab);
  const auto f = qsumm::make_features(qsumm::Tokens{"insulin", "glucos"}, q, vocab);
  EXPECT_NEAR(f.query_cosine, 1.0, 1e-12);
  EXPECT_EQ(f.dim(), vocab.size() + 1);
  EXPECT_NEAR(f.dense()[vocab.size()], 1.0, 1e-12);
}

TEST(Features, AllOutOfVocabularySentence) {
  std::vector<qsumm::Tokens> docs{{"insulin"}};
  const auto vocab = qsumm::fit_vocabulary(docs);
  const auto q = qsumm::tfidf(qsumm::Tokens{"insulin"}, vocab);
  const auto f = qsumm::make_features(qsumm::Tokens{"zebra"}, q, vocab);
  for (double v : f.dense()) EXPECT_EQ(v, 0.0);
}

TEST(Features, AssembledMatchIndependentRecomputation) {
  qsumm::QuestionRecord rec;
  rec.id = "q1";
  rec.body = "Which hormone regulates blood glucose?";
  rec.ideal_answers = {"Insulin."};
  for (const char* s : {"Insulin regulates blood glucose.", "Glucagon raises glucose.",
                        "Cats purr."})
    rec.sentences.push_back({rec.sentences.size(), "d", s});
  const qsumm::Preprocessor pre;
  const auto q = qsumm::prepare_question(rec, pre);
  std::vector<qsumm::Tokens> docs{q.query_stems};
  for (const auto& s : q.sentences) docs.push_back(s.stems);
  const auto vocab = qsumm::fit_vocabulary(docs);
  const auto feats = qsumm::assemble_features(q, vocab);
  ASSERT_EQ(feats.size(), 3u);
  const auto qv = qsumm::tfidf(q.query_stems, vocab);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto sv = qsumm::tfidf(q.sentences[i].stems, vocab);
    EXPECT_EQ(feats[i].tfidf, sv);
    EXPECT_EQ(feats[i].query_cosine, qsumm::cosine(sv, qv));
    EXPECT_GE(feats[i].query_cosine, 0.0);
    EXPECT_LE(feats[i].query_cosine, 1.0 + 1e-12);
  }
  EXPECT_EQ(feats[2].query_cosine, 0.0);
}

TEST(Hyperparameters, Validation) {
  Hyperparameters hp;
  EXPECT_NO_THROW(hp.validate());
  hp.lambda = 0;
  EXPECT_THROW(hp.validate(), qsumm::InvalidHyperparameter);
  hp = {};
  hp.epsilon = -0.1;
  EXPECT_THROW(hp.validate(), qsumm::InvalidHyperparameter);
  hp = {};
  hp.epochs = 0;
  EXPECT_THROW(hp.validate(), qsumm::InvalidHyperparameter);
  std::vector<FeatureVector> xs{dense_features({1.0})};
  std::vector<double> ys{0.5};
  EXPECT_THROW(qsumm::train_svr(xs, ys, hp), qsumm::InvalidHyperparameter);
}

TEST(TrainSvr, ConstantTargetsFitThroughBias) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<FeatureVector> xs;
  std::vector<double> ys;
  for (int i = 0; i < 100; ++i) {
    xs.push_back(dense_features({u(rng), u(rng), u(rng)}));
    ys.push_back(0.42);
  }
  Hyperparameters hp;
  hp.epsilon = 0.01;
  const auto m = qsumm::train_svr(xs, ys, hp);
  for (const auto& x : xs) EXPECT_NEAR(qsumm::decision_score(m, x), 0.42, hp.epsilon + 0.005);
  EXPECT_LE(m.meta.final_objective, m.meta.initial_objective);
}

TEST(TrainSvr, LinearTargetHeldOutGrid) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<FeatureVector> xs;
  std::vector<double> ys;
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    xs.push_back(dense_features({x}));
    ys.push_back(0.5 * x);
  }
  Hyperparameters hp;
  hp.epsilon = 0.01;
  const auto m = qsumm::train_svr(xs, ys, hp);
  for (double x = 0.025; x < 1.0; x += 0.05)
    EXPECT_NEAR(qsumm::decision_score(m, dense_features({x})), 0.5 * x, 0.05) << x;
  EXPECT_LE(m.meta.final_objective, m.meta.initial_objective);
  EXPECT_TRUE(std::isfinite(m.meta.final_objective));
  EXPECT_GE(m.meta.final_objective, 0.0);
  EXPECT_EQ(m.weights.size(), 2u);
}

TEST(TrainSvm, SeparableSetFullyClassified) {
  const auto toy = separable_set(200, 3);
  const auto m = qsumm::train_svm(toy.xs, toy.labels);
  for (std::size_t i = 0; i < toy.xs.size(); ++i)
    EXPECT_EQ(qsumm::decision_score(m, toy.xs[i]) > 0 ? 1 : 0, toy.labels[i]);
  EXPECT_LE(m.meta.final_objective, m.meta.initial_objective);
}

TEST(TrainSvm, FlippedLabelsNegateScores) {
  const auto toy = separable_set(100, 4);
  std::vector<int> flipped;
  for (int l : toy.labels) flipped.push_back(1 - l);
  const auto a = qsumm::train_svm(toy.xs, toy.labels);
  const auto b = qsumm::train_svm(toy.xs, flipped);
  for (const auto& x : toy.xs)
    EXPECT_NEAR(qsumm::decision_score(a, x), -qsumm::decision_score(b, x), 1e-3);
}

TEST(TrainSvm, SingleClassThrows) {
  std::vector<FeatureVector> xs{dense_features({1.0}), dense_features({0.5})};
  std::vector<int> ys{1, 1};
  EXPECT_THROW(qsumm::train_svm(xs, ys), qsumm::SingleClassTraining);
}

TEST(TrainSvm, DefaultClassWeightsBalance) {
  auto toy = separable_set(40, 5);
  const auto m = qsumm::train_svm(toy.xs, toy.labels);
  std::size_t pos = 0;
  for (int l : toy.labels) pos += l;
  EXPECT_DOUBLE_EQ(m.meta.positive_weight, 40.0 / (2.0 * pos));
  EXPECT_DOUBLE_EQ(m.meta.negative_weight, 40.0 / (2.0 * (40 - pos)));
}

TEST(Training, SeededRunsAreBitwiseIdentical) {
  const auto toy = separable_set(150, 6);
  const auto a = qsumm::train_svm(toy.xs, toy.labels);
  const auto b = qsumm::train_svm(toy.xs, toy.labels);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
  Hyperparameters hp;
  hp.seed = 7;
  const auto c = qsumm::train_svm(toy.xs, toy.labels, hp);
  EXPECT_EQ(c.meta.seed, 7u);
}

TEST(Training, EpochObjectivesNonIncreasingWithPlainSchedule) {
  for (auto kind : {ModelKind::SVM, ModelKind::SVR}) {
    const auto toy = separable_set(200, 8);
    Hyperparameters hp;
    hp.lambda = 0.1;
    hp.eta0 = 1.0 / hp.lambda;  // plain 1/(lambda t), averaged iterate
    hp.epochs = 30;
    qsumm::LinearModel m;
    if (kind == ModelKind::SVM) {
      m = qsumm::train_svm(toy.xs, toy.labels, hp);
    } else {
      std::vector<double> ys;
      for (const auto& x : toy.xs) ys.push_back(0.3 * x.dense()[0] + 0.1);
      m = qsumm::train_svr(toy.xs, ys, hp);
    }
    const auto& obj = m.meta.epoch_objectives;
    ASSERT_EQ(obj.size(), 30u);
    for (std::size_t e = 1; e < obj.size(); ++e)
      EXPECT_LE(obj[e], obj[e - 1] + 1e-6) << qsumm::to_string(kind) << " epoch " << e;
  }
}

TEST(Subgradients, MatchCentralFiniteDifferences) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> u(0, 1);
  Hyperparameters hp;
  hp.lambda = 0.05;
  hp.epsilon = 0.1;
  const double h = 1e-6;
  int checked = 0;
  for (auto kind : {ModelKind::SVR, ModelKind::SVM}) {
    int n = 0;
    while (n < 50) {
      std::vector<double> w(5), x(5);
      for (auto& v : w) v = g(rng);
      for (auto& v : x) v = g(rng);
      double b = g(rng);
      const double y = kind == ModelKind::SVR ? u(rng) : static_cast<double>(rng() % 2);
      double pred = b;
      for (int i = 0; i < 5; ++i) pred += w[i] * x[i];
      // Skip points too close to a kink.
      const double kink = kind == ModelKind::SVR
                              ? std::min(std::abs(pred - y - hp.epsilon), std::abs(pred - y + hp.epsilon))
                              : std::abs(1.0 - (y > 0 ? 1.0 : -1.0) * pred);
      if (kink < 1e-3) continue;
      ++n;
      const auto grad = qsumm::example_subgradient(kind, w, b, x, y, hp);
      for (std::size_t i = 0; i <= w.size(); ++i) {
        auto wp = w, wm = w;
        double bp = b, bm = b;
        if (i < w.size()) {
          wp[i] += h;
          wm[i] -= h;
        } else {
          bp += h;
          bm -= h;
        }
        const double fd = (qsumm::example_objective(kind, wp, bp, x, y, hp) -
                           qsumm::example_objective(kind, wm, bm, x, y, hp)) /
                          (2 * h);
        EXPECT_NEAR(grad[i], fd, 1e-5);
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 2 * 50 * 6);
}

TEST(DecisionScore, Basics) {
  qsumm::LinearModel m;
  m.weights = {0.0, 1.0, 0.0, 0.0};
  m.bias = 0.25;
  EXPECT_EQ(qsumm::decision_score(m, dense_features({0.0, 0.0, 0.0})), 0.25);
  m.bias = 0.0;
  EXPECT_EQ(qsumm::decision_score(m, dense_features({0.0, 0.5, 0.0})), 0.5);
  EXPECT_THROW(qsumm::decision_score(m, dense_features({1.0})), qsumm::DimensionMismatch);
}

TEST(DecisionScore, BatchEqualsPerItem) {
  const auto toy = separable_set(50, 12);
  const auto m = qsumm::train_svm(toy.xs, toy.labels);
  const auto batch = qsumm::decision_scores(m, toy.xs);
  for (std::size_t i = 0; i < toy.xs.size(); ++i)
    EXPECT_EQ(batch[i], qsumm::decision_score(m, toy.xs[i]));
}

TEST(LinearModel, JsonRoundTrip) {
  const auto toy = separable_set(50, 13);
  auto m = qsumm::train_svm(toy.xs, toy.labels);
  m.vocab_hash = 0xdeadbeef01234567ULL;
  const auto r = qsumm::LinearModel::from_json(nlohmann::json::parse(m.to_json().dump()));
  EXPECT_EQ(r.kind, m.kind);
  EXPECT_EQ(r.weights, m.weights);
  EXPECT_EQ(r.bias, m.bias);
  EXPECT_EQ(r.vocab_hash, m.vocab_hash);
  EXPECT_EQ(r.hyper, m.hyper);
  EXPECT_EQ(r.meta.epoch_objectives, m.meta.epoch_objectives);
  auto bad = m.to_json();
  bad["kind"] = "mlp";
  EXPECT_THROW(qsumm::LinearModel::from_json(bad), qsumm::FormatError);
}
