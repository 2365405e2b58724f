#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qsumm/annotate.hpp"

using qsumm::AnnotationStrategy;
using qsumm::Label;
using qsumm::Tokens;

namespace {

qsumm::PreparedQuestion make_question(std::vector<std::string> sentences,
                                      std::vector<std::string> ideals,
                                      std::string body = "What is it?") {
  qsumm::QuestionRecord q;
  q.id = "q";
  q.body = std::move(body);
  q.ideal_answers = std::move(ideals);
  for (std::size_t i = 0; i < sentences.size(); ++i) q.sentences.push_back({i, "d", sentences[i]});
  return qsumm::prepare_question(q, qsumm::Preprocessor{});
}

std::vector<Label> L(std::initializer_list<int> xs) {
  std::vector<Label> out;
  for (int x : xs) out.emplace_back(x < 0 ? Label{} : Label{x});
  return out;
}

std::vector<Tokens> stems_of(const qsumm::PreparedQuestion& q) {
  std::vector<Tokens> out;
  for (const auto& s : q.sentences) out.push_back(s.stems);
  return out;
}

}  // namespace

TEST(ScoreSentences, VerbatimAndDisjoint) {
  const auto q = make_question({"Bazex syndrome is a rare disorder.", "Cats purr loudly."},
                               {"Bazex syndrome is a rare disorder."});
  const auto s = qsumm::score_sentences(q);
  EXPECT_DOUBLE_EQ(s[0], 1.0);
  EXPECT_EQ(s[1], 0.0);
}

TEST(ScoreSentences, EqualsDirectScorerCalls) {
  const qsumm::Preprocessor pre;
  const std::vector<std::string> sents{
      "Metformin lowers hepatic glucose production.",
      "It is the first-line drug for type 2 diabetes.",
      "Lactic acidosis is a rare adverse effect.",
      "Dosing is adjusted for renal function.",
      "The drug was discovered in the 1920s."};
  const std::vector<std::string> ideals{
      "Metformin is the first-line drug for type 2 diabetes. It lowers glucose production.",
      "A rare adverse effect is lactic acidosis."};
  const auto q = make_question(sents, ideals);
  const auto got = qsumm::score_sentences(q);
  std::vector<std::vector<Tokens>> refs;
  for (const auto& i : ideals) refs.push_back(pre.rouge_sentences(i));
  for (std::size_t i = 0; i < sents.size(); ++i) {
    const std::vector<Tokens> cand{qsumm::Preprocessor::all_stems(qsumm::tokenize(sents[i]))};
    double best = 0;
    for (const auto& r : refs) best = std::max(best, oracle::rouge(cand, r, 4, true).f);
    EXPECT_NEAR(got[i], best, 1e-12) << i;
  }
}

TEST(ScoreSentences, NoReferencesThrows) {
  const auto q = make_question({"Something here."}, {});
  EXPECT_THROW(qsumm::score_sentences(q), qsumm::EmptyReferenceSet);
}

TEST(AnnotateTopK, Examples) {
  const std::vector<double> s{0.5, 0.2, 0.9, 0.1};
  EXPECT_EQ(qsumm::annotate_topk(s, 3), L({1, 1, 1, 0}));
  const std::vector<double> two{0.1, 0.2};
  EXPECT_EQ(qsumm::annotate_topk(two, 3), L({1, 1}));
  EXPECT_THROW(qsumm::annotate_topk(s, 0), qsumm::InvalidParameters);
  EXPECT_EQ(qsumm::annotate_topk(s, 1000), L({1, 1, 1, 1}));
}

TEST(AnnotateTopK, TiesGoToLowerIndexExhaustive) {
  // Every arrangement of {0.9, 0.5, 0.5, 0.5, 0.1}: the top score plus the two
  // lowest-index 0.5 entries are selected.
  std::vector<double> base{0.1, 0.5, 0.5, 0.5, 0.9};
  std::sort(base.begin(), base.end());
  do {
    const auto got = qsumm::annotate_topk(base, 3);
    std::vector<Label> want(base.size(), 0);
    int mids = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i] == 0.9) want[i] = 1;
      if (base[i] == 0.5 && mids < 2) {
        want[i] = 1;
        ++mids;
      }
    }
    EXPECT_EQ(got, want);
  } while (std::next_permutation(base.begin(), base.end()));
}

TEST(AnnotateThreshold, StrictInequality) {
  const std::vector<double> s{0.15, 0.10, 0.0, 1.0};
  EXPECT_EQ(qsumm::annotate_threshold(s, 0.1), L({1, 0, 0, 1}));
  EXPECT_EQ(qsumm::annotate_threshold(s, 1.0), L({0, 0, 0, 0}));
  EXPECT_THROW(qsumm::annotate_threshold(s, 1.5), qsumm::InvalidParameters);
}

TEST(AnnotateThreshold, MatchesElementwiseComparison) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> s(500);
  for (auto& x : s) x = u(rng);
  const double t = 0.37;
  const auto got = qsumm::annotate_threshold(s, t);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(*got[i], s[i] > t ? 1 : 0);
}

TEST(AnnotateDualThreshold, Rule) {
  const std::vector<double> s{0.8, 0.2, 0.5, 0.7, 0.3};
  EXPECT_EQ(qsumm::annotate_dual_threshold(s, 0.7, 0.3), L({1, 0, -1, -1, -1}));
  EXPECT_THROW(qsumm::annotate_dual_threshold(s, 0.3, 0.3), qsumm::InvalidParameters);
}

TEST(Strategy, IdsAndValidation) {
  EXPECT_EQ(AnnotationStrategy::top_k(3).id(), "topk-3");
  EXPECT_EQ(AnnotationStrategy::thresholded(0.1).id(), "threshold-0.1");
  EXPECT_EQ(AnnotationStrategy::marcu().id(), "marcu");
  EXPECT_EQ(AnnotationStrategy::dual(0.7, 0.3).id(), "dual-0.7-0.3");
  EXPECT_THROW(AnnotationStrategy::dual(0.3, 0.7).validate(), qsumm::InvalidParameters);
  EXPECT_THROW(AnnotationStrategy::top_k(0).validate(), qsumm::InvalidParameters);
  EXPECT_EQ(qsumm::parse_strategy_kind("dual"), AnnotationStrategy::Kind::DualThreshold);
  EXPECT_THROW(qsumm::parse_strategy_kind("best"), qsumm::InvalidParameters);
}

TEST(MarcuExtract, AbstractEqualToPoolKeepsEverything) {
  const std::vector<Tokens> s{{"insulin", "glucos"}, {"muscl", "uptak"}, {"liver", "glycogen"}};
  Tokens abstract;
  for (const auto& x : s) abstract.insert(abstract.end(), x.begin(), x.end());
  const auto e = qsumm::marcu_extract(abstract, s);
  EXPECT_EQ(e.retained, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_NEAR(e.similarity_trace.back(), 1.0, 1e-12);
}

TEST(MarcuExtract, SingleSentenceRetained) {
  const std::vector<Tokens> s{{"unrelated", "word"}};
  const auto e = qsumm::marcu_extract(Tokens{"insulin"}, s);
  EXPECT_EQ(e.retained, (std::vector<std::size_t>{0}));
}

TEST(MarcuExtract, DegenerateAbstractThrows) {
  const std::vector<Tokens> s{{"a"}};
  EXPECT_THROW(qsumm::marcu_extract(Tokens{}, s), qsumm::DegenerateAbstract);
}

TEST(MarcuExtract, NoiseSentenceRemovedAndResultLocallyOptimal) {
  const auto q = make_question(
      {"Insulin regulates blood glucose.", "Glucose uptake occurs in muscle cells.",
       "Muscle cells respond to insulin signalling.", "The weather in Paris was rainy yesterday."},
      {"Insulin regulates glucose uptake in muscle cells."});
  const auto sents = stems_of(q);
  const auto e = qsumm::marcu_extract(q.abstract_stems, sents);
  EXPECT_TRUE(std::find(e.retained.begin(), e.retained.end(), 3u) == e.retained.end());
  ASSERT_FALSE(e.retained.empty());

  // Exhaustive oracle over all 15 non-empty subsets.
  const double sim_e = oracle::extract_similarity(q.abstract_stems, sents, e.retained);
  EXPECT_NEAR(sim_e, e.similarity_trace.back(), 1e-12);
  double best_any = 0;
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < 4; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    best_any = std::max(best_any, oracle::extract_similarity(q.abstract_stems, sents, subset));
    // Local optimality: dropping one retained sentence never helps.
    if (subset.size() + 1 == e.retained.size() &&
        std::includes(e.retained.begin(), e.retained.end(), subset.begin(), subset.end()))
      EXPECT_LE(oracle::extract_similarity(q.abstract_stems, sents, subset), sim_e + 1e-12);
  }
  // Removing the noise sentence from the full pool is an improvement.
  EXPECT_GT(oracle::extract_similarity(q.abstract_stems, sents, {0, 1, 2}),
            oracle::extract_similarity(q.abstract_stems, sents, {0, 1, 2, 3}));
  EXPECT_LE(sim_e, best_any + 1e-12);
}

TEST(MarcuExtract, TraceStrictlyIncreasingAndMatchesOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Tokens> s;
    const std::size_t n = 1 + rng() % 10;
    for (std::size_t i = 0; i < n; ++i) s.push_back(oracle::random_tokens(rng, 1, 8, 12));
    const auto abstract = oracle::random_tokens(rng, 3, 12, 12);
    const auto a = qsumm::marcu_extract(abstract, s);
    const auto b = qsumm::marcu_extract(abstract, s);
    EXPECT_EQ(a.retained, b.retained);
    ASSERT_FALSE(a.retained.empty());
    for (std::size_t i = 1; i < a.similarity_trace.size(); ++i)
      EXPECT_GT(a.similarity_trace[i], a.similarity_trace[i - 1]);
    EXPECT_EQ(a.similarity_trace.size(), n - a.retained.size() + 1);
    const double sim = oracle::extract_similarity(abstract, s, a.retained);
    EXPECT_NEAR(sim, a.similarity_trace.back(), 1e-9);
    if (a.retained.size() > 1) {
      for (std::size_t drop = 0; drop < a.retained.size(); ++drop) {
        auto rest = a.retained;
        rest.erase(rest.begin() + static_cast<long>(drop));
        EXPECT_LE(oracle::extract_similarity(abstract, s, rest), sim + 1e-9);
      }
    }
  }
}

TEST(AnnotateQuestion, ThresholdLabelsConsistentWithScores) {
  const auto q = make_question({"Insulin regulates blood glucose.", "Cats purr.",
                                "Insulin is a hormone made by the pancreas."},
                               {"Insulin is a hormone that regulates blood glucose."});
  const auto a = qsumm::annotate_question(q, AnnotationStrategy::thresholded(0.1));
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    EXPECT_EQ(*a.labels[i] == 1, a.su4_f1[i] > 0.1);
  EXPECT_FALSE(a.fell_back);
}

TEST(AnnotateQuestion, MarcuFallsBackOnDegenerateAbstract) {
  const auto q = make_question({"Insulin regulates blood glucose.", "Cats purr."},
                               {"It is what it is."});  // only stopwords
  const auto a = qsumm::annotate_question(q, AnnotationStrategy::marcu());
  EXPECT_TRUE(a.fell_back);
  const auto t = qsumm::annotate_threshold(a.su4_f1, 0.1);
  EXPECT_EQ(a.labels, t);
}

TEST(AnnotateQuestion, MarcuLabelsRetainedSentences) {
  const auto q = make_question(
      {"Insulin regulates blood glucose.", "The weather in Paris was rainy yesterday."},
      {"Insulin regulates blood glucose levels."});
  const auto a = qsumm::annotate_question(q, AnnotationStrategy::marcu());
  EXPECT_EQ(a.labels, L({1, 0}));
}
