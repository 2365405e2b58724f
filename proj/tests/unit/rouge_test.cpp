#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "qsumm/rouge.hpp"

using qsumm::RougeMode;
using qsumm::Tokens;

namespace {

std::vector<oracle::Unit> bag_units(const qsumm::SkipBigramBag& bag) {
  std::vector<oracle::Unit> out;
  for (const auto& [p, n] : bag.pairs)
    for (long i = 0; i < n; ++i) out.push_back(p);
  return out;
}

std::vector<oracle::Unit> oracle_pairs(const std::vector<Tokens>& s, int d) {
  auto u = oracle::enumerate_units(s, d, false);
  std::sort(u.begin(), u.end());
  return u;
}

}  // namespace

TEST(SkipBigrams, AllPairsWithinWindow) {
  const auto bag = qsumm::skip_bigrams(Tokens{"a", "b", "c"}, 4);
  EXPECT_EQ(bag.pair_total, 3);
  EXPECT_EQ(bag.pairs.size(), 3u);
  EXPECT_EQ(bag.pairs.count({"a", "c"}), 1u);
}

TEST(SkipBigrams, ZeroSkipIsPlainBigrams) {
  const auto bag = qsumm::skip_bigrams(Tokens{"a", "b"}, 0);
  EXPECT_EQ(bag.pair_total, 1);
  EXPECT_EQ(bag.pairs.at({"a", "b"}), 1);
  EXPECT_EQ(qsumm::skip_bigrams(Tokens{"a", "b", "c"}, 0).pair_total, 2);
}

TEST(SkipBigrams, NegativeSkipThrows) {
  EXPECT_THROW(qsumm::skip_bigrams(Tokens{"a"}, -1), qsumm::InvalidParameters);
}

TEST(SkipBigrams, TenTokenSentenceMatchesDoubleLoop) {
  const Tokens s{"a", "b", "a", "c", "d", "b", "e", "a", "f", "c"};
  const auto bag = qsumm::skip_bigrams(s, 4);
  EXPECT_EQ(bag_units(bag), oracle_pairs({s}, 4));
  EXPECT_EQ(bag.pair_total, 5 + 5 + 5 + 5 + 5 + 4 + 3 + 2 + 1);
}

TEST(SkipBigrams, NeverCrossSentences) {
  const std::vector<Tokens> ss{{"a", "b"}, {"c", "d"}};
  const auto bag = qsumm::skip_bigrams(ss, 4);
  EXPECT_EQ(bag.pair_total, 2);
  EXPECT_EQ(bag.pairs.count({"b", "c"}), 0u);
  EXPECT_EQ(bag_units(bag), oracle_pairs(ss, 4));
}

TEST(RougeSu, IdenticalAndDisjoint) {
  const Tokens a{"x", "y", "z", "w"};
  const auto s = qsumm::rouge_su(a, a);
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
  const auto d = qsumm::rouge_su(a, Tokens{"p", "q"});
  EXPECT_EQ(d.f1, 0.0);
  EXPECT_EQ(d.precision, 0.0);
}

TEST(RougeSu, EmptySideIsZero) {
  const auto s = qsumm::rouge_su(Tokens{}, Tokens{"a", "b"});
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(RougeSu, SkipBigramExpositionPair) {
  const Tokens cand{"police", "killed", "the", "gunman"};
  const Tokens ref{"the", "gunman", "police", "killed"};
  const auto s = qsumm::rouge_su(cand, ref, 4, RougeMode::SU);
  const auto o = oracle::rouge({cand}, {ref}, 4, true);
  EXPECT_NEAR(s.precision, o.p, 1e-12);
  EXPECT_NEAR(s.recall, o.r, 1e-12);
  EXPECT_NEAR(s.f1, o.f, 1e-12);
  // 2 shared skip-bigrams + 4 shared unigrams out of 10 units each side.
  EXPECT_NEAR(s.f1, 0.6, 1e-12);
  EXPECT_NEAR(qsumm::rouge_su(cand, ref, 4, RougeMode::S).f1, 2.0 / 6.0, 1e-12);
}

TEST(RougeSu, OracleEquivalenceOnRandomPairs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_tokens(rng, 1, 30, 8);
    const auto b = oracle::random_tokens(rng, 1, 30, 8);
    for (auto mode : {RougeMode::S, RougeMode::SU}) {
      const auto s = qsumm::rouge_su(a, b, 4, mode);
      const auto o = oracle::rouge({a}, {b}, 4, mode == RougeMode::SU);
      ASSERT_NEAR(s.precision, o.p, 1e-12);
      ASSERT_NEAR(s.recall, o.r, 1e-12);
      ASSERT_NEAR(s.f1, o.f, 1e-12);
    }
  }
}

TEST(RougeSu, ScoreInvariants) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_tokens(rng, 1, 20, 6);
    const auto b = oracle::random_tokens(rng, 1, 20, 6);
    const auto ab = qsumm::rouge_su(a, b);
    const auto ba = qsumm::rouge_su(b, a);
    EXPECT_EQ(ab.precision, ba.recall);
    EXPECT_EQ(ab.recall, ba.precision);
    for (double x : {ab.precision, ab.recall, ab.f1}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    if (ab.precision + ab.recall == 0)
      EXPECT_EQ(ab.f1, 0.0);
    else
      EXPECT_NEAR(ab.f1, 2 * ab.precision * ab.recall / (ab.precision + ab.recall), 1e-12);
    EXPECT_DOUBLE_EQ(qsumm::rouge_su(a, a).f1, 1.0);
  }
}

TEST(RougeSu, LargerSkipNeverShrinksBag) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_tokens(rng, 1, 30, 8);
    long prev = -1;
    for (int d = 0; d < 12; ++d) {
      const long size = qsumm::skip_bigrams(a, d).total(RougeMode::SU);
      EXPECT_GE(size, prev);
      prev = size;
    }
  }
}

TEST(RougeSuMulti, SingleReferenceReduces) {
  const std::vector<Tokens> cand{{"a", "b", "c"}};
  const std::vector<std::vector<Tokens>> refs{{{"a", "c", "d"}}};
  const auto m = qsumm::rouge_su_multi(cand, refs);
  const auto s = qsumm::rouge_su(std::span<const Tokens>(cand), std::span<const Tokens>(refs[0]));
  EXPECT_EQ(m.f1, s.f1);
  EXPECT_EQ(m.precision, s.precision);
}

TEST(RougeSuMulti, MatchingSecondReferenceIsPerfect) {
  const std::vector<Tokens> cand{{"a", "b", "c"}};
  const std::vector<std::vector<Tokens>> refs{{{"x", "y"}}, {{"a", "b", "c"}}, {{"a", "z"}}};
  EXPECT_DOUBLE_EQ(qsumm::rouge_su_multi(cand, refs).f1, 1.0);
}

TEST(RougeSuMulti, EqualsMaxOfIndependentCalls) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Tokens> cand{oracle::random_tokens(rng, 1, 15, 6)};
    std::vector<std::vector<Tokens>> refs;
    double best = -1;
    oracle::Prf best_prf;
    for (int r = 0; r < 3; ++r) {
      refs.push_back({oracle::random_tokens(rng, 1, 15, 6), oracle::random_tokens(rng, 1, 8, 6)});
      const auto o = oracle::rouge(cand, refs.back(), 4, true);
      if (o.f > best) {
        best = o.f;
        best_prf = o;
      }
    }
    const auto m = qsumm::rouge_su_multi(cand, refs);
    EXPECT_NEAR(m.f1, best_prf.f, 1e-12);
    EXPECT_NEAR(m.precision, best_prf.p, 1e-12);
    EXPECT_NEAR(m.recall, best_prf.r, 1e-12);
  }
}

TEST(RougeSuMulti, EmptyReferenceSetThrows) {
  const std::vector<Tokens> cand{{"a"}};
  const std::vector<std::vector<Tokens>> refs;
  EXPECT_THROW(qsumm::rouge_su_multi(cand, refs), qsumm::EmptyReferenceSet);
}

TEST(RougeMode, ParseAndPrint) {
  EXPECT_EQ(qsumm::parse_rouge_mode("SU"), RougeMode::SU);
  EXPECT_EQ(qsumm::parse_rouge_mode(qsumm::to_string(RougeMode::S)), RougeMode::S);
  EXPECT_THROW(qsumm::parse_rouge_mode("L"), qsumm::InvalidParameters);
}
