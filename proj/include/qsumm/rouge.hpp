#pragma once

// ROUGE-S / ROUGE-SU scoring over skip-bigrams with a bounded gap.
//
// A skip-bigram is an ordered pair (t_i, t_j), i < j, inside one sentence with
// at most d_skip intervening tokens (j - i - 1 <= d_skip). SU adds unigrams.

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsumm/error.hpp"
#include "qsumm/textproc.hpp"

namespace qsumm {

enum class RougeMode { S, SU };

inline constexpr int kDefaultSkipDistance = 4;

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore from_pr(double p, double r) {
    return {p, r, (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r)};
  }
};

struct SkipBigramBag {
  std::map<std::pair<std::string, std::string>, long> pairs;
  std::map<std::string, long> unigrams;
  long pair_total = 0;
  long unigram_total = 0;

  long total(RougeMode mode) const {
    return mode == RougeMode::SU ? pair_total + unigram_total : pair_total;
  }

  void add_sentence(std::span<const std::string> tokens, int d_skip) {
    const std::size_t n = tokens.size();
    const std::size_t window = static_cast<std::size_t>(d_skip) + 1;
    for (std::size_t i = 0; i < n; ++i) {
      ++unigrams[tokens[i]];
      ++unigram_total;
      const std::size_t last = std::min(n - 1, i + window);
      for (std::size_t j = i + 1; j <= last; ++j) {
        ++pairs[{tokens[i], tokens[j]}];
        ++pair_total;
      }
    }
  }
};

inline void check_skip(int d_skip) {
  if (d_skip < 0) throw InvalidParameters("skip distance must be >= 0");
}

inline SkipBigramBag skip_bigrams(std::span<const std::string> tokens,
                                  int d_skip) {
  check_skip(d_skip);
  SkipBigramBag bag;
  bag.add_sentence(tokens, d_skip);
  return bag;
}

/// Bag over several sentences; no pair crosses a sentence boundary.
inline SkipBigramBag skip_bigrams(std::span<const Tokens> sentences,
                                  int d_skip) {
  check_skip(d_skip);
  SkipBigramBag bag;
  for (const auto& s : sentences) bag.add_sentence(s, d_skip);
  return bag;
}

namespace rouge_detail {

// Sum over keys of min(count_a, count_b); both maps are key-ordered.
template <typename Map>
long clipped_overlap(const Map& a, const Map& b) {
  long m = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      m += std::min(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return m;
}

}  // namespace rouge_detail

inline RougeScore rouge_su(const SkipBigramBag& candidate,
                           const SkipBigramBag& reference, RougeMode mode) {
  const long cand_total = candidate.total(mode);
  const long ref_total = reference.total(mode);
  if (cand_total == 0 || ref_total == 0) return {};
  long matches = rouge_detail::clipped_overlap(candidate.pairs, reference.pairs);
  if (mode == RougeMode::SU)
    matches += rouge_detail::clipped_overlap(candidate.unigrams, reference.unigrams);
  // F1 as 2m / (|cand| + |ref|): one rounding, so exact fractions stay exact.
  RougeScore out;
  out.precision = static_cast<double>(matches) / static_cast<double>(cand_total);
  out.recall = static_cast<double>(matches) / static_cast<double>(ref_total);
  out.f1 = 2.0 * static_cast<double>(matches) / static_cast<double>(cand_total + ref_total);
  return out;
}

inline RougeScore rouge_su(std::span<const Tokens> candidate,
                           std::span<const Tokens> reference,
                           int d_skip = kDefaultSkipDistance,
                           RougeMode mode = RougeMode::SU) {
  return rouge_su(skip_bigrams(candidate, d_skip), skip_bigrams(reference, d_skip),
                  mode);
}

/// Single-sentence convenience form.
inline RougeScore rouge_su(std::span<const std::string> candidate,
                           std::span<const std::string> reference,
                           int d_skip = kDefaultSkipDistance,
                           RougeMode mode = RougeMode::SU) {
  return rouge_su(skip_bigrams(candidate, d_skip), skip_bigrams(reference, d_skip),
                  mode);
}

/// Best-F1 match over references; precision/recall come from that reference.
/// Ties keep the earliest reference.
inline RougeScore rouge_su_multi(const SkipBigramBag& candidate,
                                 std::span<const SkipBigramBag> references,
                                 RougeMode mode) {
  if (references.empty()) throw EmptyReferenceSet("no reference summaries");
  RougeScore best = rouge_su(candidate, references.front(), mode);
  for (std::size_t i = 1; i < references.size(); ++i) {
    const auto s = rouge_su(candidate, references[i], mode);
    if (s.f1 > best.f1) best = s;
  }
  return best;
}

inline RougeScore rouge_su_multi(std::span<const Tokens> candidate,
                                 std::span<const std::vector<Tokens>> references,
                                 int d_skip = kDefaultSkipDistance,
                                 RougeMode mode = RougeMode::SU) {
  if (references.empty()) throw EmptyReferenceSet("no reference summaries");
  std::vector<SkipBigramBag> bags;
  bags.reserve(references.size());
  for (const auto& r : references) bags.push_back(skip_bigrams(r, d_skip));
  return rouge_su_multi(skip_bigrams(candidate, d_skip), bags, mode);
}

inline std::string_view to_string(RougeMode m) { return m == RougeMode::S ? "S" : "SU"; }

inline RougeMode parse_rouge_mode(std::string_view s) {
  if (s == "S" || s == "s") return RougeMode::S;
  if (s == "SU" || s == "su") return RougeMode::SU;
  throw InvalidParameters("unknown ROUGE mode: " + std::string(s));
}

}  // namespace qsumm
