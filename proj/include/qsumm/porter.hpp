#pragma once

// Porter suffix-stripping stemmer, original 1980 rule set (steps 1a to 5b).
// No length-2 short-circuit and none of the later "Porter2" or reference-C
// departures (bli->ble, logi->log).

#include <array>
#include <string>
#include <string_view>

namespace qsumm {

namespace porter_detail {

inline bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// A 'y' is a consonant at the start of a word or after a vowel.
inline bool is_consonant(std::string_view w, std::size_t i) {
  if (is_vowel_letter(w[i])) return false;
  if (w[i] != 'y') return true;
  return i == 0 || !is_consonant(w, i - 1);
}

// m in [C](VC){m}[V]
inline int measure(std::string_view w) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool cons = is_consonant(w, i);
    if (cons && prev_vowel) ++m;
    prev_vowel = !cons;
  }
  return m;
}

inline bool contains_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

inline bool ends_double_consonant(std::string_view w) {
  const auto n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends consonant-vowel-consonant and the last letter is not w, x or y.
inline bool ends_cvc(std::string_view w) {
  const auto n = w.size();
  if (n < 3) return false;
  const char last = w[n - 1];
  return is_consonant(w, n - 3) && !is_consonant(w, n - 2) &&
         is_consonant(w, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.substr(w.size() - suffix.size()) == suffix;
}

using Condition = bool (*)(std::string_view);

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  Condition condition;
};

inline bool m_gt_0(std::string_view s) { return measure(s) > 0; }
inline bool m_gt_1(std::string_view s) { return measure(s) > 1; }
inline bool m_gt_1_and_s_or_t(std::string_view s) {
  return measure(s) > 1 && !s.empty() && (s.back() == 's' || s.back() == 't');
}

// Only the rule with the longest matching suffix is considered; if its
// condition fails the word is left alone. Rule lists are ordered so the first
// suffix match is the longest one.
template <std::size_t N>
bool apply_first_match(std::string& w, const std::array<Rule, N>& rules) {
  for (const auto& r : rules) {
    if (!ends_with(w, r.suffix)) continue;
    std::string_view stem(w.data(), w.size() - r.suffix.size());
    if (r.condition == nullptr || r.condition(stem)) {
      w.resize(stem.size());
      w.append(r.replacement);
      return true;
    }
    return false;
  }
  return false;
}

inline void step1a(std::string& w) {
  static constexpr std::array<Rule, 4> rules{{
      {"sses", "ss", nullptr},
      {"ies", "i", nullptr},
      {"ss", "ss", nullptr},
      {"s", "", nullptr},
  }};
  apply_first_match(w, rules);
}

inline void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
    return;
  }
  std::size_t cut = 0;
  if (ends_with(w, "ed"))
    cut = 2;
  else if (ends_with(w, "ing"))
    cut = 3;
  if (cut == 0) return;
  std::string_view stem(w.data(), w.size() - cut);
  if (!contains_vowel(stem)) return;
  w.resize(stem.size());

  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w)) {
    const char last = w.back();
    if (last != 'l' && last != 's' && last != 'z') w.pop_back();
  } else if (measure(w) == 1 && ends_cvc(w)) {
    w.push_back('e');
  }
}

inline void step1c(std::string& w) {
  if (ends_with(w, "y") &&
      contains_vowel(std::string_view(w).substr(0, w.size() - 1)))
    w.back() = 'i';
}

inline void step2(std::string& w) {
  static constexpr std::array<Rule, 20> rules{{
      {"ational", "ate", m_gt_0}, {"tional", "tion", m_gt_0},
      {"enci", "ence", m_gt_0},   {"anci", "ance", m_gt_0},
      {"izer", "ize", m_gt_0},    {"abli", "able", m_gt_0},
      {"alli", "al", m_gt_0},     {"entli", "ent", m_gt_0},
      {"eli", "e", m_gt_0},       {"ousli", "ous", m_gt_0},
      {"ization", "ize", m_gt_0}, {"ation", "ate", m_gt_0},
      {"ator", "ate", m_gt_0},    {"alism", "al", m_gt_0},
      {"iveness", "ive", m_gt_0}, {"fulness", "ful", m_gt_0},
      {"ousness", "ous", m_gt_0}, {"aliti", "al", m_gt_0},
      {"iviti", "ive", m_gt_0},   {"biliti", "ble", m_gt_0},
  }};
  apply_first_match(w, rules);
}

inline void step3(std::string& w) {
  static constexpr std::array<Rule, 7> rules{{
      {"icate", "ic", m_gt_0},
      {"ative", "", m_gt_0},
      {"alize", "al", m_gt_0},
      {"iciti", "ic", m_gt_0},
      {"ical", "ic", m_gt_0},
      {"ful", "", m_gt_0},
      {"ness", "", m_gt_0},
  }};
  apply_first_match(w, rules);
}

inline void step4(std::string& w) {
  static constexpr std::array<Rule, 19> rules{{
      {"al", "", m_gt_1},    {"ance", "", m_gt_1},
      {"ence", "", m_gt_1},  {"er", "", m_gt_1},
      {"ic", "", m_gt_1},    {"able", "", m_gt_1},
      {"ible", "", m_gt_1},  {"ant", "", m_gt_1},
      {"ement", "", m_gt_1}, {"ment", "", m_gt_1},
      {"ent", "", m_gt_1},   {"ion", "", m_gt_1_and_s_or_t},
      {"ou", "", m_gt_1},    {"ism", "", m_gt_1},
      {"ate", "", m_gt_1},   {"iti", "", m_gt_1},
      {"ous", "", m_gt_1},   {"ive", "", m_gt_1},
      {"ize", "", m_gt_1},
  }};
  apply_first_match(w, rules);
}

inline void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::string_view stem(w.data(), w.size() - 1);
  const int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

inline void step5b(std::string& w) {
  if (ends_with(w, "ll") && measure(w) > 1) w.pop_back();
}

}  // namespace porter_detail

/// Stems one lowercase token. Non-letter bytes (digits, UTF-8 continuation
/// bytes) are treated as consonants.
inline std::string porter_stem(std::string_view token) {
  using namespace porter_detail;
  std::string w(token);
  if (w.empty()) return w;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace qsumm
