#include "qbek/porter.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace qbek {
namespace {

bool strong_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'u' || c == 'o';
}

// Positional vowel rule: a, e, i, o, u are vowels; 'y' is a vowel exactly
// when the preceding character is not one. Everything else is a consonant.
// An initial 'y' is masked to 'Y' by the caller, so index 0 is never 'y'.
std::vector<bool> vowel_map(std::string_view w) {
  std::vector<bool> v(w.size(), false);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (strong_vowel(w[i]))
      v[i] = true;
    else if (w[i] == 'y' && i > 0)
      v[i] = !v[i - 1];
  }
  return v;
}

// Measure: number of vowel-group to consonant-group transitions.
int measure(std::string_view w) {
  std::vector<bool> v = vowel_map(w);
  int m = 0;
  bool in_vowel_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (v[i]) {
      in_vowel_group = true;
    } else {
      if (in_vowel_group) ++m;
      in_vowel_group = false;
    }
  }
  return m;
}

bool has_vowel(std::string_view w) {
  std::vector<bool> v = vowel_map(w);
  for (bool b : v)
    if (b) return true;
  return false;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

// True when the whole string is one consonant run, one vowel, and one final
// consonant that is not w, x, or y (the *o condition applied to short stems).
bool short_cvc(std::string_view w) {
  if (w.size() < 3) return false;
  char last = w.back();
  if (strong_vowel(last) || last == 'w' || last == 'x' || last == 'y') return false;
  char mid = w[w.size() - 2];
  if (!(strong_vowel(mid) || mid == 'y')) return false;
  std::string_view head = w.substr(0, w.size() - 2);
  if (strong_vowel(head.front())) return false;
  for (std::size_t i = 1; i < head.size(); ++i)
    if (strong_vowel(head[i]) || head[i] == 'y') return false;
  return true;
}

struct Rule {
  std::string_view suffix, replacement;
};

// Applies the longest listed suffix that leaves a non-empty stem; when the
// stem's measure clears the threshold the suffix is rewritten. A matched
// suffix consumes the step even if the measure test fails.
void rewrite_longest(std::string& w, std::initializer_list<Rule> rules, int min_measure) {
  const Rule* best = nullptr;
  for (const Rule& r : rules) {
    if (w.size() > r.suffix.size() && ends_with(w, r.suffix) &&
        (!best || r.suffix.size() > best->suffix.size()))
      best = &r;
  }
  if (!best) return;
  std::string_view stem(w.data(), w.size() - best->suffix.size());
  if (measure(stem) > min_measure) {
    w.resize(stem.size());
    w += best->replacement;
  }
}

void step1a(std::string& w) {
  if (w.size() > 4 && ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (w.size() > 3 && ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (w.size() > 2 && w.back() == 's' && w[w.size() - 2] != 's') {
    w.pop_back();
  }
}

void step1b(std::string& w) {
  if (w.size() > 3 && ends_with(w, "eed")) {
    if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
    return;
  }
  std::size_t drop = 0;
  if (w.size() > 2 && ends_with(w, "ed"))
    drop = 2;
  else if (w.size() > 3 && ends_with(w, "ing"))
    drop = 3;
  if (drop == 0) return;
  std::string_view stem(w.data(), w.size() - drop);
  if (!has_vowel(stem)) return;
  w.resize(stem.size());
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w += 'e';
  } else if (w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2]) {
    char c = w.back();
    if (!strong_vowel(c) && c != 'y' && c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (short_cvc(w)) {
    w += 'e';
  }
}

void step1c(std::string& w) {
  if (w.size() > 1 && w.back() == 'y' &&
      has_vowel(std::string_view(w).substr(0, w.size() - 1)))
    w.back() = 'i';
}

void step2(std::string& w) {
  rewrite_longest(w,
                  {{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
                   {"anci", "ance"},   {"izer", "ize"},    {"bli", "ble"},
                   {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
                   {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
                   {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
                   {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
                   {"iviti", "ive"},   {"biliti", "ble"},  {"logi", "log"}},
                  0);
}

void step3(std::string& w) {
  rewrite_longest(w,
                  {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
                   {"ical", "ic"},  {"ful", ""},   {"ness", ""}},
                  0);
}

void step4(std::string& w) {
  static constexpr std::array<std::string_view, 18> kSuffixes = {
      "al", "ance", "ence", "er",    "ic",   "able", "ible", "ant", "ement",
      "ment", "ent", "ou",  "ism",  "ate",  "iti",  "ous",  "ive", "ize"};
  std::string_view best;
  for (std::string_view s : kSuffixes)
    if (w.size() > s.size() && ends_with(w, s) && s.size() > best.size()) best = s;
  if (!best.empty()) {
    std::string_view stem(w.data(), w.size() - best.size());
    if (measure(stem) > 1) w.resize(stem.size());
    return;
  }
  if (w.size() > 4 && ends_with(w, "ion") &&
      (w[w.size() - 4] == 's' || w[w.size() - 4] == 't')) {
    std::string_view stem(w.data(), w.size() - 3);
    if (measure(stem) > 1) w.resize(stem.size());
  }
}

void step5a(std::string& w) {
  if (w.size() <= 1 || w.back() != 'e') return;
  std::string_view stem(w.data(), w.size() - 1);
  int m = measure(stem);
  if (m > 1 || (m == 1 && !short_cvc(stem))) w.pop_back();
}

void step5b(std::string& w) {
  if (ends_with(w, "ll") && measure(w) > 1) w.pop_back();
}

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() < 3) return std::string(word);
  std::string w(word);
  bool masked_y = w[0] == 'y';
  if (masked_y) w[0] = 'Y';
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  if (masked_y) w[0] = 'y';
  return w;
}

}  // namespace qbek
