#include "qbek/sentence_split.hpp"

#include <string>
#include <unordered_set>

#include "qbek/unicode.hpp"

namespace qbek {
namespace {

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool is_ascii_alpha(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> set = {
      "mr",  "mrs",  "ms",  "dr",   "prof", "sr",   "jr",   "st",  "etc",
      "eg",  "ie",   "vs",  "al",   "cf",   "ca",   "fig",  "figs", "eq",
      "eqs", "sec",  "secs", "no",  "nos",  "vol",  "vols", "pp",  "resp",
      "approx", "dept", "univ", "inc", "ltd", "co",  "corp", "est"};
  return set;
}

// The word of ASCII letters immediately before position i (exclusive).
std::string preceding_word(const std::u32string& cps, std::size_t i) {
  std::size_t begin = i;
  while (begin > 0 && is_ascii_alpha(cps[begin - 1])) --begin;
  std::string word;
  for (std::size_t j = begin; j < i; ++j) word.push_back(static_cast<char>(to_lower(cps[j])));
  return word;
}

bool splits_here(const std::u32string& cps, std::size_t i) {
  if (!is_terminator(cps[i])) return false;
  if (i + 1 >= cps.size() || !is_space(cps[i + 1])) return false;
  std::size_t next = i + 1;
  while (next < cps.size() && is_space(cps[next])) ++next;
  if (next == cps.size()) return false;
  if (!is_upper(cps[next]) && !is_digit(cps[next])) return false;
  if (cps[i] == U'.') {
    std::string word = preceding_word(cps, i);
    if (word.size() == 1) return false;  // initials like "J. Smith"
    if (abbreviations().count(word)) return false;
  }
  return true;
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view body) {
  std::u32string cps = decode_utf8(body);
  std::vector<Sentence> sentences;
  std::size_t start = 0;
  while (start < cps.size() && is_space(cps[start])) ++start;
  if (start == cps.size()) return sentences;
  for (std::size_t i = start; i < cps.size(); ++i) {
    if (!splits_here(cps, i)) continue;
    sentences.push_back({start, i + 1});
    start = i + 1;
    while (start < cps.size() && is_space(cps[start])) ++start;
    i = start - 1;  // loop increment lands on start; start >= old i + 1 >= 1
  }
  std::size_t end = cps.size();
  while (end > start && is_space(cps[end - 1])) --end;
  if (end > start) sentences.push_back({start, end});
  return sentences;
}

}  // namespace qbek
