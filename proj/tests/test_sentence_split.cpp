#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "qbek/sentence_split.hpp"
#include "qbek/unicode.hpp"

using namespace qbek;

namespace {

std::vector<std::string> sentence_texts(const std::string& body) {
  std::vector<std::string> out;
  for (const Sentence& s : split_sentences(body))
    out.push_back(slice_utf8(body, s.char_start, s.char_end));
  return out;
}

void check_tiling(const std::string& body) {
  std::u32string cps = decode_utf8(body);
  std::vector<Sentence> sents = split_sentences(body);
  std::size_t prev_end = 0;
  std::vector<bool> covered(cps.size(), false);
  for (const Sentence& s : sents) {
    REQUIRE(s.char_start >= prev_end);
    REQUIRE(s.char_start < s.char_end);
    REQUIRE(s.char_end <= cps.size());
    for (std::size_t i = s.char_start; i < s.char_end; ++i) covered[i] = true;
    prev_end = s.char_end;
  }
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (!is_space(cps[i])) CHECK(covered[i]);
}

}  // namespace

TEST_CASE("basic two sentence split") {
  auto texts = sentence_texts("A cat. The dog ran.");
  REQUIRE(texts.size() == 2);
  CHECK(texts[0] == "A cat.");
  CHECK(texts[1] == "The dog ran.");
}

TEST_CASE("text without terminators is one sentence") {
  auto texts = sentence_texts("no terminator here");
  REQUIRE(texts.size() == 1);
  CHECK(texts[0] == "no terminator here");
}

TEST_CASE("empty and all-whitespace bodies give zero sentences") {
  CHECK(split_sentences("").empty());
  CHECK(split_sentences(" \t\n ").empty());
}

TEST_CASE("question and exclamation marks split too") {
  auto texts = sentence_texts("Is it here? Yes! It is.");
  REQUIRE(texts.size() == 3);
  CHECK(texts[1] == "Yes!");
}

TEST_CASE("terminator needs whitespace plus capital or digit") {
  CHECK(sentence_texts("pi is 3.14 exactly.").size() == 1);
  CHECK(sentence_texts("we ran. then we slept.").size() == 1);  // lowercase continuation
  auto texts = sentence_texts("See part 1. 2 is next.");
  REQUIRE(texts.size() == 2);
  CHECK(texts[1] == "2 is next.");
}

TEST_CASE("abbreviations and initials do not split") {
  CHECK(sentence_texts("Dr. Smith arrived. He sat.").size() == 2);
  CHECK(sentence_texts("J. R. Smith arrived. He sat.").size() == 2);
  CHECK(sentence_texts("See Fig. 3 for results. The end.").size() == 2);
  CHECK(sentence_texts("Results of Smith et al. Were good.").size() == 1);
}

TEST_CASE("terminator runs split once at the end of the run") {
  auto texts = sentence_texts("Really?! Yes. Wait... No.");
  REQUIRE(texts.size() == 4);
  CHECK(texts[0] == "Really?!");
  CHECK(texts[2] == "Wait...");  // the ellipsis splits at its last dot only
  CHECK(texts[3] == "No.");
}

TEST_CASE("surrounding whitespace is excluded from sentence ranges") {
  std::string body = "  One here.   Two here.  ";
  auto sents = split_sentences(body);
  REQUIRE(sents.size() == 2);
  CHECK(slice_utf8(body, sents[0].char_start, sents[0].char_end) == "One here.");
  CHECK(slice_utf8(body, sents[1].char_start, sents[1].char_end) == "Two here.");
}

TEST_CASE("ranges always tile the body on random constructions") {
  std::mt19937_64 rng(23);
  const std::vector<std::string> pieces = {
      "A cat sat",      "the dog ran",  "Dr",    "Smith",  "3.5",  "e.g",
      "results follow", "See Fig",      "2",     "WAIT",   "caf\xc3\xa9 life",
  };
  const std::vector<std::string> joins = {". ", "! ", "? ", " ", "... ", ".  ", "\n", ".\t"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string body;
    int n = static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      body += pieces[rng() % pieces.size()];
      body += joins[rng() % joins.size()];
    }
    check_tiling(body);
  }
}
