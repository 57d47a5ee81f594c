#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <vector>

#include "qbek/errors.hpp"
#include "qbek/vocabulary.hpp"

using namespace qbek;

namespace {

std::vector<std::string> with_specials(std::vector<std::string> extra) {
  std::vector<std::string> entries = {"[CLS]", "[SEP]", "[PAD]", "[UNK]", "[MASK]"};
  entries.insert(entries.end(), extra.begin(), extra.end());
  return entries;
}

}  // namespace

TEST_CASE("ids follow entry order and specials resolve") {
  Vocabulary v = Vocabulary::from_entries(with_specials({"un", "##aff", "##able"}));
  CHECK(v.size() == 8);
  CHECK(v.cls_id() == 0);
  CHECK(v.mask_id() == 4);
  CHECK(v.find("un") == Index{5});
  CHECK(v.find("##aff") == Index{6});
  CHECK(!v.find("missing").has_value());
  CHECK(v.entry(7) == "##able");
}

TEST_CASE("duplicate entries are rejected with the line number") {
  CHECK_THROWS_AS(Vocabulary::from_entries(with_specials({"a", "a"})), ParseError);
}

TEST_CASE("missing special token is a config error") {
  CHECK_THROWS_AS(Vocabulary::from_entries({"[CLS]", "[SEP]", "[PAD]", "[UNK]", "x"}),
                  ConfigError);
}

TEST_CASE("content hash tracks entry content and order") {
  Vocabulary a = Vocabulary::from_entries(with_specials({"x", "y"}));
  Vocabulary b = Vocabulary::from_entries(with_specials({"y", "x"}));
  Vocabulary c = Vocabulary::from_entries(with_specials({"x", "y"}));
  CHECK(a.content_hash() == c.content_hash());
  CHECK(a.content_hash() != b.content_hash());
}

TEST_CASE("load from file assigns line-number ids") {
  std::string path = std::string(QBEK_TEST_DATA_DIR) + "/tmp_vocab.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "[PAD]\n[UNK]\n[CLS]\n[SEP]\n[MASK]\nhello\n##s\n";
  }
  Vocabulary v = Vocabulary::load(path);
  CHECK(v.pad_id() == 0);
  CHECK(v.cls_id() == 2);
  CHECK(v.find("hello") == Index{5});
  CHECK(v.max_piece_codepoints() == 6);  // "[MASK]" is the longest entry
  std::remove(path.c_str());
}

TEST_CASE("max piece length ignores the continuation prefix") {
  Vocabulary v = Vocabulary::from_entries(with_specials({"ab", "##abc"}));
  CHECK(v.max_piece_codepoints() == 6);  // "[MASK]" dominates
}
