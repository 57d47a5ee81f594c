#include <doctest.h>

#include <sstream>

#include "qbek/dataset_io.hpp"
#include "qbek/errors.hpp"

using namespace qbek;

TEST_CASE("valid two-line file parses into two documents") {
  std::istringstream in(
      R"({"id":"d1","title":"First","body":"Text one.","keyphrases":["a"],"language":"en"})"
      "\n"
      R"({"id":"d2","title":null,"body":"Text two.","keyphrases":[],"language":"cs"})"
      "\n");
  auto docs = parse_dataset(in);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "d1");
  CHECK(docs[0].query == "First");
  CHECK(docs[0].gold_keyphrases == std::vector<std::string>{"a"});
  CHECK(!docs[1].query.has_value());
  CHECK(docs[1].language == "cs");
  CHECK(!docs[0].gold_spans.has_value());
}

TEST_CASE("missing body is a parse error with the line number") {
  std::istringstream in(
      R"({"id":"d1","body":"ok"})"
      "\n"
      R"({"id":"d2","title":"x"})"
      "\n");
  try {
    parse_dataset(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("body") != std::string::npos);
  }
}

TEST_CASE("malformed json reports its line") {
  std::istringstream in("{\"id\":\"d1\",\"body\":\"ok\"}\nnot json\n");
  try {
    parse_dataset(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("duplicate ids are rejected") {
  std::istringstream in(
      R"({"id":"same","body":"a"})"
      "\n"
      R"({"id":"same","body":"b"})"
      "\n");
  CHECK_THROWS_AS(parse_dataset(in), DuplicateId);
}

TEST_CASE("gold spans round trip and are validated") {
  Document doc;
  doc.id = "d1";
  doc.query = "Title";
  doc.body = "Deep networks excel.";
  doc.gold_keyphrases = {"deep networks"};
  doc.gold_spans = std::vector<GoldSpan>{{0, 13, 0}};

  std::ostringstream out;
  write_dataset({doc}, out);
  std::istringstream in(out.str());
  auto docs = parse_dataset(in);
  REQUIRE(docs.size() == 1);
  REQUIRE(docs[0].gold_spans.has_value());
  REQUIRE(docs[0].gold_spans->size() == 1);
  CHECK((*docs[0].gold_spans)[0] == GoldSpan{0, 13, 0});

  std::ostringstream again;
  write_dataset(docs, again);
  CHECK(again.str() == out.str());  // byte-identical rewrite
}

TEST_CASE("span with out-of-range keyphrase index is rejected") {
  std::istringstream in(
      R"({"id":"d","body":"x y","keyphrases":["x"],"gold_spans":[[0,1,4]]})"
      "\n");
  CHECK_THROWS_AS(parse_dataset(in), ParseError);
}

TEST_CASE("predictions round trip byte-identically") {
  DocumentPredictions p;
  p.id = "d1";
  p.keyphrases = {{"Neural Networks", "neural network", 0.875},
                  {"graphs", "graph", 0.5}};
  std::ostringstream out;
  write_predictions({p}, out);
  CHECK(out.str().find("\"neural network\"") != std::string::npos);

  std::string path = std::string(QBEK_TEST_DATA_DIR) + "/tmp_preds.jsonl";
  write_predictions({p}, path);
  auto parsed = parse_predictions(path);
  std::remove(path.c_str());
  REQUIRE(parsed.size() == 1);
  REQUIRE(parsed[0].keyphrases.size() == 2);
  CHECK(parsed[0].keyphrases[0].text == "Neural Networks");
  CHECK(parsed[0].keyphrases[0].normalized == "neural network");
  CHECK(parsed[0].keyphrases[0].score == 0.875);

  std::ostringstream again;
  write_predictions(parsed, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("empty lines are skipped, empty file gives empty dataset") {
  std::istringstream in("\n\n");
  CHECK(parse_dataset(in).empty());
}
