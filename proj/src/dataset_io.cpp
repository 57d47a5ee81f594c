#include "qbek/dataset_io.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "qbek/errors.hpp"

namespace qbek {

using nlohmann::json;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptFile(path, "cannot open file");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorruptFile(path, "cannot open file for writing");
  return out;
}

json parse_line(const std::string& line, std::size_t line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ParseError(line_no, "invalid JSON");
  if (!j.is_object()) throw ParseError(line_no, "expected a JSON object");
  return j;
}

std::string require_string(const json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(line_no, std::string("missing field \"") + key + "\"");
  if (!it->is_string()) throw ParseError(line_no, std::string("field \"") + key + "\" must be a string");
  return it->get<std::string>();
}

Document parse_document(const json& j, std::size_t line_no) {
  Document doc;
  doc.id = require_string(j, "id", line_no);
  doc.body = require_string(j, "body", line_no);
  if (auto it = j.find("title"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError(line_no, "field \"title\" must be a string or null");
    doc.query = it->get<std::string>();
  }
  if (auto it = j.find("keyphrases"); it != j.end()) {
    if (!it->is_array()) throw ParseError(line_no, "field \"keyphrases\" must be an array");
    for (const json& kp : *it) {
      if (!kp.is_string()) throw ParseError(line_no, "keyphrases must be strings");
      doc.gold_keyphrases.push_back(kp.get<std::string>());
    }
  }
  if (auto it = j.find("language"); it != j.end()) {
    if (!it->is_string()) throw ParseError(line_no, "field \"language\" must be a string");
    doc.language = it->get<std::string>();
  }
  if (auto it = j.find("gold_spans"); it != j.end()) {
    if (!it->is_array()) throw ParseError(line_no, "field \"gold_spans\" must be an array");
    std::vector<GoldSpan> spans;
    for (const json& s : *it) {
      if (!s.is_array() || s.size() != 3 || !s[0].is_number_unsigned() ||
          !s[1].is_number_unsigned() || !s[2].is_number_unsigned())
        throw ParseError(line_no, "gold_spans entries must be [start, end, kp_index]");
      GoldSpan span{s[0].get<std::size_t>(), s[1].get<std::size_t>(), s[2].get<std::size_t>()};
      if (span.char_start >= span.char_end)
        throw ParseError(line_no, "gold span must have start < end");
      if (span.keyphrase_index >= doc.gold_keyphrases.size())
        throw ParseError(line_no, "gold span keyphrase index out of range");
      spans.push_back(span);
    }
    doc.gold_spans = std::move(spans);
  }
  return doc;
}

}  // namespace

std::vector<Document> parse_dataset(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Document doc = parse_document(parse_line(line, line_no), line_no);
    if (!seen.insert(doc.id).second) throw DuplicateId(doc.id);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> parse_dataset(const std::string& path) {
  std::ifstream in = open_input(path);
  return parse_dataset(in);
}

void write_dataset(const std::vector<Document>& docs, std::ostream& out) {
  for (const Document& doc : docs) {
    json j = json::object();
    j["id"] = doc.id;
    j["title"] = doc.query ? json(*doc.query) : json(nullptr);
    j["body"] = doc.body;
    j["keyphrases"] = doc.gold_keyphrases;
    j["language"] = doc.language;
    if (doc.gold_spans) {
      json spans = json::array();
      for (const GoldSpan& s : *doc.gold_spans)
        spans.push_back({s.char_start, s.char_end, s.keyphrase_index});
      j["gold_spans"] = std::move(spans);
    }
    out << j.dump() << '\n';
  }
}

void write_dataset(const std::vector<Document>& docs, const std::string& path) {
  std::ofstream out = open_output(path);
  write_dataset(docs, out);
}

std::vector<DocumentPredictions> parse_predictions(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<DocumentPredictions> all;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j = parse_line(line, line_no);
    DocumentPredictions preds;
    preds.id = require_string(j, "id", line_no);
    if (!seen.insert(preds.id).second) throw DuplicateId(preds.id);
    auto it = j.find("keyphrases");
    if (it == j.end() || !it->is_array())
      throw ParseError(line_no, "missing \"keyphrases\" array");
    for (const json& kp : *it) {
      if (!kp.is_object()) throw ParseError(line_no, "keyphrases must be objects");
      PredictedKeyphrase p;
      p.text = require_string(kp, "text", line_no);
      p.normalized = require_string(kp, "normalized", line_no);
      auto score = kp.find("score");
      if (score == kp.end() || !score->is_number())
        throw ParseError(line_no, "keyphrase missing numeric \"score\"");
      p.score = score->get<double>();
      preds.keyphrases.push_back(std::move(p));
    }
    all.push_back(std::move(preds));
  }
  return all;
}

void write_predictions(const std::vector<DocumentPredictions>& preds, std::ostream& out) {
  for (const DocumentPredictions& doc : preds) {
    json items = json::array();
    for (const PredictedKeyphrase& kp : doc.keyphrases) {
      json item = json::object();
      item["text"] = kp.text;
      item["normalized"] = kp.normalized;
      item["score"] = kp.score;
      items.push_back(std::move(item));
    }
    json j = json::object();
    j["id"] = doc.id;
    j["keyphrases"] = std::move(items);
    out << j.dump() << '\n';
  }
}

void write_predictions(const std::vector<DocumentPredictions>& preds, const std::string& path) {
  std::ofstream out = open_output(path);
  write_predictions(preds, out);
}

}  // namespace qbek
