#include "multihop/dataset.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace multihop {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& context, const std::string& field,
                               const std::string& detail) {
  throw std::runtime_error("dataset schema error at " + context + ", field '" + field +
                           "': " + detail);
}

const json& require(const json& j, const char* field, const std::string& context) {
  if (!j.contains(field)) schema_error(context, field, "missing");
  return j.at(field);
}

std::string require_string(const json& j, const char* field, const std::string& context) {
  const json& v = require(j, field, context);
  if (!v.is_string()) schema_error(context, field, "expected a string");
  return v.get<std::string>();
}

}  // namespace

std::string sample_to_json_line(const Sample& s) {
  json j;
  j["id"] = s.id;
  j["query"] = json{{"relation", s.query.relation}, {"subject", s.query.subject}};
  j["answer"] = s.answer;
  j["candidates"] = s.candidates;
  json supports = json::array();
  for (const auto& d : s.supports) {
    supports.push_back(json{{"doc_id", d.doc_id}, {"text", d.text}, {"title", d.title}});
  }
  j["supports"] = std::move(supports);
  j["gold_paths"] = s.gold_paths;
  j["candidate_paths"] = s.candidate_paths;
  if (s.masked) {
    j["masked"] = true;
    j["mask_map"] = s.mask_map;
  }
  return j.dump();
}

Sample sample_from_json_line(const std::string& line, const std::string& context) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw std::runtime_error("dataset parse error at " + context + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("dataset line is not an object at " + context);

  static const std::set<std::string> known = {"id",         "query",   "answer",
                                              "candidates", "supports", "gold_paths",
                                              "candidate_paths", "masked", "mask_map"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (known.count(key) == 0) schema_error(context, key, "unknown field");
  }

  Sample s;
  s.id = require_string(j, "id", context);
  const json& q = require(j, "query", context);
  if (!q.is_object()) schema_error(context, "query", "expected an object");
  s.query.subject = require_string(q, "subject", context);
  s.query.relation = require_string(q, "relation", context);
  s.answer = require_string(j, "answer", context);

  const json& cands = require(j, "candidates", context);
  if (!cands.is_array()) schema_error(context, "candidates", "expected an array");
  for (const auto& c : cands) {
    if (!c.is_string()) schema_error(context, "candidates", "expected strings");
    s.candidates.push_back(c.get<std::string>());
  }

  const json& sups = require(j, "supports", context);
  if (!sups.is_array()) schema_error(context, "supports", "expected an array");
  for (const auto& d : sups) {
    SupportDoc doc;
    doc.doc_id = require_string(d, "doc_id", context);
    doc.title = require_string(d, "title", context);
    doc.text = require_string(d, "text", context);
    s.supports.push_back(std::move(doc));
  }

  const json& paths = require(j, "gold_paths", context);
  if (!paths.is_array()) schema_error(context, "gold_paths", "expected an array");
  for (const auto& chain : paths) {
    if (!chain.is_array()) schema_error(context, "gold_paths", "expected arrays of doc ids");
    std::vector<DocId> ids;
    for (const auto& d : chain) ids.push_back(d.get<std::string>());
    s.gold_paths.push_back(std::move(ids));
  }

  const json& cp = require(j, "candidate_paths", context);
  if (!cp.is_object()) schema_error(context, "candidate_paths", "expected an object");
  for (const auto& [cand, count] : cp.items()) {
    if (!count.is_number_integer()) schema_error(context, "candidate_paths", "expected integer counts");
    s.candidate_paths[cand] = count.get<int>();
  }

  if (j.contains("masked")) {
    if (!j.at("masked").is_boolean()) schema_error(context, "masked", "expected a boolean");
    s.masked = j.at("masked").get<bool>();
  }
  if (j.contains("mask_map")) {
    const json& mm = j.at("mask_map");
    if (!mm.is_object()) schema_error(context, "mask_map", "expected an object");
    for (const auto& [orig, ph] : mm.items()) {
      if (!ph.is_string()) schema_error(context, "mask_map", "expected string placeholders");
      s.mask_map[orig] = ph.get<std::string>();
    }
  }
  return s;
}

std::vector<Sample> read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  std::vector<Sample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    out.push_back(sample_from_json_line(line, path + ":" + std::to_string(lineno)));
  }
  return out;
}

void write_dataset(const std::vector<Sample>& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  for (const auto& s : samples) out << sample_to_json_line(s) << '\n';
}

std::vector<Prediction> read_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open predictions file: " + path);
  std::vector<Prediction> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string context = path + ":" + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error("predictions parse error at " + context + ": " + e.what());
    }
    Prediction p;
    p.id = require_string(j, "id", context);
    p.predicted = require_string(j, "predicted", context);
    if (j.contains("score")) {
      if (!j.at("score").is_number()) schema_error(context, "score", "expected a number");
      p.score = j.at("score").get<double>();
    }
    out.push_back(std::move(p));
  }
  return out;
}

void write_predictions(const std::vector<Prediction>& preds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write predictions file: " + path);
  for (const auto& p : preds) {
    json j;
    j["id"] = p.id;
    j["predicted"] = p.predicted;
    if (p.score) j["score"] = *p.score;
    out << j.dump() << '\n';
  }
}

}  // namespace multihop
