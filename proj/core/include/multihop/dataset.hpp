#pragma once
// The induced-sample record and its JSON Lines serialization.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multihop/kb.hpp"
#include "multihop/text.hpp"

namespace multihop {

struct SupportDoc {
  std::string doc_id;
  std::string title;
  std::string text;  // canonical tokenized text (tokens joined by single spaces)

  TokenSeq tokens() const { return tokenize(text); }
  bool operator==(const SupportDoc&) const = default;
};

struct Sample {
  std::string id;
  Query query;
  std::string answer;  // surface form
  std::vector<std::string> candidates;
  std::vector<SupportDoc> supports;
  std::vector<std::vector<DocId>> gold_paths;      // chains for the correct answer
  std::map<std::string, int> candidate_paths;      // candidate surface -> chain count
  bool masked = false;
  std::map<std::string, std::string> mask_map;     // original -> placeholder

  bool operator==(const Sample&) const = default;
};

// Canonical single-line JSON encoding (sorted keys, no extra whitespace).
std::string sample_to_json_line(const Sample& s);
Sample sample_from_json_line(const std::string& line, const std::string& context);

std::vector<Sample> read_dataset(const std::string& path);
void write_dataset(const std::vector<Sample>& samples, const std::string& path);

struct Prediction {
  std::string id;
  std::string predicted;
  std::optional<double> score;

  bool operator==(const Prediction&) const = default;
};

std::vector<Prediction> read_predictions(const std::string& path);
void write_predictions(const std::vector<Prediction>& preds, const std::string& path);

}  // namespace multihop
