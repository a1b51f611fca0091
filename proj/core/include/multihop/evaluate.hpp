#pragma once
// Exact-match scoring, answer normalization, ablation dataset views, and
// superdocument export.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "multihop/dataset.hpp"

namespace multihop {

// Lowercase, drop the articles a/an/the as whole words, strip punctuation
// characters, collapse whitespace, trim. Idempotent.
std::string normalize_answer(const std::string& text);

struct EvalReport {
  double accuracy = 0.0;
  std::size_t n_scored = 0;
  std::map<RelationId, double> per_query_type;

  std::string to_json() const;
};

// Correct iff normalize(prediction) == normalize(answer); a missing
// prediction counts as incorrect. Throws on duplicate prediction ids.
EvalReport exact_match_accuracy(const std::vector<Prediction>& preds,
                                const std::vector<Sample>& gold);

// Supports restricted to documents on gold chains; candidates restricted to
// those still mentioned in the remaining supports (the answer always
// survives). Throws on empty gold_paths.
Sample gold_chain_view(const Sample& sample);

// Removes every support that mentions no candidate; candidates unchanged.
// Callers drop samples whose supports empty out.
Sample candidate_docs_only_view(const Sample& sample);

inline constexpr const char* kDocSeparator = "<doc-sep>";

struct SuperDocument {
  std::string id;
  TokenSeq tokens;
  std::size_t span_start = 0;  // inclusive token interval of the gold answer
  std::size_t span_end = 0;
  std::vector<std::string> candidates;
  std::string answer;
};

// Concatenates the supports in seeded-random order with a separator token
// between documents; the gold span covers the first occurrence of the answer
// surface form. Throws when the answer occurs in no support.
SuperDocument superdocument_export(const Sample& sample, std::uint64_t seed);

void write_superdocuments(const std::vector<SuperDocument>& docs, const std::string& path);

}  // namespace multihop
