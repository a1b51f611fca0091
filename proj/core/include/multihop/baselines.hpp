#pragma once
// Non-neural predictors: random, max-mention, majority-per-query-type,
// TF-IDF retrieval, and document-cue.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "multihop/dataset.hpp"
#include "multihop/debias.hpp"

namespace multihop {

// Uniform seeded choice over the candidate list. Throws on empty candidates.
Prediction predict_random(const Sample& sample, std::uint64_t seed);

// Most frequently mentioned candidate across the supports (case-insensitive,
// non-overlapping longest-match token counting); ties broken by a seeded
// uniform draw.
Prediction predict_max_mention(const Sample& sample, std::uint64_t seed);

// Training-set correct-answer counts per (relation, answer surface).
struct MajorityStats {
  std::map<RelationId, std::map<std::string, int>> counts;

  static MajorityStats from_train(const std::vector<Sample>& train);
  int count(const RelationId& relation, const std::string& candidate) const;
};

// Candidate most frequently observed as the true answer for the sample's
// query type; unseen candidates count zero; ties lexicographic.
Prediction predict_majority(const MajorityStats& stats, const Sample& sample);

// Per-sample retrieval index over the support documents. Term frequencies
// are raw counts over lowercased tokens of title+body; N is the number of
// supports; idf(t) = 1 + ln(N / (1 + df(t))).
struct TfIdfIndex {
  std::vector<std::string> doc_ids;
  std::vector<std::map<std::string, int>> term_freq;
  std::map<std::string, int> doc_freq;
  std::size_t doc_count = 0;

  static TfIdfIndex over_supports(const Sample& sample);
};

// OR-query score: sum over distinct query terms present in the document of
// tf(t, doc) * idf(t).
double tfidf_score(const TfIdfIndex& index, const TokenSeq& query_terms,
                   std::size_t doc_index);

// argmax over candidates of the best per-support score for the query
// "subject + relation + candidate"; ties lexicographic.
Prediction predict_tfidf(const TfIdfIndex& index, const Sample& sample);
Prediction predict_tfidf(const Sample& sample);

// argmax over candidates of the largest (support doc, candidate) training
// cooccurrence count; missing pairs count zero; ties lexicographic.
Prediction predict_document_cue(const CooccurrenceTable& table, const Sample& sample);

}  // namespace multihop
