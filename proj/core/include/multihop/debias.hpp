#pragma once
// Candidate-frequency capping, document-answer cooccurrence filtering,
// blocklists, and candidate masking.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "multihop/corpus.hpp"
#include "multihop/dataset.hpp"

namespace multihop {

struct CooccurrenceTable {
  // (support doc, candidate surface) -> number of samples where the
  // candidate is the correct answer and the doc is in the support set
  std::map<DocId, std::map<std::string, int>> counts;
  std::string built_from;

  int count(const DocId& doc, const std::string& candidate) const;
};

CooccurrenceTable build_cooccurrence(const std::vector<Sample>& train_samples,
                                     const std::string& split_label = "train");

// Appendix-style export: JSONL of {"candidate","count","doc_id"} sorted by
// descending count, then doc id, then candidate.
void write_cooccurrence(const CooccurrenceTable& table, const std::string& path);

// Drops every sample holding at least one (support doc, candidate) pair
// whose table count exceeds the threshold. Counts are not recomputed during
// the pass.
std::vector<Sample> filter_by_cooccurrence(const std::vector<Sample>& samples,
                                           const CooccurrenceTable& table, int threshold);

// Seeded-uniform removal of samples whose answer exceeds `cap` as a share of
// the resulting set. A single remaining occurrence of an answer is never
// removed. Deterministic given (input order, seed).
std::vector<Sample> cap_answer_frequency(const std::vector<Sample>& samples, double cap,
                                         std::uint64_t seed);

// Removes every support document whose canonical entity is blocked; samples
// whose gold paths all break are dropped. `doc_canonical` maps doc ids to
// the entity the document is about.
std::vector<Sample> apply_blocklist(const std::vector<Sample>& samples,
                                    const std::set<EntityId>& blocked_entities,
                                    const std::map<DocId, EntityId>& doc_canonical);

std::map<DocId, EntityId> doc_canonical_from_corpus(const Corpus& corpus);

struct MaskedSample {
  Sample sample;                                // masked, mask_map filled in
  std::map<std::string, std::string> mask_map;  // original -> placeholder
};

// Per-sample bijection from candidate surfaces onto a seeded draw (without
// replacement) from the fixed pool MASK0..MASK{pool_size-1}. Every
// token-level occurrence in supports, candidates, and answer is replaced.
// Throws when the sample has more candidates than the pool.
MaskedSample mask_sample(const Sample& sample, std::size_t pool_size, std::uint64_t seed);

Sample unmask_sample(const Sample& masked);

// Placeholder -> original candidate surface. Throws on a pool-shaped
// placeholder missing from the map; non-placeholder predictions pass
// through unchanged.
std::string unmask_prediction(const std::string& prediction,
                              const std::map<std::string, std::string>& mask_map);

std::vector<std::string> placeholder_pool(std::size_t pool_size);

}  // namespace multihop
