#pragma once
// Traversal from the query subject, candidate/support assembly, caps,
// and path-balanced document subsampling.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "multihop/corpus.hpp"
#include "multihop/dataset.hpp"
#include "multihop/graph.hpp"
#include "multihop/kb.hpp"
#include "multihop/rng.hpp"

namespace multihop {

using DocChain = std::vector<DocId>;

struct TraversalResult {
  // endpoint -> every distinct simple document chain (length <= max_chain)
  // from the subject to that endpoint
  std::map<EntityId, std::set<DocChain>> paths;
  // union of documents lying on some subject->endpoint chain
  std::set<DocId> visited_docs;

  std::set<EntityId> reached_endpoints() const;
};

// Breadth-first enumeration alternating entity -> document -> entity, depth
// counted in documents. Chains never repeat a document. Throws when the
// subject is not a graph node (callers turn that into a discard).
TraversalResult traverse(const BipartiteGraph& graph, const EntityId& subject,
                         const std::set<EntityId>& endpoints, std::size_t max_chain);

struct BalanceResult {
  enum class Status { Ok, AnswerUnreached, AnswerChainTooLarge };
  Status status = Status::AnswerUnreached;
  std::set<DocId> support;
  // retained candidate -> its included chains; counts are exactly equal
  // across candidates after the final incomplete round is rolled back
  std::map<EntityId, std::vector<DocChain>> included_chains;
};

// Adds one answer chain first, then round-robins whole chains over the
// candidates until the next chain would exceed max_docs. Candidates are
// visited in (shortest-chain-length, id) order and chains in
// (length, lexicographic) order.
BalanceResult balance_documents(const TraversalResult& result, const EntityId& answer,
                                std::size_t max_docs);

enum class DiscardReason {
  SubjectAbsent,
  AnswerInSource,
  AnswerUnreached,
  TooManyDocs,
  TooManyCandidates,
};
std::string to_string(DiscardReason reason);

using DiscardLedger = std::map<std::string, std::size_t>;
DiscardLedger empty_ledger();

// Canonical single-object JSON file, one count per discard reason.
void write_discard_ledger(const DiscardLedger& ledger, const std::string& path);

struct Caps {
  std::size_t max_docs = 64;
  std::size_t max_cands = 100;
};

struct AssembleOutcome {
  std::optional<Sample> sample;
  std::optional<DiscardReason> discard;
};

// Builds the sample record: candidate surfaces deduplicated
// case-insensitively, candidates capped after deduplication, supports
// emitted in seeded-random order. When `balanced` is given its support set
// and chain counts are used and the document cap is already enforced.
AssembleOutcome assemble_sample(const TraversalResult& result, const Query& q,
                                const EntityId& answer, const Caps& caps,
                                const KnowledgeBase& kb, const Corpus& corpus,
                                const std::string& sample_id, Rng& rng,
                                const BalanceResult* balanced = nullptr);

// True iff some name variant of the answer occurs (case-insensitive,
// token-level) in the subject's canonical document; false when the subject
// has no canonical document.
bool answer_in_source(const Query& q, const EntityId& answer, const Corpus& corpus,
                      const KnowledgeBase& kb);

struct InduceConfig {
  std::string policy = "encyclopedic";  // encyclopedic | biomedical | custom
  std::string split = "train";
  std::uint64_t seed = 0;
  std::size_t max_chain = 3;
  Caps caps;
  // Defaults derived from the policy when unset: the encyclopedic pipeline
  // applies the answer-in-source filter, the biomedical pipeline balances
  // documents.
  std::optional<bool> balance;
  std::optional<bool> source_filter;

  bool balance_enabled() const { return balance.value_or(policy == "biomedical"); }
  bool source_filter_enabled() const {
    return source_filter.value_or(policy == "encyclopedic");
  }
};

struct InduceResult {
  std::vector<Sample> samples;
  DiscardLedger ledger;
};

// Runs queries -> source filter -> traverse -> balance -> assemble over the
// KB's triples in order. Candidate pools come from `pool_kb` when given
// (the designated training split), from `kb` otherwise.
InduceResult induce_split(const KnowledgeBase& kb, const BipartiteGraph& graph,
                          const Corpus& corpus, const InduceConfig& config,
                          const KnowledgeBase* pool_kb = nullptr);

}  // namespace multihop
