#pragma once
// Synthetic KB+corpus generation with planted chains, and the exhaustive
// path-enumeration oracle used to check the traversal.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "multihop/corpus.hpp"
#include "multihop/graph.hpp"
#include "multihop/induce.hpp"
#include "multihop/kb.hpp"

namespace multihop {

struct FixtureSpec {
  std::size_t n_entities = 8;    // object pool size
  std::size_t n_relations = 1;
  std::size_t n_facts = 4;
  std::vector<std::size_t> chain_lengths = {2};  // documents per planted chain
  std::size_t distractors = 2;   // extra endpoints mentioned by the final chain doc
  std::size_t cue_bias = 0;      // samples sharing the planted (doc, answer) pair
  double answer_skew = 0.0;      // probability a fact reuses the hot answer
  std::uint64_t seed = 1;

  void validate() const;  // throws on unsatisfiable specs
};

FixtureSpec load_fixture_spec(const std::string& path);

struct PlantedFact {
  Triple fact;
  std::vector<DocId> chain;  // planted gold chain, in hop order
};

struct PlantedCue {
  EntityId bridge;      // shared bridge entity whose article is the cue doc
  DocId doc;            // the cue document
  EntityId answer;      // the answer every cue fact shares
  std::vector<std::size_t> fact_indexes;
};

struct GroundTruth {
  std::vector<PlantedFact> facts;
  std::optional<PlantedCue> cue;
};

struct Fixture {
  KnowledgeBase kb;
  std::vector<RawDocument> documents;
  GroundTruth truth;

  // Builds the annotated corpus with the KB lexicon.
  Corpus corpus(const TruncationPolicy& policy = TruncationPolicy::none()) const;
};

// Every fact gets at least one planted encyclopedic-policy chain of the
// requested length; ground truth lists each planted chain. When cue_bias > 0
// the first cue_bias facts share one answer and one extra bridge document
// that sits on a real chain in each of their support sets.
Fixture generate_fixture(const FixtureSpec& spec);

// Writes kb.json, corpus.jsonl and ground_truth.json into the directory.
void write_fixture(const Fixture& fixture, const std::string& dir);

// Exhaustive depth-first enumeration of all simple document chains of length
// <= max_chain, keyed by reached endpoint. Intentionally naive; refuses
// graphs larger than `exhaustive_doc_limit` documents.
std::map<EntityId, std::set<DocChain>> brute_force_paths(
    const BipartiteGraph& graph, const EntityId& subject,
    const std::set<EntityId>& endpoints, std::size_t max_chain,
    std::size_t exhaustive_doc_limit = 12);

}  // namespace multihop
