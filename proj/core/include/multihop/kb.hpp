#pragma once
// Knowledge base: fact triples, query derivation, type-consistent candidate
// pools, and closed-world endpoint sets.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace multihop {

using EntityId = std::string;
using RelationId = std::string;
using DocId = std::string;

struct Triple {
  EntityId subject;
  RelationId relation;
  EntityId object;

  bool operator==(const Triple&) const = default;
  auto operator<=>(const Triple&) const = default;
};

struct Query {
  EntityId subject;
  RelationId relation;

  bool operator==(const Query&) const = default;
};

struct KnowledgeBase {
  // entity id -> name variants; the first variant is the surface form used
  // when an entity is written into a dataset.
  std::map<EntityId, std::vector<std::string>> entities;
  std::vector<RelationId> relations;
  std::vector<Triple> triples;

  // auxiliary tables for the biomedical edge policy
  std::map<EntityId, std::vector<EntityId>> drug_targets;
  std::set<std::pair<EntityId, EntityId>> ppi;  // stored with both orderings

  bool has_entity(const EntityId& id) const { return entities.count(id) > 0; }
  bool has_relation(const RelationId& r) const;
  bool interacts(const EntityId& a, const EntityId& b) const {
    return ppi.count({a, b}) > 0;
  }

  // First listed name variant; falls back to the id for unregistered entities.
  const std::string& surface(const EntityId& id) const;
};

struct ValidationFinding {
  std::string kind;  // "duplicate_triple" | "dangling_reference" | "empty_name"
  std::string message;

  bool operator==(const ValidationFinding&) const = default;
};

using ValidationReport = std::vector<ValidationFinding>;

KnowledgeBase load_kb(const std::string& path);
void write_kb(const KnowledgeBase& kb, const std::string& path);

ValidationReport validate_kb(const KnowledgeBase& kb);

// One (query, answer) pair per triple, in triple order.
std::vector<std::pair<Query, EntityId>> queries_from_kb(const KnowledgeBase& kb);

// Objects of all facts with the given relation. Throws on unknown relation.
std::set<EntityId> type_consistent_candidates(const KnowledgeBase& kb,
                                              const RelationId& relation);

// Type-consistent pool minus other true objects of (q.subject, q.relation)
// and minus the subject itself. Throws when `answer` is not type-consistent.
std::set<EntityId> endpoint_set(const KnowledgeBase& kb, const Query& q,
                                const EntityId& answer);

}  // namespace multihop
