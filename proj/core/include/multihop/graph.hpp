#pragma once
// Directed bipartite entity-document graph under pluggable edge policies.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "multihop/corpus.hpp"
#include "multihop/kb.hpp"

namespace multihop {

struct BipartiteGraph {
  // Every corpus document and every KB entity is present as a key, isolated
  // nodes included; there are no entity-entity or doc-doc edges.
  std::map<DocId, std::set<EntityId>> doc_to_entities;
  std::map<EntityId, std::set<DocId>> entity_to_docs;
  std::string policy_tag;

  bool has_doc(const DocId& id) const { return doc_to_entities.count(id) > 0; }
  bool has_entity(const EntityId& id) const { return entity_to_docs.count(id) > 0; }

  const std::set<EntityId>& docs_entities(const DocId& id) const;
  const std::set<DocId>& entity_docs(const EntityId& id) const;

  bool operator==(const BipartiteGraph&) const = default;
};

// Outgoing adjacency of a node; entity ids win when an id names both a
// document and an entity. Throws on unknown nodes.
std::set<std::string> neighbors(const BipartiteGraph& g, const std::string& node);

// Declarative edge rules; the two built-in policies are rule lists too.
struct EdgeRule {
  enum class Kind {
    Mention,             // entity mentioned in a document
    Canonical,           // document's canonical entity
    TargetMention,       // doc mentions a protein in drug_targets[drug]
    InteractingMention,  // doc mentions p and some ppi partner of p
  };
  enum class Direction { DocToEntity, EntityToDoc, Both };
  enum class EntityClass { All, Proteins, Drugs };

  Kind kind = Kind::Mention;
  Direction direction = Direction::DocToEntity;
  EntityClass entity_class = EntityClass::All;
};

std::vector<EdgeRule> encyclopedic_rules();
struct BiomedicalOptions {
  // Also connect doc<->drug when the document mentions the drug itself, not
  // only its targets.
  bool drug_name_mention_edges = false;
};
std::vector<EdgeRule> biomedical_rules(const BiomedicalOptions& opts = {});
std::vector<EdgeRule> load_edge_rules(const std::string& path);

BipartiteGraph build_graph(const Corpus& corpus, const KnowledgeBase& kb,
                           const std::vector<EdgeRule>& rules, const std::string& policy_tag);

// doc->entity on mention; entity->doc only to the entity's canonical article.
// Throws when two documents claim the same canonical entity.
BipartiteGraph build_encyclopedic_graph(const Corpus& corpus, const KnowledgeBase& kb);

// Requires the KB's drug_targets/ppi tables; throws when they are missing.
BipartiteGraph build_biomedical_graph(const Corpus& corpus, const KnowledgeBase& kb,
                                      const BiomedicalOptions& opts = {});

// Lossless binary cache.
void save_graph(const BipartiteGraph& g, const std::string& path);
BipartiteGraph load_graph(const std::string& path);

}  // namespace multihop
