#include "multihop/graph.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace multihop {

using nlohmann::json;

const std::set<EntityId>& BipartiteGraph::docs_entities(const DocId& id) const {
  auto it = doc_to_entities.find(id);
  if (it == doc_to_entities.end()) throw std::out_of_range("unknown document node: " + id);
  return it->second;
}

const std::set<DocId>& BipartiteGraph::entity_docs(const EntityId& id) const {
  auto it = entity_to_docs.find(id);
  if (it == entity_to_docs.end()) throw std::out_of_range("unknown entity node: " + id);
  return it->second;
}

std::set<std::string> neighbors(const BipartiteGraph& g, const std::string& node) {
  if (g.has_entity(node)) {
    const auto& s = g.entity_docs(node);
    return {s.begin(), s.end()};
  }
  if (g.has_doc(node)) {
    const auto& s = g.docs_entities(node);
    return {s.begin(), s.end()};
  }
  throw std::out_of_range("unknown graph node: " + node);
}

std::vector<EdgeRule> encyclopedic_rules() {
  return {
      {EdgeRule::Kind::Mention, EdgeRule::Direction::DocToEntity, EdgeRule::EntityClass::All},
      {EdgeRule::Kind::Canonical, EdgeRule::Direction::EntityToDoc, EdgeRule::EntityClass::All},
  };
}

std::vector<EdgeRule> biomedical_rules(const BiomedicalOptions& opts) {
  std::vector<EdgeRule> rules = {
      {EdgeRule::Kind::Mention, EdgeRule::Direction::DocToEntity, EdgeRule::EntityClass::Proteins},
      {EdgeRule::Kind::TargetMention, EdgeRule::Direction::Both, EdgeRule::EntityClass::Drugs},
      {EdgeRule::Kind::InteractingMention, EdgeRule::Direction::EntityToDoc,
       EdgeRule::EntityClass::Proteins},
  };
  if (opts.drug_name_mention_edges) {
    rules.push_back(
        {EdgeRule::Kind::Mention, EdgeRule::Direction::Both, EdgeRule::EntityClass::Drugs});
  }
  return rules;
}

namespace {

EdgeRule::Kind parse_kind(const std::string& s) {
  if (s == "mention") return EdgeRule::Kind::Mention;
  if (s == "canonical") return EdgeRule::Kind::Canonical;
  if (s == "target_mention") return EdgeRule::Kind::TargetMention;
  if (s == "interacting_mention") return EdgeRule::Kind::InteractingMention;
  throw std::runtime_error("unknown edge rule kind: " + s);
}

EdgeRule::Direction parse_direction(const std::string& s) {
  if (s == "doc_to_entity") return EdgeRule::Direction::DocToEntity;
  if (s == "entity_to_doc") return EdgeRule::Direction::EntityToDoc;
  if (s == "both") return EdgeRule::Direction::Both;
  throw std::runtime_error("unknown edge rule direction: " + s);
}

EdgeRule::EntityClass parse_class(const std::string& s) {
  if (s == "all") return EdgeRule::EntityClass::All;
  if (s == "proteins") return EdgeRule::EntityClass::Proteins;
  if (s == "drugs") return EdgeRule::EntityClass::Drugs;
  throw std::runtime_error("unknown edge rule entity class: " + s);
}

}  // namespace

std::vector<EdgeRule> load_edge_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge rule file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("edge rule parse error in " + path + ": " + e.what());
  }
  if (!j.is_array()) throw std::runtime_error("edge rule file must hold a JSON array: " + path);
  std::vector<EdgeRule> rules;
  for (const auto& r : j) {
    EdgeRule rule;
    rule.kind = parse_kind(r.at("edge").get<std::string>());
    rule.direction = parse_direction(r.at("direction").get<std::string>());
    if (r.contains("entities")) rule.entity_class = parse_class(r.at("entities").get<std::string>());
    rules.push_back(rule);
  }
  if (rules.empty()) throw std::runtime_error("edge rule file lists no rules: " + path);
  return rules;
}

namespace {

struct EntityClasses {
  std::set<EntityId> proteins;
  std::set<EntityId> drugs;

  bool in_class(const EntityId& e, EdgeRule::EntityClass c) const {
    switch (c) {
      case EdgeRule::EntityClass::All: return true;
      case EdgeRule::EntityClass::Proteins: return proteins.count(e) > 0;
      case EdgeRule::EntityClass::Drugs: return drugs.count(e) > 0;
    }
    return false;
  }
};

EntityClasses classify(const KnowledgeBase& kb) {
  EntityClasses c;
  for (const auto& [drug, targets] : kb.drug_targets) {
    c.drugs.insert(drug);
    for (const auto& p : targets) c.proteins.insert(p);
  }
  for (const auto& [a, b] : kb.ppi) {
    c.proteins.insert(a);
    c.proteins.insert(b);
  }
  for (const auto& t : kb.triples) {
    c.drugs.insert(t.subject);
    c.drugs.insert(t.object);
  }
  return c;
}

void add_edge(BipartiteGraph& g, const DocId& d, const EntityId& e, EdgeRule::Direction dir) {
  if (dir == EdgeRule::Direction::DocToEntity || dir == EdgeRule::Direction::Both) {
    g.doc_to_entities[d].insert(e);
  }
  if (dir == EdgeRule::Direction::EntityToDoc || dir == EdgeRule::Direction::Both) {
    g.entity_to_docs[e].insert(d);
  }
}

}  // namespace

BipartiteGraph build_graph(const Corpus& corpus, const KnowledgeBase& kb,
                           const std::vector<EdgeRule>& rules, const std::string& policy_tag) {
  BipartiteGraph g;
  g.policy_tag = policy_tag;
  for (const auto& doc : corpus.docs) g.doc_to_entities[doc.doc_id];
  for (const auto& [id, names] : kb.entities) g.entity_to_docs[id];

  const EntityClasses classes = classify(kb);

  bool needs_tables = false;
  for (const auto& r : rules) {
    if (r.kind == EdgeRule::Kind::TargetMention || r.kind == EdgeRule::Kind::InteractingMention) {
      needs_tables = true;
    }
  }
  if (needs_tables && kb.drug_targets.empty() && kb.ppi.empty()) {
    throw std::runtime_error("edge policy '" + policy_tag +
                             "' needs drug_targets/ppi tables, but the KB carries none");
  }

  // mentioned entity -> docs mentioning it
  std::map<EntityId, std::set<DocId>> mentioned_in;
  for (const auto& doc : corpus.docs) {
    for (const auto& m : doc.mentions) {
      if (!kb.has_entity(m.entity)) {
        throw std::runtime_error("document '" + doc.doc_id + "' mentions unknown entity '" +
                                 m.entity + "'");
      }
      mentioned_in[m.entity].insert(doc.doc_id);
    }
  }

  for (const auto& rule : rules) {
    switch (rule.kind) {
      case EdgeRule::Kind::Mention: {
        for (const auto& [entity, docs] : mentioned_in) {
          if (!classes.in_class(entity, rule.entity_class)) continue;
          for (const auto& d : docs) add_edge(g, d, entity, rule.direction);
        }
        break;
      }
      case EdgeRule::Kind::Canonical: {
        for (const auto& [entity, claims] : corpus.canonical_claims) {
          if (claims.size() > 1) {
            std::string offenders;
            for (std::size_t idx : claims) {
              if (!offenders.empty()) offenders += ", ";
              offenders += corpus.docs[idx].doc_id;
            }
            throw std::runtime_error("entity '" + entity +
                                     "' is claimed as canonical by several documents: " + offenders);
          }
          if (!kb.has_entity(entity)) {
            throw std::runtime_error("document '" + corpus.docs[claims.front()].doc_id +
                                     "' claims unknown canonical entity '" + entity + "'");
          }
          if (!classes.in_class(entity, rule.entity_class)) continue;
          add_edge(g, corpus.docs[claims.front()].doc_id, entity, rule.direction);
        }
        break;
      }
      case EdgeRule::Kind::TargetMention: {
        for (const auto& [drug, targets] : kb.drug_targets) {
          if (!classes.in_class(drug, rule.entity_class)) continue;
          std::set<DocId> docs;
          for (const auto& p : targets) {
            auto it = mentioned_in.find(p);
            if (it == mentioned_in.end()) continue;
            docs.insert(it->second.begin(), it->second.end());
          }
          for (const auto& d : docs) add_edge(g, d, drug, rule.direction);
        }
        break;
      }
      case EdgeRule::Kind::InteractingMention: {
        for (const auto& doc : corpus.docs) {
          std::set<EntityId> here;
          for (const auto& m : doc.mentions) here.insert(m.entity);
          for (const auto& p : here) {
            if (!classes.in_class(p, rule.entity_class)) continue;
            bool has_partner = false;
            for (const auto& q : here) {
              if (q != p && kb.interacts(p, q)) {
                has_partner = true;
                break;
              }
            }
            if (has_partner) add_edge(g, doc.doc_id, p, rule.direction);
          }
        }
        break;
      }
    }
  }
  return g;
}

BipartiteGraph build_encyclopedic_graph(const Corpus& corpus, const KnowledgeBase& kb) {
  return build_graph(corpus, kb, encyclopedic_rules(), "encyclopedic");
}

BipartiteGraph build_biomedical_graph(const Corpus& corpus, const KnowledgeBase& kb,
                                      const BiomedicalOptions& opts) {
  if (kb.drug_targets.empty() && kb.ppi.empty()) {
    throw std::runtime_error("biomedical edge policy needs drug_targets/ppi tables in the KB");
  }
  return build_graph(corpus, kb, biomedical_rules(opts), "biomedical");
}

namespace {

constexpr std::uint32_t kGraphMagic = 0x4d484247;  // "MHBG"
constexpr std::uint32_t kGraphVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("graph cache truncated");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_str(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_str(std::istream& in) {
  const std::uint32_t n = get_u32(in);
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw std::runtime_error("graph cache truncated");
  return s;
}

void put_adjacency(std::ostream& out, const std::map<std::string, std::set<std::string>>& adj) {
  put_u32(out, static_cast<std::uint32_t>(adj.size()));
  for (const auto& [node, targets] : adj) {
    put_str(out, node);
    put_u32(out, static_cast<std::uint32_t>(targets.size()));
    for (const auto& t : targets) put_str(out, t);
  }
}

std::map<std::string, std::set<std::string>> get_adjacency(std::istream& in) {
  std::map<std::string, std::set<std::string>> adj;
  const std::uint32_t n = get_u32(in);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string node = get_str(in);
    const std::uint32_t m = get_u32(in);
    auto& targets = adj[node];
    for (std::uint32_t k = 0; k < m; ++k) targets.insert(get_str(in));
  }
  return adj;
}

}  // namespace

void save_graph(const BipartiteGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph cache: " + path);
  put_u32(out, kGraphMagic);
  put_u32(out, kGraphVersion);
  put_str(out, g.policy_tag);
  put_adjacency(out, g.doc_to_entities);
  put_adjacency(out, g.entity_to_docs);
}

BipartiteGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph cache: " + path);
  if (get_u32(in) != kGraphMagic) throw std::runtime_error("not a graph cache: " + path);
  if (get_u32(in) != kGraphVersion) throw std::runtime_error("unsupported graph cache version: " + path);
  BipartiteGraph g;
  g.policy_tag = get_str(in);
  g.doc_to_entities = get_adjacency(in);
  g.entity_to_docs = get_adjacency(in);
  return g;
}

}  // namespace multihop
