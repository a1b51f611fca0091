#include "multihop/kb.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace multihop {

using nlohmann::json;

bool KnowledgeBase::has_relation(const RelationId& r) const {
  return std::find(relations.begin(), relations.end(), r) != relations.end();
}

const std::string& KnowledgeBase::surface(const EntityId& id) const {
  auto it = entities.find(id);
  if (it != entities.end() && !it->second.empty()) return it->second.front();
  return id;
}

KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open KB file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("KB parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("KB file must hold one JSON object: " + path);

  KnowledgeBase kb;
  if (!j.contains("entities") || !j.contains("relations") || !j.contains("triples")) {
    throw std::runtime_error("KB file missing required field (entities/relations/triples): " + path);
  }
  for (const auto& [id, spec] : j.at("entities").items()) {
    std::vector<std::string> names;
    for (const auto& n : spec.at("names")) names.push_back(n.get<std::string>());
    kb.entities.emplace(id, std::move(names));
  }
  for (const auto& r : j.at("relations")) kb.relations.push_back(r.get<std::string>());
  for (const auto& t : j.at("triples")) {
    if (!t.is_array() || t.size() != 3) {
      throw std::runtime_error("KB triple must be a [s,r,o] array: " + path);
    }
    kb.triples.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
  }
  if (j.contains("drug_targets")) {
    for (const auto& [drug, targets] : j.at("drug_targets").items()) {
      std::vector<EntityId> ts;
      for (const auto& t : targets) ts.push_back(t.get<std::string>());
      kb.drug_targets.emplace(drug, std::move(ts));
    }
  }
  if (j.contains("ppi")) {
    for (const auto& pair : j.at("ppi")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw std::runtime_error("KB ppi entry must be a [p,p'] array: " + path);
      }
      const EntityId a = pair[0].get<std::string>();
      const EntityId b = pair[1].get<std::string>();
      kb.ppi.insert({a, b});
      kb.ppi.insert({b, a});
    }
  }
  return kb;
}

void write_kb(const KnowledgeBase& kb, const std::string& path) {
  json j;
  json ents = json::object();
  for (const auto& [id, names] : kb.entities) {
    ents[id] = json{{"names", names}};
  }
  j["entities"] = std::move(ents);
  j["relations"] = kb.relations;
  json triples = json::array();
  for (const auto& t : kb.triples) {
    triples.push_back(json::array({t.subject, t.relation, t.object}));
  }
  j["triples"] = std::move(triples);
  if (!kb.drug_targets.empty()) {
    json dt = json::object();
    for (const auto& [drug, targets] : kb.drug_targets) dt[drug] = targets;
    j["drug_targets"] = std::move(dt);
  }
  if (!kb.ppi.empty()) {
    json ppi = json::array();
    for (const auto& [a, b] : kb.ppi) {
      if (a <= b) ppi.push_back(json::array({a, b}));
    }
    j["ppi"] = std::move(ppi);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write KB file: " + path);
  out << j.dump() << '\n';
}

ValidationReport validate_kb(const KnowledgeBase& kb) {
  ValidationReport report;
  for (const auto& [id, names] : kb.entities) {
    if (names.empty()) {
      report.push_back({"empty_name", "entity '" + id + "' has no name variants"});
    }
    for (const auto& n : names) {
      if (n.empty()) {
        report.push_back({"empty_name", "entity '" + id + "' has an empty name variant"});
      }
    }
  }

  std::set<Triple> seen;
  for (const auto& t : kb.triples) {
    if (!seen.insert(t).second) {
      report.push_back({"duplicate_triple",
                        "duplicate triple (" + t.subject + ", " + t.relation + ", " + t.object + ")"});
    }
    if (!kb.has_entity(t.subject)) {
      report.push_back({"dangling_reference", "triple subject '" + t.subject + "' not in entity registry"});
    }
    if (!kb.has_entity(t.object)) {
      report.push_back({"dangling_reference", "triple object '" + t.object + "' not in entity registry"});
    }
    if (!kb.has_relation(t.relation)) {
      report.push_back({"dangling_reference", "triple relation '" + t.relation + "' not in relation registry"});
    }
  }
  for (const auto& [drug, targets] : kb.drug_targets) {
    if (!kb.has_entity(drug)) {
      report.push_back({"dangling_reference", "drug_targets key '" + drug + "' not in entity registry"});
    }
    for (const auto& p : targets) {
      if (!kb.has_entity(p)) {
        report.push_back({"dangling_reference", "drug target '" + p + "' not in entity registry"});
      }
    }
  }
  for (const auto& [a, b] : kb.ppi) {
    if (!kb.has_entity(a)) {
      report.push_back({"dangling_reference", "ppi member '" + a + "' not in entity registry"});
    }
  }
  return report;
}

std::vector<std::pair<Query, EntityId>> queries_from_kb(const KnowledgeBase& kb) {
  std::vector<std::pair<Query, EntityId>> out;
  out.reserve(kb.triples.size());
  for (const auto& t : kb.triples) {
    out.push_back({Query{t.subject, t.relation}, t.object});
  }
  return out;
}

std::set<EntityId> type_consistent_candidates(const KnowledgeBase& kb,
                                              const RelationId& relation) {
  if (!kb.has_relation(relation)) {
    throw std::runtime_error("unknown relation '" + relation + "': KB/config mismatch");
  }
  std::set<EntityId> objects;
  for (const auto& t : kb.triples) {
    if (t.relation == relation) objects.insert(t.object);
  }
  return objects;
}

std::set<EntityId> endpoint_set(const KnowledgeBase& kb, const Query& q,
                                const EntityId& answer) {
  std::set<EntityId> endpoints = type_consistent_candidates(kb, q.relation);
  if (endpoints.count(answer) == 0) {
    throw std::runtime_error("answer '" + answer + "' is not type-consistent for relation '" +
                             q.relation + "' (corrupt KB)");
  }
  for (const auto& t : kb.triples) {
    if (t.subject == q.subject && t.relation == q.relation && t.object != answer) {
      endpoints.erase(t.object);
    }
  }
  endpoints.erase(q.subject);
  return endpoints;
}

}  // namespace multihop
