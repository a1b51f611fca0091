#include "multihop/synth.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "json.hpp"
#include "multihop/rng.hpp"

namespace multihop {

using nlohmann::json;

void FixtureSpec::validate() const {
  if (n_entities < 1 || n_relations < 1 || n_facts < 1) {
    throw std::runtime_error("fixture spec: all counts must be >= 1");
  }
  if (chain_lengths.empty()) {
    throw std::runtime_error("fixture spec: chain_lengths must list at least one length");
  }
  for (auto len : chain_lengths) {
    if (len < 1) throw std::runtime_error("fixture spec: chain lengths must be >= 1");
    if (len > n_entities) {
      throw std::runtime_error("fixture spec: chain length " + std::to_string(len) +
                               " exceeds n_entities " + std::to_string(n_entities));
    }
  }
  if (distractors + 1 > n_entities) {
    throw std::runtime_error("fixture spec: need n_entities >= distractors + 1");
  }
  if (cue_bias > n_facts) {
    throw std::runtime_error("fixture spec: cue_bias cannot exceed n_facts");
  }
  if (answer_skew < 0.0 || answer_skew >= 1.0) {
    throw std::runtime_error("fixture spec: answer_skew must be in [0, 1)");
  }
}

FixtureSpec load_fixture_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture spec: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("fixture spec parse error in " + path + ": " + e.what());
  }
  FixtureSpec spec;
  if (j.contains("n_entities")) spec.n_entities = j.at("n_entities").get<std::size_t>();
  if (j.contains("n_relations")) spec.n_relations = j.at("n_relations").get<std::size_t>();
  if (j.contains("n_facts")) spec.n_facts = j.at("n_facts").get<std::size_t>();
  if (j.contains("chain_lengths")) {
    spec.chain_lengths.clear();
    for (const auto& l : j.at("chain_lengths")) spec.chain_lengths.push_back(l.get<std::size_t>());
  }
  if (j.contains("distractors")) spec.distractors = j.at("distractors").get<std::size_t>();
  if (j.contains("cue_bias")) spec.cue_bias = j.at("cue_bias").get<std::size_t>();
  if (j.contains("answer_skew")) spec.answer_skew = j.at("answer_skew").get<double>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  spec.validate();
  return spec;
}

namespace {

const std::vector<std::string>& filler_vocab() {
  static const std::vector<std::string> vocab = {
      "quartz", "meadow", "lantern", "drizzle", "copper", "willow",
      "harbor", "ember",  "thicket", "plume",   "garnet", "sable",
  };
  return vocab;
}

// Body text planting the given names verbatim between filler words. Titles
// are echoed only where a self-mention cannot extend a chain; object
// documents stay dead ends.
std::string make_body(const std::string& title, const std::vector<std::string>& planted,
                      Rng& rng, bool echo_title = true) {
  const auto& vocab = filler_vocab();
  TokenSeq tokens;
  if (echo_title) {
    tokens = {"the", "record", "for"};
    for (const auto& t : tokenize(title)) tokens.push_back(t);
    tokens.push_back("covers");
  } else {
    tokens = {"an", "entry", "covering"};
  }
  for (const auto& name : planted) {
    tokens.push_back(vocab[rng.below(vocab.size())]);
    for (const auto& t : tokenize(name)) tokens.push_back(t);
  }
  tokens.push_back(vocab[rng.below(vocab.size())]);
  tokens.push_back(".");
  return join_tokens(tokens);
}

}  // namespace

Corpus Fixture::corpus(const TruncationPolicy& policy) const {
  const Lexicon lexicon = Lexicon::from_kb(kb);
  return build_corpus(documents, policy, &lexicon);
}

Fixture generate_fixture(const FixtureSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  Fixture fx;
  KnowledgeBase& kb = fx.kb;

  // relations
  std::vector<RelationId> relations;
  for (std::size_t r = 0; r < spec.n_relations; ++r) {
    relations.push_back("rel" + std::to_string(r));
  }
  kb.relations = relations;

  // object pool; every 7th object carries a two-token name and every 11th an
  // extra variant, so surface handling sees some variety
  std::vector<EntityId> pool;
  for (std::size_t i = 0; i < spec.n_entities; ++i) {
    const EntityId id = "item" + std::to_string(i);
    std::vector<std::string> names;
    if (i % 7 == 3) {
      names.push_back(id + " prime");
    } else {
      names.push_back(id);
    }
    if (i % 11 == 5) names.push_back("alt" + std::to_string(i));
    kb.entities.emplace(id, std::move(names));
    pool.push_back(id);
  }

  const EntityId hot = pool.front();

  // pass 1: facts
  struct FactPlan {
    EntityId subject;
    RelationId relation;
    EntityId object;
    std::size_t chain_len;
    bool cued;
  };
  std::vector<FactPlan> plans;
  for (std::size_t i = 0; i < spec.n_facts; ++i) {
    FactPlan plan;
    plan.subject = "subj" + std::to_string(i);
    plan.relation = relations[rng.below(relations.size())];
    plan.cued = i < spec.cue_bias;
    if (plan.cued) {
      plan.object = hot;
    } else if (spec.answer_skew > 0.0 && rng.unit() < spec.answer_skew) {
      plan.object = hot;
    } else {
      plan.object = pool[rng.below(pool.size())];
    }
    plan.chain_len = spec.chain_lengths[rng.below(spec.chain_lengths.size())];
    plans.push_back(std::move(plan));
    kb.entities.emplace(plans.back().subject,
                        std::vector<std::string>{plans.back().subject});
    kb.triples.push_back({plans.back().subject, plans.back().relation, plans.back().object});
  }

  // objects seen per relation, for type-consistent distractors
  std::map<RelationId, std::vector<EntityId>> objects_by_relation;
  for (const auto& p : plans) {
    auto& v = objects_by_relation[p.relation];
    if (std::find(v.begin(), v.end(), p.object) == v.end()) v.push_back(p.object);
  }

  const EntityId cue_bridge = "cuehub";
  if (spec.cue_bias > 0) {
    kb.entities.emplace(cue_bridge, std::vector<std::string>{cue_bridge});
  }

  // pass 2: documents
  auto doc_of = [](const EntityId& e) { return "d_" + e; };

  for (std::size_t i = 0; i < plans.size(); ++i) {
    const FactPlan& plan = plans[i];
    const std::size_t hops = plan.chain_len;

    std::vector<EntityId> bridges;
    for (std::size_t k = 1; k < hops; ++k) {
      const EntityId hub = "hub" + std::to_string(i) + "x" + std::to_string(k);
      kb.entities.emplace(hub, std::vector<std::string>{hub});
      bridges.push_back(hub);
    }

    // distractors: prefer objects already seen with this relation
    std::vector<EntityId> distractor_pool;
    for (const auto& o : objects_by_relation[plan.relation]) {
      if (o != plan.object) distractor_pool.push_back(o);
    }
    for (const auto& o : pool) {
      if (o != plan.object &&
          std::find(distractor_pool.begin(), distractor_pool.end(), o) == distractor_pool.end()) {
        distractor_pool.push_back(o);
      }
    }
    std::vector<EntityId> chosen;
    for (std::size_t k = 0; k < spec.distractors && k < distractor_pool.size(); ++k) {
      chosen.push_back(distractor_pool[k]);
    }

    // subject document: first hop of the chain (plus the cue bridge)
    {
      std::vector<std::string> planted;
      if (!bridges.empty()) {
        planted.push_back(kb.surface(bridges.front()));
      } else {
        planted.push_back(kb.surface(plan.object));
        for (const auto& d : chosen) planted.push_back(kb.surface(d));
      }
      if (plan.cued) planted.push_back(cue_bridge);
      RawDocument doc;
      doc.doc_id = doc_of(plan.subject);
      doc.title = plan.subject;
      doc.text = make_body(plan.subject, planted, rng);
      doc.canonical_entity = plan.subject;
      fx.documents.push_back(std::move(doc));
    }

    // bridge documents; the last one mentions the answer and distractors
    for (std::size_t k = 0; k < bridges.size(); ++k) {
      std::vector<std::string> planted;
      if (k + 1 < bridges.size()) {
        planted.push_back(kb.surface(bridges[k + 1]));
      } else {
        planted.push_back(kb.surface(plan.object));
        for (const auto& d : chosen) planted.push_back(kb.surface(d));
      }
      RawDocument doc;
      doc.doc_id = doc_of(bridges[k]);
      doc.title = bridges[k];
      doc.text = make_body(bridges[k], planted, rng);
      doc.canonical_entity = bridges[k];
      fx.documents.push_back(std::move(doc));
    }

    PlantedFact planted_fact;
    planted_fact.fact = {plan.subject, plan.relation, plan.object};
    planted_fact.chain.push_back(doc_of(plan.subject));
    for (const auto& b : bridges) planted_fact.chain.push_back(doc_of(b));
    fx.truth.facts.push_back(std::move(planted_fact));
  }

  // object documents are dead ends
  for (const auto& o : pool) {
    RawDocument doc;
    doc.doc_id = doc_of(o);
    doc.title = kb.surface(o);
    doc.text = make_body(kb.surface(o), {}, rng, /*echo_title=*/false);
    doc.canonical_entity = o;
    fx.documents.push_back(std::move(doc));
  }

  if (spec.cue_bias > 0) {
    RawDocument doc;
    doc.doc_id = doc_of(cue_bridge);
    doc.title = cue_bridge;
    doc.text = make_body(cue_bridge, {kb.surface(hot)}, rng);
    doc.canonical_entity = cue_bridge;
    fx.documents.push_back(std::move(doc));

    PlantedCue cue;
    cue.bridge = cue_bridge;
    cue.doc = doc_of(cue_bridge);
    cue.answer = hot;
    for (std::size_t i = 0; i < spec.cue_bias; ++i) cue.fact_indexes.push_back(i);
    fx.truth.cue = std::move(cue);
  }

  return fx;
}

void write_fixture(const Fixture& fixture, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_kb(fixture.kb, dir + "/kb.json");
  write_corpus(fixture.documents, dir + "/corpus.jsonl");

  json truth;
  json facts = json::array();
  for (const auto& f : fixture.truth.facts) {
    facts.push_back(json{
        {"subject", f.fact.subject},
        {"relation", f.fact.relation},
        {"object", f.fact.object},
        {"chain", f.chain},
    });
  }
  truth["facts"] = std::move(facts);
  if (fixture.truth.cue) {
    truth["cue"] = json{
        {"bridge", fixture.truth.cue->bridge},
        {"doc", fixture.truth.cue->doc},
        {"answer", fixture.truth.cue->answer},
        {"fact_indexes", fixture.truth.cue->fact_indexes},
    };
  }
  std::ofstream out(dir + "/ground_truth.json");
  if (!out) throw std::runtime_error("cannot write ground truth under " + dir);
  out << truth.dump() << '\n';
}

std::map<EntityId, std::set<DocChain>> brute_force_paths(
    const BipartiteGraph& graph, const EntityId& subject,
    const std::set<EntityId>& endpoints, std::size_t max_chain,
    std::size_t exhaustive_doc_limit) {
  if (graph.doc_to_entities.size() > exhaustive_doc_limit) {
    throw std::runtime_error("brute_force_paths: graph has " +
                             std::to_string(graph.doc_to_entities.size()) +
                             " documents, exhaustive enumeration is limited to " +
                             std::to_string(exhaustive_doc_limit));
  }
  if (!graph.has_entity(subject)) {
    throw std::invalid_argument("brute_force_paths: subject '" + subject +
                                "' is not a graph node");
  }

  std::map<EntityId, std::set<DocChain>> out;
  if (max_chain == 0) return out;

  DocChain chain;
  std::function<void(const DocId&)> visit = [&](const DocId& doc) {
    chain.push_back(doc);
    for (const auto& e : graph.docs_entities(doc)) {
      if (endpoints.count(e) > 0) out[e].insert(chain);
    }
    if (chain.size() < max_chain) {
      for (const auto& e : graph.docs_entities(doc)) {
        for (const auto& next : graph.entity_docs(e)) {
          if (std::find(chain.begin(), chain.end(), next) == chain.end()) {
            visit(next);
          }
        }
      }
    }
    chain.pop_back();
  };
  for (const auto& d : graph.entity_docs(subject)) visit(d);
  return out;
}

}  // namespace multihop
