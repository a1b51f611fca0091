#include "multihop/induce.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace multihop {

std::set<EntityId> TraversalResult::reached_endpoints() const {
  std::set<EntityId> out;
  for (const auto& [e, chains] : paths) {
    if (!chains.empty()) out.insert(e);
  }
  return out;
}

TraversalResult traverse(const BipartiteGraph& graph, const EntityId& subject,
                         const std::set<EntityId>& endpoints, std::size_t max_chain) {
  if (!graph.has_entity(subject)) {
    throw std::invalid_argument("traverse: subject '" + subject + "' is not a graph node");
  }
  TraversalResult result;
  if (max_chain == 0 || endpoints.empty()) return result;

  // document -> successor documents through any outgoing entity
  std::map<DocId, std::vector<DocId>> succ_memo;
  auto successors = [&](const DocId& d) -> const std::vector<DocId>& {
    auto it = succ_memo.find(d);
    if (it != succ_memo.end()) return it->second;
    std::set<DocId> next;
    for (const auto& e : graph.docs_entities(d)) {
      const auto& docs = graph.entity_docs(e);
      next.insert(docs.begin(), docs.end());
    }
    return succ_memo.emplace(d, std::vector<DocId>(next.begin(), next.end())).first->second;
  };

  auto record = [&](const DocChain& chain) {
    for (const auto& e : graph.docs_entities(chain.back())) {
      if (endpoints.count(e) > 0) result.paths[e].insert(chain);
    }
  };

  std::vector<DocChain> frontier;
  for (const auto& d : graph.entity_docs(subject)) frontier.push_back({d});

  for (std::size_t depth = 1; depth <= max_chain && !frontier.empty(); ++depth) {
    for (const auto& chain : frontier) record(chain);
    if (depth == max_chain) break;
    std::vector<DocChain> next;
    for (const auto& chain : frontier) {
      for (const auto& d : successors(chain.back())) {
        if (std::find(chain.begin(), chain.end(), d) == chain.end()) {
          DocChain extended = chain;
          extended.push_back(d);
          next.push_back(std::move(extended));
        }
      }
    }
    frontier = std::move(next);
  }

  for (const auto& [e, chains] : result.paths) {
    for (const auto& chain : chains) {
      result.visited_docs.insert(chain.begin(), chain.end());
    }
  }
  return result;
}

namespace {

bool chain_less(const DocChain& a, const DocChain& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<DocChain> sorted_chains(const std::set<DocChain>& chains) {
  std::vector<DocChain> out(chains.begin(), chains.end());
  std::sort(out.begin(), out.end(), chain_less);
  return out;
}

}  // namespace

BalanceResult balance_documents(const TraversalResult& result, const EntityId& answer,
                                std::size_t max_docs) {
  BalanceResult out;
  auto ait = result.paths.find(answer);
  if (ait == result.paths.end() || ait->second.empty()) {
    out.status = BalanceResult::Status::AnswerUnreached;
    return out;
  }

  std::map<EntityId, std::vector<DocChain>> chains;
  for (const auto& [e, s] : result.paths) {
    if (!s.empty()) chains.emplace(e, sorted_chains(s));
  }

  std::vector<EntityId> rotation;
  rotation.push_back(answer);
  {
    std::vector<EntityId> alternates;
    for (const auto& [e, c] : chains) {
      if (e != answer) alternates.push_back(e);
    }
    std::sort(alternates.begin(), alternates.end(), [&](const EntityId& a, const EntityId& b) {
      const std::size_t la = chains.at(a).front().size();
      const std::size_t lb = chains.at(b).front().size();
      if (la != lb) return la < lb;
      return a < b;
    });
    rotation.insert(rotation.end(), alternates.begin(), alternates.end());
  }

  std::set<DocId> support;
  std::map<EntityId, std::size_t> rounds_done;
  bool overflow = false;
  for (std::size_t round = 1; !overflow; ++round) {
    bool added_any = false;
    for (const auto& c : rotation) {
      const auto& cc = chains.at(c);
      if (cc.size() < round) continue;  // exhausted
      const DocChain& chain = cc[round - 1];
      std::set<DocId> tentative = support;
      tentative.insert(chain.begin(), chain.end());
      if (tentative.size() > max_docs) {
        overflow = true;
        break;
      }
      support.swap(tentative);
      rounds_done[c] = round;
      added_any = true;
    }
    if (!added_any) break;
  }

  if (rounds_done.count(answer) == 0) {
    out.status = BalanceResult::Status::AnswerChainTooLarge;
    return out;
  }

  // Roll back the final incomplete round: every retained candidate keeps
  // exactly the same number of chains.
  std::size_t target = std::numeric_limits<std::size_t>::max();
  for (const auto& [e, n] : rounds_done) target = std::min(target, n);
  for (const auto& [e, n] : rounds_done) {
    (void)n;
    auto& included = out.included_chains[e];
    for (std::size_t k = 0; k < target; ++k) {
      const DocChain& chain = chains.at(e)[k];
      included.push_back(chain);
      out.support.insert(chain.begin(), chain.end());
    }
  }
  out.status = BalanceResult::Status::Ok;
  return out;
}

std::string to_string(DiscardReason reason) {
  switch (reason) {
    case DiscardReason::SubjectAbsent: return "subject_absent";
    case DiscardReason::AnswerInSource: return "answer_in_source";
    case DiscardReason::AnswerUnreached: return "answer_unreached";
    case DiscardReason::TooManyDocs: return "too_many_docs";
    case DiscardReason::TooManyCandidates: return "too_many_candidates";
  }
  return "unknown";
}

DiscardLedger empty_ledger() {
  return {
      {"subject_absent", 0}, {"answer_in_source", 0}, {"answer_unreached", 0},
      {"too_many_docs", 0},  {"too_many_candidates", 0},
  };
}

void write_discard_ledger(const DiscardLedger& ledger, const std::string& path) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [reason, n] : ledger) j[reason] = n;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write discard ledger: " + path);
  out << j.dump() << '\n';
}

AssembleOutcome assemble_sample(const TraversalResult& result, const Query& q,
                                const EntityId& answer, const Caps& caps,
                                const KnowledgeBase& kb, const Corpus& corpus,
                                const std::string& sample_id, Rng& rng,
                                const BalanceResult* balanced) {
  // candidate entity -> chain count, plus the support doc set
  std::map<EntityId, std::size_t> chain_counts;
  std::map<EntityId, std::vector<DocChain>> gold_source;
  std::set<DocId> support_ids;

  if (balanced != nullptr) {
    if (balanced->status != BalanceResult::Status::Ok) {
      return {std::nullopt, balanced->status == BalanceResult::Status::AnswerUnreached
                                ? DiscardReason::AnswerUnreached
                                : DiscardReason::TooManyDocs};
    }
    for (const auto& [e, chains] : balanced->included_chains) {
      chain_counts[e] = chains.size();
      gold_source[e] = chains;
    }
    support_ids = balanced->support;
  } else {
    for (const auto& [e, chains] : result.paths) {
      if (chains.empty()) continue;
      chain_counts[e] = chains.size();
      gold_source[e] = sorted_chains(chains);
    }
    support_ids = result.visited_docs;
  }

  if (chain_counts.count(answer) == 0) {
    return {std::nullopt, DiscardReason::AnswerUnreached};
  }
  if (balanced == nullptr && support_ids.size() > caps.max_docs) {
    return {std::nullopt, DiscardReason::TooManyDocs};
  }

  // Deduplicate candidate surfaces case-insensitively. The answer is folded
  // first so its casing is the group representative.
  std::map<std::string, std::string> surface_by_key;  // lowercase -> representative
  std::map<std::string, int> path_counts;             // representative -> chains
  auto fold = [&](const EntityId& entity) {
    const std::string& surface = kb.surface(entity);
    const std::string key = lower_copy(surface);
    auto [it, inserted] = surface_by_key.try_emplace(key, surface);
    path_counts[it->second] += static_cast<int>(chain_counts.at(entity));
  };
  fold(answer);
  for (const auto& [e, n] : chain_counts) {
    (void)n;
    if (e != answer) fold(e);
  }

  if (path_counts.size() > caps.max_cands) {
    return {std::nullopt, DiscardReason::TooManyCandidates};
  }

  Sample s;
  s.id = sample_id;
  s.query = q;
  s.answer = kb.surface(answer);
  for (const auto& [surface, n] : path_counts) {
    (void)n;
    s.candidates.push_back(surface);
  }
  std::sort(s.candidates.begin(), s.candidates.end());
  s.candidate_paths = std::move(path_counts);
  s.gold_paths = gold_source.at(answer);
  std::sort(s.gold_paths.begin(), s.gold_paths.end(), chain_less);

  std::vector<DocId> ordered(support_ids.begin(), support_ids.end());
  rng.shuffle(ordered);  // supports carry no ordering semantics
  for (const auto& id : ordered) {
    const Document* doc = corpus.find(id);
    if (doc == nullptr) {
      throw std::runtime_error("support document '" + id + "' missing from corpus");
    }
    s.supports.push_back({doc->doc_id, doc->title, doc->body_text()});
  }
  return {std::move(s), std::nullopt};
}

bool answer_in_source(const Query& q, const EntityId& answer, const Corpus& corpus,
                      const KnowledgeBase& kb) {
  const Document* doc = corpus.canonical_doc(q.subject);
  if (doc == nullptr) return false;
  auto it = kb.entities.find(answer);
  if (it == kb.entities.end()) return false;
  for (const auto& variant : it->second) {
    if (contains_token_seq(doc->body, tokenize(variant))) return true;
  }
  return false;
}

InduceResult induce_split(const KnowledgeBase& kb, const BipartiteGraph& graph,
                          const Corpus& corpus, const InduceConfig& config,
                          const KnowledgeBase* pool_kb) {
  const KnowledgeBase& pool = pool_kb != nullptr ? *pool_kb : kb;
  InduceResult out;
  out.ledger = empty_ledger();

  const auto queries = queries_from_kb(kb);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const Query& q = queries[i].first;
    const EntityId& answer = queries[i].second;

    char idbuf[64];
    std::snprintf(idbuf, sizeof(idbuf), "%s_%06zu", config.split.c_str(), i);
    const std::string sample_id = idbuf;

    if (config.source_filter_enabled() && answer_in_source(q, answer, corpus, kb)) {
      ++out.ledger[to_string(DiscardReason::AnswerInSource)];
      continue;
    }
    if (!graph.has_entity(q.subject)) {
      ++out.ledger[to_string(DiscardReason::SubjectAbsent)];
      continue;
    }

    // Type-consistent pool from the designated training facts, always
    // containing the current answer; closed-world exclusions come from this
    // split's own facts.
    std::set<EntityId> endpoints = type_consistent_candidates(pool, q.relation);
    endpoints.insert(answer);
    for (const auto& t : kb.triples) {
      if (t.subject == q.subject && t.relation == q.relation && t.object != answer) {
        endpoints.erase(t.object);
      }
    }
    endpoints.erase(q.subject);

    const TraversalResult result = traverse(graph, q.subject, endpoints, config.max_chain);

    Rng rng(derive_seed(config.seed, sample_id));
    AssembleOutcome outcome;
    if (config.balance_enabled()) {
      const BalanceResult balanced = balance_documents(result, answer, config.caps.max_docs);
      outcome = assemble_sample(result, q, answer, config.caps, kb, corpus, sample_id, rng,
                                &balanced);
    } else {
      outcome = assemble_sample(result, q, answer, config.caps, kb, corpus, sample_id, rng);
    }

    if (outcome.discard) {
      ++out.ledger[to_string(*outcome.discard)];
    } else {
      out.samples.push_back(std::move(*outcome.sample));
    }
  }
  return out;
}

}  // namespace multihop
