#include "multihop/debias.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "multihop/rng.hpp"

namespace multihop {

using nlohmann::json;

int CooccurrenceTable::count(const DocId& doc, const std::string& candidate) const {
  auto dit = counts.find(doc);
  if (dit == counts.end()) return 0;
  auto cit = dit->second.find(candidate);
  if (cit == dit->second.end()) return 0;
  return cit->second;
}

CooccurrenceTable build_cooccurrence(const std::vector<Sample>& train_samples,
                                     const std::string& split_label) {
  CooccurrenceTable table;
  table.built_from = split_label;
  for (const auto& s : train_samples) {
    for (const auto& d : s.supports) {
      table.counts[d.doc_id][s.answer] += 1;
    }
  }
  return table;
}

void write_cooccurrence(const CooccurrenceTable& table, const std::string& path) {
  struct Row {
    DocId doc;
    std::string candidate;
    int count;
  };
  std::vector<Row> rows;
  for (const auto& [doc, per_candidate] : table.counts) {
    for (const auto& [cand, n] : per_candidate) rows.push_back({doc, cand, n});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.doc != b.doc) return a.doc < b.doc;
    return a.candidate < b.candidate;
  });
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cooccurrence export: " + path);
  for (const auto& r : rows) {
    json j;
    j["doc_id"] = r.doc;
    j["candidate"] = r.candidate;
    j["count"] = r.count;
    out << j.dump() << '\n';
  }
}

std::vector<Sample> filter_by_cooccurrence(const std::vector<Sample>& samples,
                                           const CooccurrenceTable& table, int threshold) {
  std::vector<Sample> kept;
  kept.reserve(samples.size());
  for (const auto& s : samples) {
    bool cued = false;
    for (const auto& d : s.supports) {
      for (const auto& c : s.candidates) {
        if (table.count(d.doc_id, c) > threshold) {
          cued = true;
          break;
        }
      }
      if (cued) break;
    }
    if (!cued) kept.push_back(s);
  }
  return kept;
}

std::vector<Sample> cap_answer_frequency(const std::vector<Sample>& samples, double cap,
                                         std::uint64_t seed) {
  if (cap <= 0.0 || samples.empty()) {
    if (cap <= 0.0) throw std::invalid_argument("cap_answer_frequency: cap must be positive");
    return samples;
  }
  if (cap >= 1.0) return samples;

  std::map<std::string, std::vector<std::size_t>> by_answer;  // answer -> sample indexes
  for (std::size_t i = 0; i < samples.size(); ++i) {
    by_answer[samples[i].answer].push_back(i);
  }

  // Fixed point of n' = sum_i min(c_i, max(1, floor(cap * n'))): removing
  // samples shrinks the set and lowers the per-answer allowance, so iterate
  // downward until stable.
  std::size_t total = samples.size();
  std::size_t allowance = 0;
  for (;;) {
    allowance = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(cap * static_cast<double>(total))));
    std::size_t next = 0;
    for (const auto& [answer, idxs] : by_answer) {
      next += std::min(idxs.size(), allowance);
    }
    if (next == total) break;
    total = next;
  }

  std::vector<bool> removed(samples.size(), false);
  for (const auto& [answer, idxs] : by_answer) {
    if (idxs.size() <= allowance) continue;
    std::vector<std::size_t> pool = idxs;
    Rng rng(derive_seed(seed, answer));
    rng.shuffle(pool);
    for (std::size_t k = 0; k < idxs.size() - allowance; ++k) removed[pool[k]] = true;
  }

  std::vector<Sample> kept;
  kept.reserve(total);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!removed[i]) kept.push_back(samples[i]);
  }
  return kept;
}

std::map<DocId, EntityId> doc_canonical_from_corpus(const Corpus& corpus) {
  std::map<DocId, EntityId> out;
  for (const auto& d : corpus.docs) {
    if (d.canonical_entity) out[d.doc_id] = *d.canonical_entity;
  }
  return out;
}

std::vector<Sample> apply_blocklist(const std::vector<Sample>& samples,
                                    const std::set<EntityId>& blocked_entities,
                                    const std::map<DocId, EntityId>& doc_canonical) {
  if (blocked_entities.empty()) return samples;

  auto blocked_doc = [&](const DocId& id) {
    auto it = doc_canonical.find(id);
    return it != doc_canonical.end() && blocked_entities.count(it->second) > 0;
  };

  std::vector<Sample> kept;
  kept.reserve(samples.size());
  for (const auto& s : samples) {
    Sample pruned = s;
    pruned.supports.clear();
    for (const auto& d : s.supports) {
      if (!blocked_doc(d.doc_id)) pruned.supports.push_back(d);
    }
    pruned.gold_paths.clear();
    for (const auto& chain : s.gold_paths) {
      const bool broken = std::any_of(chain.begin(), chain.end(), blocked_doc);
      if (!broken) pruned.gold_paths.push_back(chain);
    }
    if (pruned.gold_paths.empty()) continue;  // every gold chain broke
    kept.push_back(std::move(pruned));
  }
  return kept;
}

std::vector<std::string> placeholder_pool(std::size_t pool_size) {
  std::vector<std::string> pool;
  pool.reserve(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) pool.push_back("MASK" + std::to_string(i));
  return pool;
}

namespace {

TokenSeq replace_matches(const TokenSeq& tokens, const std::vector<TokenSeq>& patterns,
                         const std::vector<std::string>& replacements) {
  const auto matches = match_token_patterns(tokens, patterns);
  TokenSeq out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  for (const auto& m : matches) {
    while (i < m.start) out.push_back(tokens[i++]);
    out.push_back(replacements[m.pattern]);
    i = m.start + m.length;
  }
  while (i < tokens.size()) out.push_back(tokens[i++]);
  return out;
}

bool looks_like_placeholder(const std::string& s) {
  if (s.size() < 5 || s.compare(0, 4, "MASK") != 0) return false;
  for (std::size_t i = 4; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

MaskedSample mask_sample(const Sample& sample, std::size_t pool_size, std::uint64_t seed) {
  if (sample.candidates.size() > pool_size) {
    throw std::runtime_error("sample '" + sample.id + "' has " +
                             std::to_string(sample.candidates.size()) +
                             " candidates, more than the placeholder pool of " +
                             std::to_string(pool_size));
  }
  const std::vector<std::string> pool = placeholder_pool(pool_size);
  std::vector<std::size_t> pick(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) pick[i] = i;
  Rng rng(derive_seed(seed, sample.id));
  rng.shuffle(pick);

  std::map<std::string, std::string> mask_map;
  std::vector<TokenSeq> patterns;
  std::vector<std::string> replacements;
  for (std::size_t i = 0; i < sample.candidates.size(); ++i) {
    const std::string& cand = sample.candidates[i];
    const std::string& placeholder = pool[pick[i]];
    mask_map.emplace(cand, placeholder);
    patterns.push_back(tokenize(cand));
    replacements.push_back(placeholder);
  }

  auto answer_it = mask_map.find(sample.answer);
  if (answer_it == mask_map.end()) {
    throw std::runtime_error("sample '" + sample.id + "': answer is not among the candidates");
  }

  MaskedSample out;
  out.mask_map = mask_map;
  Sample& m = out.sample;
  m.id = sample.id;
  m.query = sample.query;
  m.answer = answer_it->second;
  for (const auto& c : sample.candidates) m.candidates.push_back(mask_map.at(c));
  for (const auto& d : sample.supports) {
    m.supports.push_back(
        {d.doc_id, d.title, join_tokens(replace_matches(d.tokens(), patterns, replacements))});
  }
  m.gold_paths = sample.gold_paths;
  for (const auto& [cand, n] : sample.candidate_paths) {
    auto it = mask_map.find(cand);
    m.candidate_paths[it != mask_map.end() ? it->second : cand] = n;
  }
  m.masked = true;
  m.mask_map = mask_map;
  return out;
}

Sample unmask_sample(const Sample& masked) {
  std::map<std::string, std::string> reverse;  // placeholder -> original
  for (const auto& [orig, ph] : masked.mask_map) reverse[ph] = orig;

  auto restore = [&](const std::string& s) {
    auto it = reverse.find(s);
    return it != reverse.end() ? it->second : s;
  };

  Sample out;
  out.id = masked.id;
  out.query = masked.query;
  out.answer = restore(masked.answer);
  for (const auto& c : masked.candidates) out.candidates.push_back(restore(c));
  for (const auto& d : masked.supports) {
    TokenSeq tokens = d.tokens();
    TokenSeq restored;
    for (const auto& t : tokens) {
      auto it = reverse.find(t);
      if (it == reverse.end()) {
        restored.push_back(t);
      } else {
        for (auto& piece : tokenize(it->second)) restored.push_back(std::move(piece));
      }
    }
    out.supports.push_back({d.doc_id, d.title, join_tokens(restored)});
  }
  out.gold_paths = masked.gold_paths;
  for (const auto& [cand, n] : masked.candidate_paths) {
    out.candidate_paths[restore(cand)] = n;
  }
  out.masked = false;
  return out;
}

std::string unmask_prediction(const std::string& prediction,
                              const std::map<std::string, std::string>& mask_map) {
  for (const auto& [orig, ph] : mask_map) {
    if (ph == prediction) return orig;
  }
  if (looks_like_placeholder(prediction)) {
    throw std::runtime_error("prediction '" + prediction + "' is not in the sample's mask map");
  }
  return prediction;
}

}  // namespace multihop
