#include "multihop/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "multihop/rng.hpp"

namespace multihop {

namespace {

void require_candidates(const Sample& sample) {
  if (sample.candidates.empty()) {
    throw std::runtime_error("sample '" + sample.id + "' has no candidates");
  }
}

// Lexicographically first candidate among those reaching the maximum score.
template <typename Score>
Prediction argmax_lex(const Sample& sample, Score&& score_of) {
  require_candidates(sample);
  std::vector<std::string> order = sample.candidates;
  std::sort(order.begin(), order.end());
  std::string best = order.front();
  double best_score = score_of(best);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const double s = score_of(order[i]);
    if (s > best_score) {
      best_score = s;
      best = order[i];
    }
  }
  return {sample.id, best, best_score};
}

}  // namespace

Prediction predict_random(const Sample& sample, std::uint64_t seed) {
  require_candidates(sample);
  Rng rng(derive_seed(seed, sample.id));
  const std::string& choice = sample.candidates[rng.below(sample.candidates.size())];
  return {sample.id, choice, std::nullopt};
}

Prediction predict_max_mention(const Sample& sample, std::uint64_t seed) {
  require_candidates(sample);
  std::vector<TokenSeq> patterns;
  patterns.reserve(sample.candidates.size());
  for (const auto& c : sample.candidates) patterns.push_back(tokenize(c));

  std::vector<std::size_t> totals(sample.candidates.size(), 0);
  for (const auto& d : sample.supports) {
    const auto counts = count_token_patterns(d.tokens(), patterns);
    for (std::size_t i = 0; i < counts.size(); ++i) totals[i] += counts[i];
  }

  const std::size_t best = *std::max_element(totals.begin(), totals.end());
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (totals[i] == best) tied.push_back(i);
  }
  Rng rng(derive_seed(seed, sample.id));
  const std::size_t pick = tied[rng.below(tied.size())];
  return {sample.id, sample.candidates[pick], static_cast<double>(best)};
}

MajorityStats MajorityStats::from_train(const std::vector<Sample>& train) {
  MajorityStats stats;
  for (const auto& s : train) {
    stats.counts[s.query.relation][s.answer] += 1;
  }
  return stats;
}

int MajorityStats::count(const RelationId& relation, const std::string& candidate) const {
  auto rit = counts.find(relation);
  if (rit == counts.end()) return 0;
  auto cit = rit->second.find(candidate);
  if (cit == rit->second.end()) return 0;
  return cit->second;
}

Prediction predict_majority(const MajorityStats& stats, const Sample& sample) {
  return argmax_lex(sample, [&](const std::string& c) {
    return static_cast<double>(stats.count(sample.query.relation, c));
  });
}

TfIdfIndex TfIdfIndex::over_supports(const Sample& sample) {
  TfIdfIndex index;
  index.doc_count = sample.supports.size();
  for (const auto& d : sample.supports) {
    index.doc_ids.push_back(d.doc_id);
    std::map<std::string, int> tf;
    for (const auto& t : lower_tokens(tokenize(d.title))) tf[t] += 1;
    for (const auto& t : lower_tokens(d.tokens())) tf[t] += 1;
    for (const auto& [term, n] : tf) {
      (void)n;
      index.doc_freq[term] += 1;
    }
    index.term_freq.push_back(std::move(tf));
  }
  return index;
}

double tfidf_score(const TfIdfIndex& index, const TokenSeq& query_terms,
                   std::size_t doc_index) {
  if (doc_index >= index.term_freq.size()) {
    throw std::out_of_range("tfidf_score: document index out of range");
  }
  const auto& tf = index.term_freq[doc_index];
  const double n = static_cast<double>(index.doc_count);

  std::set<std::string> distinct(query_terms.begin(), query_terms.end());
  double score = 0.0;
  for (const auto& term : distinct) {
    auto it = tf.find(term);
    if (it == tf.end()) continue;
    const double df = static_cast<double>(index.doc_freq.at(term));
    const double idf = 1.0 + std::log(n / (1.0 + df));
    score += static_cast<double>(it->second) * idf;
  }
  return score;
}

Prediction predict_tfidf(const TfIdfIndex& index, const Sample& sample) {
  const TokenSeq subject_terms = tokenize_query_part(sample.query.subject);
  const TokenSeq relation_terms = tokenize_query_part(sample.query.relation);

  return argmax_lex(sample, [&](const std::string& c) {
    TokenSeq query = subject_terms;
    query.insert(query.end(), relation_terms.begin(), relation_terms.end());
    for (const auto& t : lower_tokens(tokenize(c))) query.push_back(t);
    double best = 0.0;
    for (std::size_t d = 0; d < index.term_freq.size(); ++d) {
      best = std::max(best, tfidf_score(index, query, d));
    }
    return best;
  });
}

Prediction predict_tfidf(const Sample& sample) {
  const TfIdfIndex index = TfIdfIndex::over_supports(sample);
  return predict_tfidf(index, sample);
}

Prediction predict_document_cue(const CooccurrenceTable& table, const Sample& sample) {
  return argmax_lex(sample, [&](const std::string& c) {
    int best = 0;
    for (const auto& d : sample.supports) {
      best = std::max(best, table.count(d.doc_id, c));
    }
    return static_cast<double>(best);
  });
}

}  // namespace multihop
