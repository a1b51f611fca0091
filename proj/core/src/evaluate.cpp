#include "multihop/evaluate.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "multihop/rng.hpp"

namespace multihop {

using nlohmann::json;

std::string normalize_answer(const std::string& text) {
  // lowercase, then drop article words
  const TokenSeq words = [&] {
    TokenSeq out;
    std::string word;
    for (char c : lower_copy(text)) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        if (!word.empty()) out.push_back(std::move(word));
        word.clear();
      } else {
        word.push_back(c);
      }
    }
    if (!word.empty()) out.push_back(std::move(word));
    return out;
  }();

  std::string joined;
  for (const auto& w : words) {
    if (w == "a" || w == "an" || w == "the") continue;
    if (!joined.empty()) joined.push_back(' ');
    joined += w;
  }

  const std::string stripped = remove_punct_codepoints(joined);

  // collapse whitespace runs and trim
  std::string out;
  bool pending_space = false;
  for (char c : stripped) {
    if (c == ' ') {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string EvalReport::to_json() const {
  json j;
  j["accuracy"] = accuracy;
  j["n_scored"] = n_scored;
  j["per_query_type"] = per_query_type;
  return j.dump();
}

EvalReport exact_match_accuracy(const std::vector<Prediction>& preds,
                                const std::vector<Sample>& gold) {
  std::map<std::string, const Prediction*> by_id;
  for (const auto& p : preds) {
    if (!by_id.emplace(p.id, &p).second) {
      throw std::runtime_error("duplicate prediction id: " + p.id);
    }
  }

  EvalReport report;
  report.n_scored = gold.size();
  std::map<RelationId, std::pair<std::size_t, std::size_t>> per_type;  // correct, total
  std::size_t correct = 0;
  for (const auto& s : gold) {
    auto& [type_correct, type_total] = per_type[s.query.relation];
    ++type_total;
    auto it = by_id.find(s.id);
    if (it == by_id.end()) continue;  // missing prediction counts as incorrect
    if (normalize_answer(it->second->predicted) == normalize_answer(s.answer)) {
      ++correct;
      ++type_correct;
    }
  }
  report.accuracy = gold.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(gold.size());
  for (const auto& [rel, counts] : per_type) {
    report.per_query_type[rel] =
        static_cast<double>(counts.first) / static_cast<double>(counts.second);
  }
  return report;
}

namespace {

bool mentions_surface(const SupportDoc& doc, const std::string& surface) {
  return contains_token_seq(doc.tokens(), tokenize(surface));
}

}  // namespace

Sample gold_chain_view(const Sample& sample) {
  if (sample.gold_paths.empty()) {
    throw std::runtime_error("sample '" + sample.id + "' has no gold paths (corrupt sample)");
  }
  std::set<DocId> keep;
  for (const auto& chain : sample.gold_paths) keep.insert(chain.begin(), chain.end());

  Sample out = sample;
  out.supports.clear();
  for (const auto& d : sample.supports) {
    if (keep.count(d.doc_id) > 0) out.supports.push_back(d);
  }

  out.candidates.clear();
  for (const auto& c : sample.candidates) {
    if (c == sample.answer) {
      out.candidates.push_back(c);
      continue;
    }
    const bool mentioned = std::any_of(out.supports.begin(), out.supports.end(),
                                       [&](const SupportDoc& d) { return mentions_surface(d, c); });
    if (mentioned) out.candidates.push_back(c);
  }

  std::map<std::string, int> pruned_paths;
  for (const auto& c : out.candidates) {
    auto it = sample.candidate_paths.find(c);
    if (it != sample.candidate_paths.end()) pruned_paths[c] = it->second;
  }
  out.candidate_paths = std::move(pruned_paths);
  return out;
}

Sample candidate_docs_only_view(const Sample& sample) {
  Sample out = sample;
  out.supports.clear();
  for (const auto& d : sample.supports) {
    const bool has_candidate = std::any_of(
        sample.candidates.begin(), sample.candidates.end(),
        [&](const std::string& c) { return mentions_surface(d, c); });
    if (has_candidate) out.supports.push_back(d);
  }
  return out;
}

SuperDocument superdocument_export(const Sample& sample, std::uint64_t seed) {
  std::vector<std::size_t> order(sample.supports.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(seed, sample.id));
  rng.shuffle(order);

  SuperDocument out;
  out.id = sample.id;
  out.candidates = sample.candidates;
  out.answer = sample.answer;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0) out.tokens.push_back(kDocSeparator);
    const TokenSeq body = sample.supports[order[k]].tokens();
    out.tokens.insert(out.tokens.end(), body.begin(), body.end());
  }

  const TokenSeq answer_tokens = tokenize(sample.answer);
  const TokenSeq low = lower_tokens(out.tokens);
  const TokenSeq pat = lower_tokens(answer_tokens);
  bool found = false;
  if (!pat.empty() && pat.size() <= low.size()) {
    for (std::size_t s = 0; s + pat.size() <= low.size(); ++s) {
      if (std::equal(pat.begin(), pat.end(), low.begin() + s)) {
        out.span_start = s;
        out.span_end = s + pat.size() - 1;
        found = true;
        break;
      }
    }
  }
  if (!found) {
    throw std::runtime_error("sample '" + sample.id +
                             "': answer is mentioned in no support document");
  }
  return out;
}

void write_superdocuments(const std::vector<SuperDocument>& docs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write superdocument export: " + path);
  for (const auto& d : docs) {
    json j;
    j["id"] = d.id;
    j["tokens"] = d.tokens;
    j["span"] = json::array({d.span_start, d.span_end});
    j["candidates"] = d.candidates;
    j["answer"] = d.answer;
    out << j.dump() << '\n';
  }
}

}  // namespace multihop
