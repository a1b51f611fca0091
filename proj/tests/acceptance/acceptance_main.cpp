// Acceptance suite: runs every pipeline guarantee end to end and prints one
// pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "multihop/baselines.hpp"
#include "multihop/cli.hpp"
#include "multihop/dataset.hpp"
#include "multihop/debias.hpp"
#include "multihop/evaluate.hpp"
#include "multihop/graph.hpp"
#include "multihop/induce.hpp"
#include "multihop/rng.hpp"
#include "multihop/stats.hpp"
#include "multihop/synth.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using namespace multihop;
using testutil::make_sample;
using testutil::support;

namespace {

struct Harness {
  int failures = 0;
  int index = 0;

  void run(const std::string& name, const std::function<void()>& body) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty()) {
      std::printf("[PASS] criterion %d: %s (%.2fs)\n", index, name.c_str(), secs);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s (%.2fs) -- %s\n", index, name.c_str(), secs,
                  error.c_str());
    }
    std::fflush(stdout);
  }
};

void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// criterion 1: traversal equals the exhaustive oracle on 200 seeded fixtures

void criterion_traversal_oracle() {
  const auto start = std::chrono::steady_clock::now();
  int checked = 0;

  // 100 random bipartite graphs
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    const std::size_t n_docs = 6 + rng.below(7);      // 6..12
    const std::size_t n_entities = 4 + rng.below(5);  // 4..8
    const auto g = testutil::random_graph(rng, n_docs, n_entities, 0.15 + rng.unit() * 0.25,
                                          0.15 + rng.unit() * 0.25);
    std::set<EntityId> endpoints;
    for (std::size_t e = 0; e < n_entities / 2 + 1; ++e) {
      endpoints.insert("ent" + std::to_string(e));
    }
    const EntityId subject = "ent" + std::to_string(n_entities - 1);
    const std::size_t max_chain = 1 + rng.below(3);
    const auto fast = traverse(g, subject, endpoints, max_chain);
    const auto slow = brute_force_paths(g, subject, endpoints, max_chain);
    require(fast.paths == slow, "random graph seed " + std::to_string(seed) +
                                    ": chain sets differ from the oracle");
    ++checked;
  }

  // 100 planted fixtures
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    FixtureSpec spec;
    spec.n_entities = 4;
    spec.n_facts = 2;
    spec.chain_lengths = {1 + seed % 3};
    spec.distractors = 1;
    spec.cue_bias = seed % 2 == 0 ? 1 : 0;
    spec.seed = seed;
    const Fixture fx = generate_fixture(spec);
    const Corpus corpus = fx.corpus();
    const BipartiteGraph g = build_encyclopedic_graph(corpus, fx.kb);
    require(g.doc_to_entities.size() <= 12,
            "fixture seed " + std::to_string(seed) + " exceeds 12 documents");
    for (const auto& [q, answer] : queries_from_kb(fx.kb)) {
      const auto endpoints = endpoint_set(fx.kb, q, answer);
      const auto fast = traverse(g, q.subject, endpoints, 3);
      const auto slow = brute_force_paths(g, q.subject, endpoints, 3);
      require(fast.paths == slow, "fixture seed " + std::to_string(seed) +
                                      ": chain sets differ from the oracle");
    }
    ++checked;
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(checked == 200, "expected 200 fixtures");
  require(secs < 10.0, "oracle equivalence took " + std::to_string(secs) + "s, budget is 10s");
}

// ---------------------------------------------------------------------------
// criterion 2: sample invariants on induced fixture datasets

void check_sample_invariants(const std::vector<Sample>& samples, std::size_t max_chain,
                             const BipartiteGraph& graph) {
  for (const auto& s : samples) {
    require(std::find(s.candidates.begin(), s.candidates.end(), s.answer) != s.candidates.end(),
            s.id + ": answer missing from candidates");
    require(s.supports.size() <= 64, s.id + ": more than 64 supports");
    require(s.candidates.size() <= 100, s.id + ": more than 100 candidates");
    require(!s.gold_paths.empty(), s.id + ": no gold chain");
    for (const auto& chain : s.gold_paths) {
      require(chain.size() <= max_chain, s.id + ": gold chain longer than the cap");
      for (const auto& doc : chain) {
        bool in_support = false;
        for (const auto& d : s.supports) in_support |= d.doc_id == doc;
        require(in_support, s.id + ": gold chain document outside the support set");
      }
      // consecutive chain documents connect through a shared entity
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        bool connected = false;
        for (const auto& e : graph.docs_entities(chain[k])) {
          connected |= graph.entity_docs(e).count(chain[k + 1]) > 0;
        }
        require(connected, s.id + ": gold chain hop has no connecting entity");
      }
    }
    for (const auto& c : s.candidates) {
      bool mentioned = false;
      for (const auto& d : s.supports) {
        if (contains_token_seq(d.tokens(), tokenize(c))) {
          mentioned = true;
          break;
        }
      }
      require(mentioned, s.id + ": candidate '" + c + "' unmentioned in supports");
      auto it = s.candidate_paths.find(c);
      require(it != s.candidate_paths.end() && it->second >= 1,
              s.id + ": candidate '" + c + "' lacks a chain count");
    }
    require(s.candidate_paths.size() == s.candidates.size(),
            s.id + ": candidate_paths keys diverge from the candidate list");
  }
}

void criterion_sample_invariants() {
  const std::vector<FixtureSpec> specs = [] {
    std::vector<FixtureSpec> out;
    FixtureSpec a;
    a.n_entities = 20;
    a.n_facts = 120;
    a.chain_lengths = {2, 3};
    a.distractors = 3;
    a.seed = 11;
    out.push_back(a);
    FixtureSpec b;
    b.n_entities = 30;
    b.n_facts = 200;
    b.chain_lengths = {2};
    b.distractors = 5;
    b.cue_bias = 25;
    b.seed = 12;
    out.push_back(b);
    FixtureSpec c;
    c.n_entities = 12;
    c.n_facts = 60;
    c.chain_lengths = {3};
    c.distractors = 1;
    c.answer_skew = 0.4;
    c.seed = 13;
    out.push_back(c);
    return out;
  }();

  std::size_t total = 0;
  for (const auto& spec : specs) {
    const Fixture fx = generate_fixture(spec);
    const Corpus corpus = fx.corpus();
    const BipartiteGraph graph = build_encyclopedic_graph(corpus, fx.kb);
    InduceConfig ic;
    ic.seed = spec.seed;
    const auto result = induce_split(fx.kb, graph, corpus, ic);
    require(!result.samples.empty(), "fixture induced no samples");
    check_sample_invariants(result.samples, ic.max_chain, graph);
    total += result.samples.size();
  }
  require(total >= 300, "expected at least 300 induced samples across fixtures");
}

// ---------------------------------------------------------------------------
// criterion 3: planted cue is perfect before filtering, near chance after

// Cue groups push the filter threshold; symmetric pairs tie afterwards.
std::vector<Sample> cue_dataset() {
  std::vector<Sample> samples;
  const std::string a1 = "alpha1";
  const std::string a2 = "alpha2";

  // 25 cue samples per answer; 19 of each group share a side doc with one
  // of 5 symmetric pairs, keeping that pair's cue count at exactly 20
  for (int g = 0; g < 2; ++g) {
    const std::string ans = g == 0 ? a1 : a2;
    const std::string cue_doc = g == 0 ? "d_cue1" : "d_cue2";
    for (int i = 0; i < 25; ++i) {
      std::vector<SupportDoc> sups = {support(cue_doc, ans + " appears here")};
      // sample i contributes to side docs of pairs whose window covers i
      for (int pair = 0; pair < 5; ++pair) {
        bool in_window = false;
        for (int t = 0; t < 19; ++t) in_window |= (pair + t) % 25 == i;
        if (in_window) {
          sups.push_back(support("d_x" + std::to_string(g) + "_" + std::to_string(pair),
                                 ans + " side note"));
        }
      }
      samples.push_back(make_sample("cue" + std::to_string(g) + "_" + std::to_string(i), "r",
                                    ans, {a1, a2}, sups));
    }
  }

  // 5 symmetric pairs that survive the filter and tie afterwards
  for (int pair = 0; pair < 5; ++pair) {
    const std::string shared = "d_pair" + std::to_string(pair);
    samples.push_back(make_sample(
        "pair" + std::to_string(pair) + "_a", "r", a1, {a1, a2},
        {support(shared, a1 + " versus " + a2),
         support("d_x0_" + std::to_string(pair), a1 + " side note")}));
    samples.push_back(make_sample(
        "pair" + std::to_string(pair) + "_b", "r", a2, {a1, a2},
        {support(shared, a1 + " versus " + a2),
         support("d_x1_" + std::to_string(pair), a2 + " side note")}));
  }
  return samples;
}

void criterion_cue_filter() {
  const std::vector<Sample> data = cue_dataset();
  const CooccurrenceTable table = build_cooccurrence(data);
  require(table.count("d_cue1", "alpha1") == 25, "cue strength should be 25");
  require(table.count("d_x0_0", "alpha1") == 20, "side doc count should sit at the threshold");

  std::size_t correct = 0;
  for (const auto& s : data) {
    if (predict_document_cue(table, s).predicted == s.answer) ++correct;
  }
  require(correct == data.size(), "document-cue should be perfect before filtering, got " +
                                      std::to_string(correct) + "/" +
                                      std::to_string(data.size()));

  const std::vector<Sample> filtered = filter_by_cooccurrence(data, table, 20);
  require(filtered.size() == 10, "exactly the 10 symmetric-pair samples should survive, got " +
                                     std::to_string(filtered.size()));

  const CooccurrenceTable recount = build_cooccurrence(filtered);
  for (const auto& [doc, per_candidate] : recount.counts) {
    for (const auto& [cand, n] : per_candidate) {
      require(n <= 20, "recomputed count " + std::to_string(n) + " exceeds the threshold");
    }
  }

  double chance = 0.0;
  std::size_t post_correct = 0;
  for (const auto& s : filtered) {
    chance += 1.0 / static_cast<double>(s.candidates.size());
    if (predict_document_cue(recount, s).predicted == s.answer) ++post_correct;
  }
  chance /= static_cast<double>(filtered.size());
  const double post_accuracy =
      static_cast<double>(post_correct) / static_cast<double>(filtered.size());
  require(post_accuracy <= chance + 0.10,
          "post-filter accuracy " + std::to_string(post_accuracy) +
              " exceeds chance + 10pp (chance " + std::to_string(chance) + ")");
}

// ---------------------------------------------------------------------------
// criterion 4: the answer-frequency cap holds exactly

void criterion_answer_cap() {
  std::vector<Sample> samples;
  Rng rng(2024);
  // 3000 hot-answer samples and 7000 spread over 5000 answers
  for (int i = 0; i < 3000; ++i) {
    samples.push_back(
        make_sample("hot" + std::to_string(i), "r", "hot", {"hot"}, {support("d", "hot")}));
  }
  for (int i = 0; i < 7000; ++i) {
    const std::string a = "a" + std::to_string(rng.below(5000));
    samples.push_back(
        make_sample("s" + std::to_string(i), "r", a, {a}, {support("d", a)}));
  }
  require(samples.size() == 10000, "fixture should hold 10000 samples");

  const auto capped = cap_answer_frequency(samples, 0.001, 7);
  std::map<std::string, std::size_t> counts;
  for (const auto& s : capped) counts[s.answer] += 1;
  const double n = static_cast<double>(capped.size());
  for (const auto& [answer, c] : counts) {
    require(static_cast<double>(c) / n <= 0.001,
            "answer '" + answer + "' keeps a share above 0.1%");
  }
}

// ---------------------------------------------------------------------------
// criterion 5: masking round-trips and stays inside the pool

void criterion_masking() {
  FixtureSpec spec;
  spec.n_entities = 40;
  spec.n_facts = 1000;
  spec.chain_lengths = {2, 3};
  spec.distractors = 4;
  spec.seed = 99;
  const Fixture fx = generate_fixture(spec);
  const Corpus corpus = fx.corpus();
  const BipartiteGraph graph = build_encyclopedic_graph(corpus, fx.kb);
  InduceConfig ic;
  ic.seed = 1;
  const auto induced = induce_split(fx.kb, graph, corpus, ic);
  require(induced.samples.size() == 1000, "expected 1000 induced samples, got " +
                                              std::to_string(induced.samples.size()));

  const auto pool = placeholder_pool(100);
  const std::set<std::string> pool_set(pool.begin(), pool.end());
  for (const auto& s : induced.samples) {
    const MaskedSample masked = mask_sample(s, 100, 4242);
    std::set<std::string> used;
    for (const auto& [orig, ph] : masked.mask_map) {
      require(pool_set.count(ph) == 1, s.id + ": placeholder outside the fixed pool");
      used.insert(ph);
    }
    require(used.size() == masked.mask_map.size(), s.id + ": mask map is not injective");
    const Sample back = unmask_sample(masked.sample);
    require(sample_to_json_line(back) == sample_to_json_line(s),
            s.id + ": mask/unmask round trip is not byte-identical");
  }
}

// ---------------------------------------------------------------------------
// criterion 6: baseline sanity suite

void criterion_baselines() {
  // Random: Monte-Carlo accuracy within 2% of mean(1/|C|)
  {
    FixtureSpec spec;
    spec.n_entities = 30;
    spec.n_facts = 200;
    spec.chain_lengths = {2};
    spec.distractors = 3;
    spec.seed = 17;
    const Fixture fx = generate_fixture(spec);
    const Corpus corpus = fx.corpus();
    const BipartiteGraph graph = build_encyclopedic_graph(corpus, fx.kb);
    const auto induced = induce_split(fx.kb, graph, corpus, InduceConfig{});
    require(!induced.samples.empty(), "random-baseline fixture induced nothing");

    double expected = 0.0;
    for (const auto& s : induced.samples) {
      expected += 1.0 / static_cast<double>(s.candidates.size());
    }
    expected /= static_cast<double>(induced.samples.size());

    std::size_t correct = 0;
    const std::size_t trials = 10000;
    for (std::size_t t = 0; t < trials; ++t) {
      const Sample& s = induced.samples[t % induced.samples.size()];
      Sample fresh = s;
      fresh.id = s.id + "#" + std::to_string(t);
      if (predict_random(fresh, 31).predicted == s.answer) ++correct;
    }
    const double got = static_cast<double>(correct) / static_cast<double>(trials);
    require(std::abs(got - expected) < 0.02,
            "random accuracy " + std::to_string(got) + " not within 2% of " +
                std::to_string(expected));
  }

  // Max-mention equals a naive scan oracle on 100 fixtures
  {
    Rng rng(88);
    const std::vector<std::string> vocab = {"cand0", "cand1", "cand0 cand1", "filler", "words"};
    for (int fixture = 0; fixture < 100; ++fixture) {
      const std::vector<std::string> candidates = {"cand0", "cand1", "cand0 cand1"};
      std::vector<SupportDoc> sups;
      for (int d = 0; d < 2 + static_cast<int>(rng.below(3)); ++d) {
        TokenSeq toks;
        for (int t = 0; t < 15; ++t) toks.push_back(vocab[rng.below(vocab.size())]);
        sups.push_back(support("d" + std::to_string(d), join_tokens(toks)));
      }
      Sample s = make_sample("mm" + std::to_string(fixture), "r", candidates[0], candidates, sups);

      // naive oracle: repeatedly take the longest, leftmost free occurrence
      std::map<std::string, std::size_t> oracle_counts;
      for (const auto& sup : sups) {
        const TokenSeq toks = lower_tokens(sup.tokens());
        std::vector<bool> used(toks.size(), false);
        while (true) {
          std::size_t best_len = 0, best_start = 0;
          std::string best_cand;
          for (const auto& cand : candidates) {
            const TokenSeq pat = lower_tokens(tokenize(cand));
            for (std::size_t st = 0; st + pat.size() <= toks.size(); ++st) {
              bool ok = true;
              for (std::size_t k = 0; k < pat.size() && ok; ++k) {
                ok = !used[st + k] && toks[st + k] == pat[k];
              }
              if (!ok) continue;
              if (pat.size() > best_len ||
                  (pat.size() == best_len && st < best_start)) {
                best_len = pat.size();
                best_start = st;
                best_cand = cand;
              }
            }
          }
          if (best_len == 0) break;
          for (std::size_t k = best_start; k < best_start + best_len; ++k) used[k] = true;
          oracle_counts[best_cand] += 1;
        }
      }
      std::size_t best_count = 0;
      for (const auto& [cand, n] : oracle_counts) best_count = std::max(best_count, n);

      const Prediction p = predict_max_mention(s, 3);
      require(p.score.has_value() && *p.score == static_cast<double>(best_count),
              "max-mention count differs from the naive oracle on fixture " +
                  std::to_string(fixture));
      require(oracle_counts[p.predicted] == best_count,
              "max-mention picked a non-maximal candidate on fixture " +
                  std::to_string(fixture));
    }
  }

  // Majority and document-cue match hand-computed argmaxes on 20 samples
  {
    std::vector<Sample> train;
    for (int i = 0; i < 9; ++i) {
      train.push_back(make_sample("t" + std::to_string(i), "rel1", "x", {"x"},
                                  {support("dx", "x")}));
    }
    for (int i = 9; i < 15; ++i) {
      train.push_back(make_sample("t" + std::to_string(i), "rel1", "y", {"y"},
                                  {support("dy", "y")}));
    }
    for (int i = 15; i < 20; ++i) {
      train.push_back(make_sample("t" + std::to_string(i), "rel2", "z", {"z"},
                                  {support("dz", "z")}));
    }
    const auto stats = MajorityStats::from_train(train);
    const auto table = build_cooccurrence(train);

    const Sample q1 = make_sample("q1", "rel1", "y", {"x", "y"}, {support("d", "x y")});
    require(predict_majority(stats, q1).predicted == "x", "majority argmax should be x (9 > 6)");
    const Sample q2 = make_sample("q2", "rel2", "z", {"x", "z"}, {support("d", "x z")});
    require(predict_majority(stats, q2).predicted == "z", "majority argmax should be z for rel2");

    const Sample q3 = make_sample("q3", "rel1", "x", {"x", "y"},
                                  {support("dx", "x y"), support("dz", "x")});
    require(predict_document_cue(table, q3).predicted == "x",
            "document-cue argmax should be x (count 9)");
    const Sample q4 = make_sample("q4", "rel1", "y", {"x", "y"}, {support("dy", "x y")});
    require(predict_document_cue(table, q4).predicted == "y",
            "document-cue argmax should be y (count 6 on dy)");
  }

  // TF-IDF matches an independent recomputation on a 3-doc fixture
  {
    Sample s = make_sample("tf", "born_in", "veridia", {"altona", "veridia", "zed"},
                           {
                               support("d1", "subject born in altona", "t1"),
                               support("d2", "subject born in veridia veridia", "t2"),
                               support("d3", "zed only here", "t3"),
                           });
    s.query = {"subject", "born_in"};
    const auto index = TfIdfIndex::over_supports(s);
    const Prediction p = predict_tfidf(index, s);

    double best_score = -1.0;
    std::string best_cand;
    for (const auto& cand : s.candidates) {
      std::set<std::string> terms = {"subject", "born", "in"};
      for (const auto& t : lower_tokens(tokenize(cand))) terms.insert(t);
      double cand_best = 0.0;
      for (const auto& sup : s.supports) {
        TokenSeq doc = lower_tokens(tokenize(sup.title));
        for (const auto& t : sup.tokens()) doc.push_back(lower_copy(t));
        double score = 0.0;
        for (const auto& term : terms) {
          int tf = 0;
          for (const auto& t : doc) tf += t == term ? 1 : 0;
          if (tf == 0) continue;
          int df = 0;
          for (const auto& other : s.supports) {
            TokenSeq od = lower_tokens(tokenize(other.title));
            for (const auto& t : other.tokens()) od.push_back(lower_copy(t));
            df += std::find(od.begin(), od.end(), term) != od.end() ? 1 : 0;
          }
          score += tf * (1.0 + std::log(3.0 / (1.0 + df)));
        }
        cand_best = std::max(cand_best, score);
      }
      if (cand_best > best_score) {
        best_score = cand_best;
        best_cand = cand;
      }
    }
    require(p.predicted == best_cand, "tf-idf argmax differs from the recomputation");
    require(p.score.has_value() && std::abs(*p.score - best_score) < 1e-9,
            "tf-idf score differs from the recomputation");
  }
}

// ---------------------------------------------------------------------------
// criterion 7: ablation views move accuracy the right way

void criterion_ablation_views() {
  // ten main samples misled by a shared noise doc, five samples that make
  // the distractor's cue strong
  std::vector<Sample> data;
  for (int i = 0; i < 10; ++i) {
    const std::string ans = "ans" + std::to_string(i);
    data.push_back(make_sample(
        "main" + std::to_string(i), "r", ans, {ans, "zzz"},
        {
            support("bridge" + std::to_string(i), "hub only, no answers"),
            support("gold" + std::to_string(i), ans + " " + ans + " stated"),
            support("noise", "zzz zzz zzz shared"),
        },
        {{"bridge" + std::to_string(i), "gold" + std::to_string(i)}}));
  }
  for (int i = 0; i < 5; ++i) {
    data.push_back(make_sample("extra" + std::to_string(i), "r", "zzz", {"zzz", "ans0"},
                               {support("noise", "zzz zzz zzz shared"),
                                support("e" + std::to_string(i), "zzz here")},
                               {{"noise"}}));
  }

  const auto table = build_cooccurrence(data);

  auto accuracy = [&](const std::vector<Sample>& samples, auto&& predict) {
    std::size_t correct = 0;
    for (const auto& s : samples) {
      if (predict(s) == s.answer) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(samples.size());
  };
  auto cue = [&](const Sample& s) { return predict_document_cue(table, s).predicted; };
  auto maxmention = [&](const Sample& s) { return predict_max_mention(s, 5).predicted; };

  std::vector<Sample> gold_view;
  for (const auto& s : data) gold_view.push_back(gold_chain_view(s));

  const double cue_full = accuracy(data, cue);
  const double cue_gold = accuracy(gold_view, cue);
  require(cue_gold >= cue_full, "document-cue should not get worse on the gold-chain view");
  require(cue_gold > cue_full + 0.3, "gold-chain view should sharply improve document-cue here");

  const double mm_full = accuracy(data, maxmention);
  const double mm_gold = accuracy(gold_view, maxmention);
  require(mm_gold >= mm_full, "max-mention should not get worse on the gold-chain view");

  // candidate-docs-only removes exactly the mention-free bridge docs of the
  // planted two-hop chains
  for (int i = 0; i < 10; ++i) {
    const Sample view = candidate_docs_only_view(data[i]);
    std::set<std::string> kept;
    for (const auto& d : view.supports) kept.insert(d.doc_id);
    require(kept.count("bridge" + std::to_string(i)) == 0, "bridge doc should be removed");
    require(kept.count("gold" + std::to_string(i)) == 1, "gold doc should stay");
    require(kept.count("noise") == 1, "candidate-bearing noise doc should stay");
  }
}

// ---------------------------------------------------------------------------
// criterion 8: normalization conformance table

void criterion_normalization() {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"The United Kingdom.", "united kingdom"},
      {"norway", "norway"},
      {"  A  cat ", "cat"},
      {"An Apple", "apple"},
      {"THE LOUD ANSWER", "loud answer"},
      {"a", ""},
      {"an", ""},
      {"the", ""},
      {"theocracy", "theocracy"},
      {"anand", "anand"},
      {"a.cat", "acat"},
      {"U.S.A.", "usa"},
      {"middle-earth", "middleearth"},
      {"'quoted'", "quoted"},
      {"(parenthetical)", "parenthetical"},
      {"comma, separated, list", "comma separated list"},
      {"semi;colon", "semicolon"},
      {"tabs\tbecome\tspaces", "tabs become spaces"},
      {"newlines\ntoo", "newlines too"},
      {"Mixed   RUNS    of spaces", "mixed runs of spaces"},
      {"trailing spaces   ", "trailing spaces"},
      {"   leading spaces", "leading spaces"},
      {"The A An The", ""},
      {"42nd Street", "42nd street"},
      {"100%", "100"},
      {"ellipsis…here", "ellipsishere"},
      {"curly ‘quotes’", "curly quotes"},
      {"en–dash", "endash"},
      {"Café!", "café"},
      {"", ""},
  };
  require(cases.size() == 30, "the conformance table must hold 30 cases");
  for (const auto& [input, expected] : cases) {
    const std::string got = normalize_answer(input);
    require(got == expected,
            "normalize('" + input + "') = '" + got + "', expected '" + expected + "'");
  }
}

// ---------------------------------------------------------------------------
// criterion 9 and 10: determinism, byte-level round trip, throughput

struct PipelineArtifacts {
  std::string dataset;
  std::string ledger;
  std::string masked;
  std::string stats;
  std::map<std::string, std::string> predictions;
};

PipelineArtifacts run_pipeline(const fs::path& dir) {
  fs::create_directories(dir);
  const auto p = [&](const std::string& name) { return (dir / name).string(); };

  FixtureSpec spec;
  spec.n_entities = 50;
  spec.n_facts = 1000;
  spec.chain_lengths = {2, 3};
  spec.distractors = 3;
  spec.answer_skew = 0.2;
  spec.cue_bias = 25;
  spec.seed = 1234;
  const Fixture fx = generate_fixture(spec);
  write_fixture(fx, dir.string());

  const KnowledgeBase kb = load_kb(p("kb.json"));
  const Lexicon lexicon = Lexicon::from_kb(kb);
  const Corpus corpus = load_corpus(p("corpus.jsonl"), TruncationPolicy::first_paragraph(),
                                    &lexicon);
  const BipartiteGraph graph = build_encyclopedic_graph(corpus, kb);

  InduceConfig ic;
  ic.seed = 777;
  const InduceResult induced = induce_split(kb, graph, corpus, ic);
  write_dataset(induced.samples, p("data.jsonl"));
  write_discard_ledger(induced.ledger, p("ledger.json"));

  // debias: cap then cue-filter on the same split
  std::vector<Sample> samples = cap_answer_frequency(induced.samples, 0.05, 777);
  const CooccurrenceTable table = build_cooccurrence(samples);
  samples = filter_by_cooccurrence(samples, table, 20);
  write_dataset(samples, p("debiased.jsonl"));

  // mask
  std::vector<Sample> masked;
  for (const auto& s : samples) masked.push_back(mask_sample(s, 100, 777).sample);
  write_dataset(masked, p("masked.jsonl"));

  // baselines on the debiased split
  const auto majority = MajorityStats::from_train(samples);
  const auto cue_table = build_cooccurrence(samples);
  PipelineArtifacts art;
  for (const std::string model : {"random", "maxmention", "majority", "tfidf", "cue"}) {
    std::vector<Prediction> preds;
    for (const auto& s : samples) {
      if (model == "random") preds.push_back(predict_random(s, 9));
      if (model == "maxmention") preds.push_back(predict_max_mention(s, 9));
      if (model == "majority") preds.push_back(predict_majority(majority, s));
      if (model == "tfidf") preds.push_back(predict_tfidf(s));
      if (model == "cue") preds.push_back(predict_document_cue(cue_table, s));
    }
    write_predictions(preds, p("preds_" + model + ".jsonl"));
    art.predictions[model] = p("preds_" + model + ".jsonl");

    const EvalReport report = exact_match_accuracy(preds, samples);
    std::ofstream out(p("eval_" + model + ".json"));
    out << report.to_json() << '\n';
  }

  write_stats_files(samples, (dir / "stats").string());

  art.dataset = p("data.jsonl");
  art.ledger = p("ledger.json");
  art.masked = p("masked.jsonl");
  art.stats = (dir / "stats" / "stats.json").string();
  return art;
}

void criterion_determinism_and_roundtrip() {
  const auto base = fs::temp_directory_path() / "multihop_acceptance";
  fs::remove_all(base);
  const PipelineArtifacts a = run_pipeline(base / "run_a");
  const PipelineArtifacts b = run_pipeline(base / "run_b");

  require(slurp(a.dataset) == slurp(b.dataset), "dataset files differ between identical runs");
  require(slurp(a.ledger) == slurp(b.ledger), "ledger files differ between identical runs");
  require(slurp(a.masked) == slurp(b.masked), "masked files differ between identical runs");
  require(slurp(a.stats) == slurp(b.stats), "stats files differ between identical runs");
  for (const auto& [model, path] : a.predictions) {
    require(slurp(path) == slurp(b.predictions.at(model)),
            "prediction files differ for model " + model);
  }

  // dataset JSONL round-trips losslessly
  const auto samples = read_dataset(a.dataset);
  const auto copy = (base / "copy.jsonl").string();
  write_dataset(samples, copy);
  require(slurp(a.dataset) == slurp(copy), "dataset round trip is not byte-identical");
  fs::remove_all(base);
}

void criterion_throughput() {
  const auto dir = fs::temp_directory_path() / "multihop_acceptance_speed";
  fs::remove_all(dir);
  const auto start = std::chrono::steady_clock::now();
  run_pipeline(dir);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fs::remove_all(dir);
  require(secs < 60.0, "end-to-end pipeline took " + std::to_string(secs) + "s, budget is 60s");
}

}  // namespace

int main() {
  Harness h;
  h.run("traversal oracle equivalence on 200 seeded fixtures", criterion_traversal_oracle);
  h.run("sample invariants on induced fixture datasets", criterion_sample_invariants);
  h.run("cue-filter efficacy on a planted-cue fixture", criterion_cue_filter);
  h.run("answer-frequency cap postcondition", criterion_answer_cap);
  h.run("masking round trip, injectivity and pool membership", criterion_masking);
  h.run("baseline sanity suite", criterion_baselines);
  h.run("ablation direction checks", criterion_ablation_views);
  h.run("answer normalization conformance table", criterion_normalization);
  h.run("determinism and byte-level round trip", criterion_determinism_and_roundtrip);
  h.run("desk-scale end-to-end throughput", criterion_throughput);

  if (h.failures > 0) {
    std::printf("%d of 10 criteria failed\n", h.failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
