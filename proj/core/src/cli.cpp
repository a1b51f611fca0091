#include "multihop/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "multihop/baselines.hpp"
#include "multihop/dataset.hpp"
#include "multihop/debias.hpp"
#include "multihop/evaluate.hpp"
#include "multihop/graph.hpp"
#include "multihop/induce.hpp"
#include "multihop/rng.hpp"
#include "multihop/stats.hpp"
#include "multihop/synth.hpp"

namespace multihop {

using nlohmann::json;

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
  PipelineConfig c;
  if (j.contains("policy")) c.policy = j.at("policy").get<std::string>();
  if (j.contains("max_chain")) c.max_chain = j.at("max_chain").get<std::size_t>();
  if (j.contains("max_docs")) c.max_docs = j.at("max_docs").get<std::size_t>();
  if (j.contains("max_cands")) c.max_cands = j.at("max_cands").get<std::size_t>();
  if (j.contains("cooc_threshold")) c.cooc_threshold = j.at("cooc_threshold").get<int>();
  if (j.contains("answer_cap")) c.answer_cap = j.at("answer_cap").get<double>();
  if (j.contains("mask_pool")) c.mask_pool = j.at("mask_pool").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("split")) c.split = j.at("split").get<std::string>();
  if (j.contains("truncation")) c.truncation = j.at("truncation").get<std::string>();
  if (j.contains("train_kb")) c.train_kb = j.at("train_kb").get<std::string>();
  if (c.max_chain == 0 || c.max_docs == 0 || c.max_cands == 0 || c.mask_pool == 0 ||
      c.cooc_threshold <= 0 || c.answer_cap <= 0.0) {
    throw std::runtime_error("config bounds must be positive: " + path);
  }
  return c;
}

TruncationPolicy PipelineConfig::truncation_policy() const {
  if (!truncation.empty()) return TruncationPolicy::parse(truncation);
  if (policy == "encyclopedic") return TruncationPolicy::first_paragraph();
  if (policy == "biomedical") return TruncationPolicy::max_tokens_policy(300);
  return TruncationPolicy::none();
}

namespace {

bool builtin_policy(const std::string& policy) {
  return policy == "encyclopedic" || policy == "biomedical";
}

BipartiteGraph build_for_policy(const Corpus& corpus, const KnowledgeBase& kb,
                                const std::string& policy, bool drug_name_edges) {
  if (policy == "encyclopedic") return build_encyclopedic_graph(corpus, kb);
  if (policy == "biomedical") {
    return build_biomedical_graph(corpus, kb, {drug_name_edges});
  }
  return build_graph(corpus, kb, load_edge_rules(policy), "custom");
}

void emit(const json& summary) { std::cout << summary.dump() << std::endl; }

std::set<EntityId> load_blocklist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open blocklist file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("blocklist parse error in " + path + ": " + e.what());
  }
  if (!j.is_array()) throw std::runtime_error("blocklist must be a JSON array of entity ids");
  std::set<EntityId> blocked;
  for (const auto& e : j) blocked.insert(e.get<std::string>());
  return blocked;
}

// Applies an ablation view; candidate-docs-only drops samples whose support
// set empties out.
std::vector<Sample> apply_view(const std::vector<Sample>& samples, const std::string& view) {
  if (view == "full") return samples;
  std::vector<Sample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (view == "gold-chain") {
      out.push_back(gold_chain_view(s));
    } else if (view == "candidate-docs-only") {
      Sample v = candidate_docs_only_view(s);
      if (!v.supports.empty()) out.push_back(std::move(v));
    } else {
      throw std::runtime_error("unknown view: " + view);
    }
  }
  return out;
}

int cmd_build(const std::string& kb_path, const std::string& corpus_path,
              const std::string& policy, const std::string& truncation,
              bool drug_name_edges, const std::string& out_path) {
  const KnowledgeBase kb = load_kb(kb_path);
  const Lexicon lexicon = Lexicon::from_kb(kb);
  PipelineConfig defaults;
  defaults.policy = policy;
  defaults.truncation = truncation;
  const Corpus corpus = load_corpus(corpus_path, defaults.truncation_policy(), &lexicon);
  const BipartiteGraph graph = build_for_policy(corpus, kb, policy, drug_name_edges);
  save_graph(graph, out_path);
  emit(json{{"subcommand", "build"},
            {"policy", graph.policy_tag},
            {"documents", graph.doc_to_entities.size()},
            {"entities", graph.entity_to_docs.size()},
            {"out", out_path}});
  return 0;
}

int cmd_induce(const std::string& graph_path, const std::string& kb_path,
               const std::string& corpus_path, const std::string& config_path,
               const std::string& out_path, const std::string& ledger_path) {
  PipelineConfig config;
  if (!config_path.empty()) config = PipelineConfig::from_file(config_path);

  const KnowledgeBase kb = load_kb(kb_path);
  const Lexicon lexicon = Lexicon::from_kb(kb);
  const Corpus corpus = load_corpus(corpus_path, config.truncation_policy(), &lexicon);
  const BipartiteGraph graph = load_graph(graph_path);

  const std::string expected_tag = builtin_policy(config.policy) ? config.policy : "custom";
  if (graph.policy_tag != expected_tag) {
    throw std::runtime_error("graph cache was built with policy '" + graph.policy_tag +
                             "' but the config asks for '" + expected_tag + "'");
  }

  InduceConfig ic;
  ic.policy = expected_tag;
  ic.split = config.split;
  ic.seed = config.seed;
  ic.max_chain = config.max_chain;
  ic.caps = {config.max_docs, config.max_cands};

  KnowledgeBase pool_kb;
  const KnowledgeBase* pool = nullptr;
  if (!config.train_kb.empty()) {
    pool_kb = load_kb(config.train_kb);
    pool = &pool_kb;
  }

  const InduceResult result = induce_split(kb, graph, corpus, ic, pool);
  write_dataset(result.samples, out_path);
  write_discard_ledger(result.ledger, ledger_path);

  json discards = json::object();
  for (const auto& [reason, n] : result.ledger) discards[reason] = n;
  emit(json{{"subcommand", "induce"},
            {"split", config.split},
            {"samples", result.samples.size()},
            {"discards", discards},
            {"out", out_path},
            {"ledger", ledger_path}});
  return 0;
}

int cmd_debias(const std::string& in_path, const std::string& train_path, double answer_cap,
               int cooc_threshold, const std::string& blocklist_path,
               const std::string& corpus_path, std::uint64_t seed,
               const std::string& cooc_out, const std::string& out_path) {
  std::vector<Sample> samples = read_dataset(in_path);
  const std::size_t n_in = samples.size();
  const bool same_file = std::filesystem::path(in_path) == std::filesystem::path(train_path);

  std::vector<Sample> train = same_file ? samples : read_dataset(train_path);

  std::size_t n_blocked = 0;
  if (!blocklist_path.empty()) {
    if (corpus_path.empty()) {
      throw std::runtime_error("--blocklist needs --corpus to resolve canonical entities");
    }
    const std::set<EntityId> blocked = load_blocklist(blocklist_path);
    const Corpus corpus = load_corpus(corpus_path, TruncationPolicy::none(), nullptr);
    const auto doc_canonical = doc_canonical_from_corpus(corpus);
    samples = apply_blocklist(samples, blocked, doc_canonical);
    train = same_file ? samples : apply_blocklist(train, blocked, doc_canonical);
    n_blocked = n_in - samples.size();
  }

  const std::size_t before_cap = samples.size();
  samples = cap_answer_frequency(samples, answer_cap, seed);
  train = same_file ? samples : cap_answer_frequency(train, answer_cap, seed);
  const std::size_t n_capped = before_cap - samples.size();

  const CooccurrenceTable table = build_cooccurrence(train);
  const std::size_t before_filter = samples.size();
  samples = filter_by_cooccurrence(samples, table, cooc_threshold);
  const std::size_t n_filtered = before_filter - samples.size();

  if (!cooc_out.empty()) write_cooccurrence(table, cooc_out);
  write_dataset(samples, out_path);
  emit(json{{"subcommand", "debias"},
            {"in", n_in},
            {"blocklist_removed", n_blocked},
            {"cap_removed", n_capped},
            {"cooccurrence_removed", n_filtered},
            {"samples", samples.size()},
            {"out", out_path}});
  return 0;
}

int cmd_mask(const std::string& in_path, std::uint64_t seed, std::size_t pool,
             const std::string& out_path) {
  const std::vector<Sample> samples = read_dataset(in_path);
  std::vector<Sample> masked;
  masked.reserve(samples.size());
  for (const auto& s : samples) {
    masked.push_back(mask_sample(s, pool, seed).sample);
  }
  write_dataset(masked, out_path);
  emit(json{{"subcommand", "mask"}, {"samples", masked.size()}, {"out", out_path}});
  return 0;
}

int cmd_baseline(const std::string& model, const std::string& train_path,
                 const std::string& test_path, std::uint64_t seed, const std::string& view,
                 const std::string& out_path) {
  const std::vector<Sample> test = apply_view(read_dataset(test_path), view);

  const bool needs_train = model == "majority" || model == "cue";
  if (needs_train && train_path.empty()) {
    throw std::runtime_error("model '" + model + "' needs --train");
  }

  MajorityStats majority;
  CooccurrenceTable table;
  if (needs_train) {
    const std::vector<Sample> train = read_dataset(train_path);
    if (model == "majority") majority = MajorityStats::from_train(train);
    if (model == "cue") table = build_cooccurrence(train);
  }

  std::vector<Prediction> preds;
  preds.reserve(test.size());
  for (const auto& s : test) {
    if (model == "random") {
      preds.push_back(predict_random(s, seed));
    } else if (model == "maxmention") {
      preds.push_back(predict_max_mention(s, seed));
    } else if (model == "majority") {
      preds.push_back(predict_majority(majority, s));
    } else if (model == "tfidf") {
      preds.push_back(predict_tfidf(s));
    } else if (model == "cue") {
      preds.push_back(predict_document_cue(table, s));
    } else {
      throw std::runtime_error("unknown model: " + model);
    }
  }
  write_predictions(preds, out_path);
  emit(json{{"subcommand", "baseline"},
            {"model", model},
            {"view", view},
            {"predictions", preds.size()},
            {"out", out_path}});
  return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& gold_path,
             const std::string& view) {
  const std::vector<Sample> gold = apply_view(read_dataset(gold_path), view);
  const std::vector<Prediction> preds = read_predictions(pred_path);
  const EvalReport report = exact_match_accuracy(preds, gold);
  std::cout << report.to_json() << std::endl;
  return 0;
}

int cmd_stats(const std::string& in_path, const std::string& out_dir) {
  const std::vector<Sample> samples = read_dataset(in_path);
  write_stats_files(samples, out_dir);
  emit(json{{"subcommand", "stats"}, {"samples", samples.size()}, {"out", out_dir}});
  return 0;
}

int cmd_synth(const std::string& spec_path, std::uint64_t seed, bool seed_given,
              const std::string& out_dir) {
  FixtureSpec spec;
  if (!spec_path.empty()) spec = load_fixture_spec(spec_path);
  if (seed_given) spec.seed = seed;
  spec.validate();
  const Fixture fixture = generate_fixture(spec);
  write_fixture(fixture, out_dir);
  emit(json{{"subcommand", "synth"},
            {"facts", fixture.truth.facts.size()},
            {"documents", fixture.documents.size()},
            {"out", out_dir}});
  return 0;
}

int cmd_export(const std::string& in_path, std::uint64_t seed, const std::string& view,
               const std::string& out_path) {
  const std::vector<Sample> samples = apply_view(read_dataset(in_path), view);
  std::vector<SuperDocument> docs;
  std::size_t skipped = 0;
  for (const auto& s : samples) {
    try {
      docs.push_back(superdocument_export(s, seed));
    } catch (const std::runtime_error&) {
      ++skipped;  // answer mentioned in no support; flagged, not exported
    }
  }
  write_superdocuments(docs, out_path);
  emit(json{{"subcommand", "export"},
            {"exported", docs.size()},
            {"skipped", skipped},
            {"out", out_path}});
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"multi-hop dataset induction toolkit"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "build the bipartite graph and cache it");
  std::string b_kb, b_corpus, b_policy = "encyclopedic", b_out, b_trunc;
  bool b_drug_name_edges = false;
  build->add_option("--kb", b_kb, "KB JSON file")->required();
  build->add_option("--corpus", b_corpus, "corpus JSONL file")->required();
  build->add_option("--policy", b_policy, "encyclopedic | biomedical | edge-rule file");
  build->add_option("--truncation", b_trunc, "none | first_paragraph | max_tokens:N");
  build->add_flag("--drug-name-edges", b_drug_name_edges,
                  "biomedical: also connect docs mentioning the drug name");
  build->add_option("--out", b_out, "graph cache path")->required();

  // induce
  auto* induce = app.add_subcommand("induce", "induce samples from KB facts");
  std::string i_graph, i_kb, i_corpus, i_config, i_out, i_ledger;
  induce->add_option("--graph", i_graph, "graph cache from `build`")->required();
  induce->add_option("--kb", i_kb, "KB JSON file")->required();
  induce->add_option("--corpus", i_corpus, "corpus JSONL file")->required();
  induce->add_option("--config", i_config, "pipeline config JSON");
  induce->add_option("--out", i_out, "dataset JSONL output")->required();
  induce->add_option("--ledger", i_ledger, "discard ledger JSON output")->required();

  // debias
  auto* debias = app.add_subcommand("debias", "frequency capping and cue filtering");
  std::string d_in, d_train, d_blocklist, d_corpus, d_cooc_out, d_out;
  double d_cap = 0.001;
  int d_threshold = 20;
  std::uint64_t d_seed = 0;
  debias->add_option("--in", d_in, "dataset JSONL to debias")->required();
  debias->add_option("--train", d_train, "training split (cooccurrence statistics)")->required();
  debias->add_option("--answer-cap", d_cap, "max share per answer (default 0.001)");
  debias->add_option("--cooc-threshold", d_threshold, "drop pairs above this count (default 20)");
  debias->add_option("--blocklist", d_blocklist, "JSON array of blocked entity ids");
  debias->add_option("--corpus", d_corpus, "corpus JSONL (canonical entities for --blocklist)");
  debias->add_option("--seed", d_seed, "seed for capping removal");
  debias->add_option("--cooc-out", d_cooc_out, "also export the cooccurrence table (JSONL)");
  debias->add_option("--out", d_out, "output JSONL")->required();

  // mask
  auto* mask = app.add_subcommand("mask", "replace candidates with placeholders");
  std::string m_in, m_out;
  std::uint64_t m_seed = 0;
  std::size_t m_pool = 100;
  mask->add_option("--in", m_in, "dataset JSONL")->required();
  mask->add_option("--seed", m_seed, "seed for placeholder assignment");
  mask->add_option("--pool", m_pool, "placeholder pool size (default 100)");
  mask->add_option("--out", m_out, "output JSONL")->required();

  // baseline
  auto* baseline = app.add_subcommand("baseline", "run a non-neural predictor");
  std::string bl_model, bl_train, bl_test, bl_view = "full", bl_out;
  std::uint64_t bl_seed = 0;
  baseline->add_option("--model", bl_model, "random | maxmention | majority | tfidf | cue")
      ->required()
      ->check(CLI::IsMember({"random", "maxmention", "majority", "tfidf", "cue"}));
  baseline->add_option("--train", bl_train, "training split (majority, cue)");
  baseline->add_option("--test", bl_test, "samples to predict")->required();
  baseline->add_option("--seed", bl_seed, "seed for random choices and tie breaks");
  baseline->add_option("--view", bl_view, "full | gold-chain | candidate-docs-only")
      ->check(CLI::IsMember({"full", "gold-chain", "candidate-docs-only"}));
  baseline->add_option("--out", bl_out, "predictions JSONL output")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "exact-match scoring");
  std::string e_pred, e_gold, e_view = "full";
  eval->add_option("--pred", e_pred, "predictions JSONL")->required();
  eval->add_option("--gold", e_gold, "gold dataset JSONL")->required();
  eval->add_option("--view", e_view, "full | gold-chain | candidate-docs-only")
      ->check(CLI::IsMember({"full", "gold-chain", "candidate-docs-only"}));

  // stats
  auto* stats = app.add_subcommand("stats", "split statistics and histograms");
  std::string s_in, s_out;
  stats->add_option("--in", s_in, "dataset JSONL")->required();
  stats->add_option("--out", s_out, "output directory")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic fixture");
  std::string sy_spec, sy_out;
  std::uint64_t sy_seed = 0;
  synth->add_option("--spec", sy_spec, "fixture spec JSON (defaults apply when omitted)");
  auto* sy_seed_opt = synth->add_option("--seed", sy_seed, "override the seed from the fixture spec file");
  synth->add_option("--out", sy_out, "output directory")->required();

  // export
  auto* exp = app.add_subcommand("export", "superdocument export for span models");
  std::string x_in, x_view = "full", x_out;
  std::uint64_t x_seed = 0;
  exp->add_option("--in", x_in, "dataset JSONL")->required();
  exp->add_option("--seed", x_seed, "seed for document order");
  exp->add_option("--view", x_view, "full | gold-chain | candidate-docs-only")
      ->check(CLI::IsMember({"full", "gold-chain", "candidate-docs-only"}));
  exp->add_option("--out", x_out, "superdocument JSONL output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) {
      return cmd_build(b_kb, b_corpus, b_policy, b_trunc, b_drug_name_edges, b_out);
    }
    if (induce->parsed()) {
      return cmd_induce(i_graph, i_kb, i_corpus, i_config, i_out, i_ledger);
    }
    if (debias->parsed()) {
      return cmd_debias(d_in, d_train, d_cap, d_threshold, d_blocklist, d_corpus, d_seed,
                        d_cooc_out, d_out);
    }
    if (mask->parsed()) return cmd_mask(m_in, m_seed, m_pool, m_out);
    if (baseline->parsed()) {
      return cmd_baseline(bl_model, bl_train, bl_test, bl_seed, bl_view, bl_out);
    }
    if (eval->parsed()) return cmd_eval(e_pred, e_gold, e_view);
    if (stats->parsed()) return cmd_stats(s_in, s_out);
    if (synth->parsed()) return cmd_synth(sy_spec, sy_seed, sy_seed_opt->count() > 0, sy_out);
    if (exp->parsed()) return cmd_export(x_in, x_seed, x_view, x_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "error: no subcommand given\n";
  return 2;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("multihop");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace multihop
