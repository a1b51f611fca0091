#include "doctest.h"
#include "multihop/corpus.hpp"

#include <filesystem>
#include <fstream>

#include "multihop/rng.hpp"
#include "testutil.hpp"

using namespace multihop;

namespace {

Document doc_with_body(const std::string& text) {
  Document d;
  d.doc_id = "d";
  d.title = "d";
  d.body = tokenize(text);
  return d;
}

}  // namespace

TEST_CASE("mention annotation finds exact variant matches") {
  Lexicon lex;
  lex.add("gnrh receptor", "P1");
  const auto mentions = annotate_mentions(doc_with_body("GnRH receptor blocked"), lex);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0] == Mention{"P1", 0, 2});
}

TEST_CASE("longest variant wins on overlap") {
  Lexicon lex;
  lex.add("york", "E1");
  lex.add("new york", "E2");
  const auto mentions = annotate_mentions(doc_with_body("new york"), lex);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0] == Mention{"E2", 0, 2});
}

TEST_CASE("empty lexicon annotates nothing") {
  CHECK(annotate_mentions(doc_with_body("anything at all"), Lexicon{}).empty());
}

TEST_CASE("variants that tokenize to nothing are a configuration error") {
  Lexicon lex;
  CHECK_THROWS(lex.add("   ", "E1"));
}

TEST_CASE("mention spans never overlap and match their variants") {
  Lexicon lex;
  lex.add("a b", "E1");
  lex.add("b c", "E2");
  lex.add("c", "E3");
  Rng rng(3);
  const std::vector<std::string> vocab = {"a", "b", "c", "x"};
  for (int trial = 0; trial < 40; ++trial) {
    TokenSeq body;
    for (int i = 0; i < 25; ++i) body.push_back(vocab[rng.below(vocab.size())]);
    Document d;
    d.doc_id = "d";
    d.body = body;
    const auto mentions = annotate_mentions(d, lex);
    std::vector<bool> used(body.size(), false);
    for (const auto& m : mentions) {
      CHECK(m.length >= 1);
      CHECK(m.start + m.length <= body.size());
      for (std::size_t k = m.start; k < m.start + m.length; ++k) {
        CHECK(!used[k]);
        used[k] = true;
      }
    }
  }
}

TEST_CASE("first-paragraph truncation cuts at the blank line") {
  RawDocument raw;
  raw.doc_id = "d";
  raw.title = "t";
  raw.text = "First paragraph sentence one.\nStill first.\n\nSecond paragraph here.";
  const auto doc = truncate_document(raw, TruncationPolicy::first_paragraph());
  REQUIRE(doc.has_value());
  CHECK(doc->body == tokenize("First paragraph sentence one.\nStill first.\n"));
}

TEST_CASE("max-token truncation keeps the title and the first N tokens") {
  RawDocument raw;
  raw.doc_id = "d";
  raw.title = "Abstract Title";
  std::string text;
  for (int i = 0; i < 458; ++i) text += "tok" + std::to_string(i) + " ";
  raw.text = text;
  const auto doc = truncate_document(raw, TruncationPolicy::max_tokens_policy(300));
  REQUIRE(doc.has_value());
  CHECK(doc->body.size() == 300);
  CHECK(doc->title == "Abstract Title");
}

TEST_CASE("mentions outside the kept span are discarded") {
  RawDocument raw;
  raw.doc_id = "d";
  raw.title = "t";
  raw.text = "one two three four five six";
  raw.mentions = std::vector<Mention>{{"E1", 0, 2}, {"E2", 3, 2}, {"E3", 2, 2}};
  const auto doc = truncate_document(raw, TruncationPolicy::max_tokens_policy(4));
  REQUIRE(doc.has_value());
  REQUIRE(doc->mentions.size() == 2);  // the span crossing token 4 is dropped
  CHECK(doc->mentions[0].entity == "E1");
  CHECK(doc->mentions[1].entity == "E3");
}

TEST_CASE("documents with empty truncated bodies are dropped") {
  RawDocument raw;
  raw.doc_id = "d";
  raw.title = "t";
  raw.text = "   ";
  CHECK(!truncate_document(raw, TruncationPolicy::none()).has_value());
}

TEST_CASE("truncate-then-annotate equals annotate-then-filter") {
  Lexicon lex;
  lex.add("a b", "E1");
  lex.add("c", "E2");
  Rng rng(11);
  const std::vector<std::string> vocab = {"a", "b", "c", "x", "y"};
  for (int trial = 0; trial < 30; ++trial) {
    TokenSeq body;
    for (int i = 0; i < 20; ++i) body.push_back(vocab[rng.below(vocab.size())]);
    RawDocument raw;
    raw.doc_id = "d";
    raw.title = "t";
    raw.text = join_tokens(body);
    const std::size_t keep = 5 + rng.below(15);

    const auto truncated = truncate_document(raw, TruncationPolicy::max_tokens_policy(keep));
    REQUIRE(truncated.has_value());
    const auto direct = annotate_mentions(*truncated, lex);

    Document full;
    full.doc_id = "d";
    full.body = body;
    std::vector<Mention> filtered;
    for (const auto& m : annotate_mentions(full, lex)) {
      if (m.start + m.length <= std::min(keep, body.size())) filtered.push_back(m);
    }
    CHECK(direct == filtered);
  }
}

TEST_CASE("truncation policy strings round trip") {
  CHECK(TruncationPolicy::parse("none").kind == TruncationPolicy::Kind::None);
  CHECK(TruncationPolicy::parse("first_paragraph").kind == TruncationPolicy::Kind::FirstParagraph);
  const auto p = TruncationPolicy::parse("max_tokens:300");
  CHECK(p.kind == TruncationPolicy::Kind::MaxTokens);
  CHECK(p.max_tokens == 300);
  CHECK_THROWS(TruncationPolicy::parse("max_tokens:abc"));
  CHECK_THROWS(TruncationPolicy::parse("bogus"));
}

TEST_CASE("corpus loading honors pre-supplied mentions and rejects duplicates") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "multihop_corpus_test.jsonl";
  {
    std::ofstream out(path);
    out << R"({"doc_id":"d1","title":"T1","text":"alpha beta gamma","mentions":[{"entity":"E9","start":1,"length":1}]})"
        << "\n";
    out << R"({"doc_id":"d2","title":"T2","text":"alpha beta"})" << "\n";
  }
  Lexicon lex;
  lex.add("alpha", "E1");
  const Corpus corpus = load_corpus(path.string(), TruncationPolicy::none(), &lex);
  REQUIRE(corpus.docs.size() == 2);
  // d1 keeps its own mentions, d2 was annotated
  CHECK(corpus.docs[0].mentions == std::vector<Mention>{{"E9", 1, 1}});
  CHECK(corpus.docs[1].mentions == std::vector<Mention>{{"E1", 0, 1}});

  {
    std::ofstream out(path);
    out << R"({"doc_id":"dup","title":"T","text":"x"})" << "\n";
    out << R"({"doc_id":"dup","title":"T","text":"y"})" << "\n";
  }
  CHECK_THROWS(load_corpus(path.string(), TruncationPolicy::none(), nullptr));
  fs::remove(path);
}
