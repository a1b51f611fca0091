#pragma once
// Documents, tokenization policy, mention annotation, truncation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multihop/kb.hpp"
#include "multihop/text.hpp"

namespace multihop {

struct Mention {
  EntityId entity;
  std::size_t start = 0;   // token index into the body
  std::size_t length = 0;  // token count, >= 1

  bool operator==(const Mention&) const = default;
};

// A document as ingested: raw text, not yet truncated or tokenized.
struct RawDocument {
  std::string doc_id;
  std::string title;
  std::string text;
  std::optional<EntityId> canonical_entity;
  std::optional<std::vector<Mention>> mentions;  // pre-supplied, token-indexed
};

struct Document {
  std::string doc_id;
  std::string title;
  TokenSeq body;
  std::optional<EntityId> canonical_entity;
  std::vector<Mention> mentions;

  std::string body_text() const { return join_tokens(body); }
};

struct TruncationPolicy {
  enum class Kind { None, FirstParagraph, MaxTokens };
  Kind kind = Kind::None;
  std::size_t max_tokens = 300;
  bool keep_title = true;

  static TruncationPolicy none() { return {}; }
  static TruncationPolicy first_paragraph() { return {Kind::FirstParagraph, 0, true}; }
  static TruncationPolicy max_tokens_policy(std::size_t n, bool keep_title = true) {
    return {Kind::MaxTokens, n, keep_title};
  }
  // "none" | "first_paragraph" | "max_tokens:N"
  static TruncationPolicy parse(const std::string& spec);
  std::string to_string() const;
};

// Name-variant lookup table; variants are tokenized with the pipeline
// tokenizer at construction. Throws when a variant tokenizes to nothing.
class Lexicon {
 public:
  Lexicon() = default;
  static Lexicon from_kb(const KnowledgeBase& kb);

  void add(const std::string& variant, const EntityId& entity);

  const std::vector<TokenSeq>& patterns() const { return patterns_; }
  const EntityId& owner(std::size_t pattern_index) const { return owners_[pattern_index]; }
  bool empty() const { return patterns_.empty(); }

 private:
  std::vector<TokenSeq> patterns_;
  std::vector<EntityId> owners_;
  std::map<std::string, std::size_t> by_key_;  // lowercased joined tokens -> index
};

// All maximal exact token-subsequence matches of lexicon variants in the
// document body, case-insensitive, longest-match-first then leftmost,
// sorted by start. Output spans never overlap.
std::vector<Mention> annotate_mentions(const Document& doc, const Lexicon& lexicon);

// Applies the truncation policy; returns nothing when the truncated body is
// empty (such documents are dropped from the corpus). Pre-supplied mentions
// that do not fit the kept span are discarded.
std::optional<Document> truncate_document(const RawDocument& raw, const TruncationPolicy& policy);

struct Corpus {
  std::vector<Document> docs;
  std::map<DocId, std::size_t> by_id;
  // canonical entity -> indexes of documents claiming it (the encyclopedic
  // graph build requires at most one per entity)
  std::map<EntityId, std::vector<std::size_t>> canonical_claims;

  const Document* find(const DocId& id) const;
  const Document* canonical_doc(const EntityId& entity) const;  // first claim or null
  void add(Document doc);
};

// Applies truncation and annotates mentions with the lexicon for documents
// that did not ship their own. Pass a null lexicon to skip annotation.
Corpus build_corpus(const std::vector<RawDocument>& raw, const TruncationPolicy& policy,
                    const Lexicon* lexicon);

// Reads a JSON Lines corpus and runs build_corpus on it.
Corpus load_corpus(const std::string& path, const TruncationPolicy& policy,
                   const Lexicon* lexicon);

void write_corpus(const std::vector<RawDocument>& docs, const std::string& path);

}  // namespace multihop
