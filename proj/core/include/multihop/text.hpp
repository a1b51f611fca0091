#pragma once
// Tokenization and token-sequence matching shared across the pipeline.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace multihop {

using Token = std::string;
using TokenSeq = std::vector<std::string>;

// Whitespace split with leading/trailing punctuation detached into
// single-character tokens. Deterministic; preserves every non-whitespace
// character. "Lisbon, Portugal." -> [Lisbon][,][Portugal][.]
TokenSeq tokenize(std::string_view text);

// Identifier-style inputs (KB subjects, relation names) additionally split
// on underscores and are lowercased.
TokenSeq tokenize_query_part(std::string_view text);

std::string join_tokens(const TokenSeq& tokens);

// ASCII-only case fold; multi-byte sequences pass through untouched.
std::string lower_copy(std::string_view s);
TokenSeq lower_tokens(const TokenSeq& tokens);

// Punctuation test over the frozen code-point set (ASCII punctuation plus
// common general-punctuation marks); see text.cpp for the exact list.
bool is_punct_codepoint(char32_t cp);

// Copy of `s` with every punctuation code point removed.
std::string remove_punct_codepoints(std::string_view s);

// One non-overlapping occurrence of patterns[pattern] starting at token
// `start` of the subject sequence.
struct TokenMatch {
  std::size_t start = 0;
  std::size_t length = 0;
  std::size_t pattern = 0;
};

// All case-insensitive token-subsequence matches of `patterns` in `tokens`,
// overlaps resolved longest-match-first then leftmost. Result sorted by
// start position. Patterns must be non-empty token sequences.
std::vector<TokenMatch> match_token_patterns(const TokenSeq& tokens,
                                             const std::vector<TokenSeq>& patterns);

// Occurrence count per pattern under the same matching rule.
std::vector<std::size_t> count_token_patterns(const TokenSeq& tokens,
                                              const std::vector<TokenSeq>& patterns);

// True when `pattern` occurs at least once in `tokens` (case-insensitive
// contiguous subsequence; no overlap resolution needed for a single pattern).
bool contains_token_seq(const TokenSeq& tokens, const TokenSeq& pattern);

}  // namespace multihop
