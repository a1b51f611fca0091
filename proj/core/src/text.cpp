#include "multihop/text.hpp"

#include <algorithm>
#include <cctype>

namespace multihop {
namespace {

bool is_ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Decodes the UTF-8 code point starting at `i`; malformed bytes are treated
// as single Latin-1 characters so no input is ever lost.
char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  len = 1;
  if (b0 < 0x80) return b0;
  std::size_t need = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
  } else {
    return b0;
  }
  if (i + need >= s.size()) return b0;  // truncated sequence
  for (std::size_t k = 1; k <= need; ++k) {
    const unsigned char bk = static_cast<unsigned char>(s[i + k]);
    if ((bk & 0xC0) != 0x80) return b0;
    cp = (cp << 6) | (bk & 0x3F);
  }
  len = need + 1;
  return cp;
}

}  // namespace

bool is_punct_codepoint(char32_t cp) {
  if (cp < 0x80) {
    return std::ispunct(static_cast<int>(cp)) != 0;
  }
  switch (cp) {
    // frozen non-ASCII set: quotes, dashes, ellipsis, guillemets, interpunct
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014:
    case 0x2015: case 0x2018: case 0x2019: case 0x201A: case 0x201C:
    case 0x201D: case 0x201E: case 0x2026: case 0x00AB: case 0x00BB:
    case 0x00B7: case 0x00A1: case 0x00BF:
      return true;
    default:
      return false;
  }
}

std::string remove_punct_codepoints(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    std::size_t len = 0;
    const char32_t cp = decode_utf8(s, i, len);
    if (!is_punct_codepoint(cp)) out.append(s.substr(i, len));
    i += len;
  }
  return out;
}

namespace {

// Splits a whitespace-free chunk into tokens by peeling punctuation
// code points off both ends.
void emit_chunk(std::string_view chunk, TokenSeq& out) {
  // leading punctuation
  std::size_t begin = 0;
  while (begin < chunk.size()) {
    std::size_t len = 0;
    const char32_t cp = decode_utf8(chunk, begin, len);
    if (!is_punct_codepoint(cp)) break;
    out.emplace_back(chunk.substr(begin, len));
    begin += len;
  }
  if (begin >= chunk.size()) return;

  // find the end of the core token by scanning trailing punctuation
  std::vector<std::pair<std::size_t, std::size_t>> cps;  // (offset, len)
  for (std::size_t i = begin; i < chunk.size();) {
    std::size_t len = 0;
    decode_utf8(chunk, i, len);
    cps.emplace_back(i, len);
    i += len;
  }
  std::size_t core_end = cps.size();
  while (core_end > 0) {
    const auto [off, len] = cps[core_end - 1];
    std::size_t l2 = 0;
    if (!is_punct_codepoint(decode_utf8(chunk, off, l2))) break;
    --core_end;
  }
  if (core_end > 0) {
    const std::size_t core_bytes = cps[core_end - 1].first + cps[core_end - 1].second - begin;
    out.emplace_back(chunk.substr(begin, core_bytes));
  }
  for (std::size_t k = core_end; k < cps.size(); ++k) {
    out.emplace_back(chunk.substr(cps[k].first, cps[k].second));
  }
}

}  // namespace

TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_ascii_space(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) emit_chunk(text.substr(i, j - i), out);
    i = j;
  }
  return out;
}

TokenSeq tokenize_query_part(std::string_view text) {
  std::string spaced(text);
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  return lower_tokens(tokenize(spaced));
}

std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string lower_copy(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

TokenSeq lower_tokens(const TokenSeq& tokens) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(lower_copy(t));
  return out;
}

std::vector<TokenMatch> match_token_patterns(const TokenSeq& tokens,
                                             const std::vector<TokenSeq>& patterns) {
  const TokenSeq low = lower_tokens(tokens);
  std::vector<std::vector<std::string>> pats;
  pats.reserve(patterns.size());
  for (const auto& p : patterns) pats.push_back(lower_tokens(p));

  std::vector<TokenMatch> all;
  for (std::size_t pi = 0; pi < pats.size(); ++pi) {
    const auto& pat = pats[pi];
    if (pat.empty() || pat.size() > low.size()) continue;
    for (std::size_t s = 0; s + pat.size() <= low.size(); ++s) {
      if (std::equal(pat.begin(), pat.end(), low.begin() + s)) {
        all.push_back({s, pat.size(), pi});
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const TokenMatch& a, const TokenMatch& b) {
    if (a.length != b.length) return a.length > b.length;
    if (a.start != b.start) return a.start < b.start;
    return a.pattern < b.pattern;
  });

  std::vector<TokenMatch> accepted;
  std::vector<bool> taken(low.size(), false);
  for (const auto& m : all) {
    bool free = true;
    for (std::size_t k = m.start; k < m.start + m.length; ++k) {
      if (taken[k]) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    for (std::size_t k = m.start; k < m.start + m.length; ++k) taken[k] = true;
    accepted.push_back(m);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const TokenMatch& a, const TokenMatch& b) { return a.start < b.start; });
  return accepted;
}

std::vector<std::size_t> count_token_patterns(const TokenSeq& tokens,
                                              const std::vector<TokenSeq>& patterns) {
  std::vector<std::size_t> counts(patterns.size(), 0);
  for (const auto& m : match_token_patterns(tokens, patterns)) {
    ++counts[m.pattern];
  }
  return counts;
}

bool contains_token_seq(const TokenSeq& tokens, const TokenSeq& pattern) {
  if (pattern.empty() || pattern.size() > tokens.size()) return false;
  const TokenSeq low = lower_tokens(tokens);
  const TokenSeq pat = lower_tokens(pattern);
  for (std::size_t s = 0; s + pat.size() <= low.size(); ++s) {
    if (std::equal(pat.begin(), pat.end(), low.begin() + s)) return true;
  }
  return false;
}

}  // namespace multihop
