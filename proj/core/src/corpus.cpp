#include "multihop/corpus.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace multihop {

using nlohmann::json;

TruncationPolicy TruncationPolicy::parse(const std::string& spec) {
  if (spec == "none") return none();
  if (spec == "first_paragraph") return first_paragraph();
  const std::string prefix = "max_tokens:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string arg = spec.substr(prefix.size());
    std::size_t pos = 0;
    const unsigned long n = std::stoul(arg, &pos);
    if (pos != arg.size() || n == 0) {
      throw std::runtime_error("bad truncation token count: " + spec);
    }
    return max_tokens_policy(n);
  }
  throw std::runtime_error("unknown truncation policy: " + spec);
}

std::string TruncationPolicy::to_string() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::FirstParagraph: return "first_paragraph";
    case Kind::MaxTokens: return "max_tokens:" + std::to_string(max_tokens);
  }
  return "none";
}

Lexicon Lexicon::from_kb(const KnowledgeBase& kb) {
  Lexicon lex;
  for (const auto& [id, names] : kb.entities) {
    for (const auto& n : names) lex.add(n, id);
  }
  return lex;
}

void Lexicon::add(const std::string& variant, const EntityId& entity) {
  TokenSeq toks = tokenize(variant);
  if (toks.empty()) {
    throw std::runtime_error("lexicon variant '" + variant + "' for entity '" + entity +
                             "' tokenizes to nothing");
  }
  const std::string key = lower_copy(join_tokens(toks));
  if (by_key_.count(key) > 0) return;  // first registration wins
  by_key_.emplace(key, patterns_.size());
  patterns_.push_back(std::move(toks));
  owners_.push_back(entity);
}

std::vector<Mention> annotate_mentions(const Document& doc, const Lexicon& lexicon) {
  std::vector<Mention> out;
  if (lexicon.empty()) return out;
  for (const auto& m : match_token_patterns(doc.body, lexicon.patterns())) {
    out.push_back({lexicon.owner(m.pattern), m.start, m.length});
  }
  return out;
}

namespace {

// Index of the first blank line in raw text, as a byte offset one past the
// paragraph; paragraph boundaries are detected before tokenization.
std::string first_paragraph_text(const std::string& text) {
  std::size_t line_start = 0;
  bool seen_content = false;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      bool blank = true;
      for (std::size_t k = line_start; k < i; ++k) {
        const char c = text[k];
        if (c != ' ' && c != '\t' && c != '\r') {
          blank = false;
          break;
        }
      }
      if (blank && seen_content) return text.substr(0, line_start);
      if (!blank) seen_content = true;
      line_start = i + 1;
    }
  }
  return text;
}

}  // namespace

std::optional<Document> truncate_document(const RawDocument& raw, const TruncationPolicy& policy) {
  TokenSeq full = tokenize(raw.text);
  std::size_t keep = full.size();
  switch (policy.kind) {
    case TruncationPolicy::Kind::None:
      break;
    case TruncationPolicy::Kind::FirstParagraph:
      keep = tokenize(first_paragraph_text(raw.text)).size();
      break;
    case TruncationPolicy::Kind::MaxTokens:
      keep = std::min(keep, policy.max_tokens);
      break;
  }
  if (keep == 0) return std::nullopt;

  Document doc;
  doc.doc_id = raw.doc_id;
  doc.title = policy.kind == TruncationPolicy::Kind::MaxTokens && !policy.keep_title
                  ? std::string{}
                  : raw.title;
  doc.body.assign(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(keep));
  doc.canonical_entity = raw.canonical_entity;
  if (raw.mentions) {
    for (const auto& m : *raw.mentions) {
      if (m.length >= 1 && m.start + m.length <= keep) doc.mentions.push_back(m);
    }
  }
  return doc;
}

const Document* Corpus::find(const DocId& id) const {
  auto it = by_id.find(id);
  if (it == by_id.end()) return nullptr;
  return &docs[it->second];
}

const Document* Corpus::canonical_doc(const EntityId& entity) const {
  auto it = canonical_claims.find(entity);
  if (it == canonical_claims.end() || it->second.empty()) return nullptr;
  return &docs[it->second.front()];
}

void Corpus::add(Document doc) {
  if (by_id.count(doc.doc_id) > 0) {
    throw std::runtime_error("duplicate doc_id in corpus: " + doc.doc_id);
  }
  const std::size_t idx = docs.size();
  by_id.emplace(doc.doc_id, idx);
  if (doc.canonical_entity) canonical_claims[*doc.canonical_entity].push_back(idx);
  docs.push_back(std::move(doc));
}

Corpus build_corpus(const std::vector<RawDocument>& raw, const TruncationPolicy& policy,
                    const Lexicon* lexicon) {
  Corpus corpus;
  for (const auto& r : raw) {
    std::optional<Document> doc = truncate_document(r, policy);
    if (!doc) continue;  // empty after truncation
    if (!r.mentions && lexicon != nullptr) {
      doc->mentions = annotate_mentions(*doc, *lexicon);
    }
    corpus.add(std::move(*doc));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path, const TruncationPolicy& policy,
                   const Lexicon* lexicon) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);

  std::vector<RawDocument> raw_docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error("corpus parse error at " + path + ":" + std::to_string(lineno) +
                               ": " + e.what());
    }
    RawDocument raw;
    try {
      raw.doc_id = j.at("doc_id").get<std::string>();
      raw.title = j.at("title").get<std::string>();
      raw.text = j.at("text").get<std::string>();
      if (j.contains("canonical_entity")) {
        raw.canonical_entity = j.at("canonical_entity").get<std::string>();
      }
      if (j.contains("mentions")) {
        std::vector<Mention> ms;
        for (const auto& m : j.at("mentions")) {
          ms.push_back({m.at("entity").get<std::string>(),
                        m.at("start").get<std::size_t>(),
                        m.at("length").get<std::size_t>()});
        }
        raw.mentions = std::move(ms);
      }
    } catch (const json::exception& e) {
      throw std::runtime_error("corpus schema error at " + path + ":" + std::to_string(lineno) +
                               ": " + e.what());
    }
    raw_docs.push_back(std::move(raw));
  }
  return build_corpus(raw_docs, policy, lexicon);
}

void write_corpus(const std::vector<RawDocument>& docs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  for (const auto& d : docs) {
    json j;
    j["doc_id"] = d.doc_id;
    j["title"] = d.title;
    j["text"] = d.text;
    if (d.canonical_entity) j["canonical_entity"] = *d.canonical_entity;
    if (d.mentions) {
      json ms = json::array();
      for (const auto& m : *d.mentions) {
        ms.push_back(json{{"entity", m.entity}, {"length", m.length}, {"start", m.start}});
      }
      j["mentions"] = std::move(ms);
    }
    out << j.dump() << '\n';
  }
}

}  // namespace multihop
