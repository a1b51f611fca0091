#include "multihop/stats.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace multihop {

using nlohmann::json;

namespace {

FieldStats field_stats(std::vector<std::size_t> values) {
  if (values.empty()) throw std::runtime_error("statistics over an empty value list");
  std::sort(values.begin(), values.end());
  FieldStats f;
  f.min = values.front();
  f.max = values.back();
  double sum = 0.0;
  for (auto v : values) sum += static_cast<double>(v);
  f.mean = sum / static_cast<double>(values.size());
  f.median = values[(values.size() - 1) / 2];  // lower middle when even
  return f;
}

json field_to_json(const FieldStats& f) {
  return json{{"max", f.max}, {"mean", f.mean}, {"median", f.median}, {"min", f.min}};
}

std::vector<std::size_t> doc_token_counts(const std::vector<Sample>& samples) {
  std::set<DocId> seen;
  std::vector<std::size_t> counts;
  for (const auto& s : samples) {
    for (const auto& d : s.supports) {
      if (seen.insert(d.doc_id).second) counts.push_back(d.tokens().size());
    }
  }
  return counts;
}

}  // namespace

std::string SplitStats::to_json() const {
  json j;
  j["n_samples"] = n_samples;
  j["candidates_per_sample"] = field_to_json(candidates_per_sample);
  j["documents_per_sample"] = field_to_json(documents_per_sample);
  j["tokens_per_document"] = field_to_json(tokens_per_document);
  j["n_query_types"] = n_query_types;
  return j.dump();
}

SplitStats split_stats(const std::vector<Sample>& samples) {
  if (samples.empty()) throw std::runtime_error("split_stats: empty split");
  SplitStats stats;
  stats.n_samples = samples.size();

  std::vector<std::size_t> cands, docs;
  std::set<RelationId> types;
  for (const auto& s : samples) {
    cands.push_back(s.candidates.size());
    docs.push_back(s.supports.size());
    types.insert(s.query.relation);
  }
  stats.candidates_per_sample = field_stats(std::move(cands));
  stats.documents_per_sample = field_stats(std::move(docs));
  stats.tokens_per_document = field_stats(doc_token_counts(samples));
  stats.n_query_types = types.size();
  return stats;
}

std::vector<std::pair<RelationId, double>> query_type_distribution(
    const std::vector<Sample>& samples) {
  std::map<RelationId, std::size_t> counts;
  for (const auto& s : samples) counts[s.query.relation] += 1;

  std::vector<std::pair<RelationId, double>> out;
  for (const auto& [rel, n] : counts) {
    out.emplace_back(rel, static_cast<double>(n) / static_cast<double>(samples.size()));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

std::vector<HistogramBin> histogram(const std::vector<std::size_t>& values,
                                    std::size_t bin_width) {
  if (bin_width == 0) throw std::invalid_argument("histogram: bin width must be positive");
  std::vector<HistogramBin> bins;
  if (values.empty()) return bins;
  const std::size_t lo = *std::min_element(values.begin(), values.end());
  const std::size_t hi = *std::max_element(values.begin(), values.end());
  const std::size_t first = (lo / bin_width) * bin_width;
  for (std::size_t start = first; start <= hi; start += bin_width) {
    bins.push_back({start, start + bin_width, 0});
  }
  for (auto v : values) {
    bins[(v - first) / bin_width].count += 1;
  }
  return bins;
}

void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write histogram: " + path);
  out << "bin_start,bin_end,count\n";
  for (const auto& b : bins) {
    out << b.bin_start << ',' << b.bin_end << ',' << b.count << '\n';
  }
}

void write_stats_files(const std::vector<Sample>& samples, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const SplitStats stats = split_stats(samples);
  {
    std::ofstream out(out_dir + "/stats.json");
    if (!out) throw std::runtime_error("cannot write stats.json under " + out_dir);
    out << stats.to_json() << '\n';
  }

  std::vector<std::size_t> cands, docs;
  for (const auto& s : samples) {
    cands.push_back(s.candidates.size());
    docs.push_back(s.supports.size());
  }
  write_histogram_csv(histogram(cands, 1), out_dir + "/hist_candidates.csv");
  write_histogram_csv(histogram(docs, 1), out_dir + "/hist_supports.csv");
  write_histogram_csv(histogram(doc_token_counts(samples), 25), out_dir + "/hist_doc_tokens.csv");
}

}  // namespace multihop
