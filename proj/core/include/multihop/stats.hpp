#pragma once
// Dataset statistics and distribution exports.

#include <map>
#include <string>
#include <vector>

#include "multihop/dataset.hpp"

namespace multihop {

struct FieldStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  std::size_t median = 0;  // lower middle for even counts
};

struct SplitStats {
  std::size_t n_samples = 0;
  FieldStats candidates_per_sample;
  FieldStats documents_per_sample;
  FieldStats tokens_per_document;  // over distinct doc ids, first occurrence
  std::size_t n_query_types = 0;

  std::string to_json() const;
};

// Throws on an empty split.
SplitStats split_stats(const std::vector<Sample>& samples);

// Descending by fraction, ties lexicographic; fractions sum to 1.
std::vector<std::pair<RelationId, double>> query_type_distribution(
    const std::vector<Sample>& samples);

struct HistogramBin {
  std::size_t bin_start = 0;
  std::size_t bin_end = 0;  // exclusive
  std::size_t count = 0;
};

// Fixed-width bins covering [min, max]; bin totals equal the number of
// observations exactly.
std::vector<HistogramBin> histogram(const std::vector<std::size_t>& values,
                                    std::size_t bin_width);

void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::string& path);

// Writes stats.json plus hist_candidates.csv, hist_supports.csv and
// hist_doc_tokens.csv into the directory.
void write_stats_files(const std::vector<Sample>& samples, const std::string& out_dir);

}  // namespace multihop
