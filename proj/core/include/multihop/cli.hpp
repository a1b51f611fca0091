#pragma once
// Subcommand dispatch and pipeline configuration.

#include <cstdint>
#include <string>
#include <vector>

#include "multihop/corpus.hpp"

namespace multihop {

struct PipelineConfig {
  std::string policy = "encyclopedic";  // encyclopedic | biomedical | rule-file path
  std::size_t max_chain = 3;
  std::size_t max_docs = 64;
  std::size_t max_cands = 100;
  int cooc_threshold = 20;
  double answer_cap = 0.001;
  std::size_t mask_pool = 100;
  std::uint64_t seed = 0;
  std::string split = "train";
  std::string truncation;  // empty = the policy's default
  std::string train_kb;    // optional KB whose facts define candidate pools

  static PipelineConfig from_file(const std::string& path);
  TruncationPolicy truncation_policy() const;
};

// Exit status: 0 success, 2 usage error, 1 anything else. Every subcommand
// prints one machine-readable JSON summary line on stdout.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // argv without the program name

}  // namespace multihop
