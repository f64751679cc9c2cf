#pragma once

// Batch jobs behind the command line: each returns a deterministic report
// (JSON plus a plain-text rendering) and the process exit code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwmu/compare.hpp"
#include "iwmu/io.hpp"
#include "iwmu/synth.hpp"

namespace iwmu {

enum class ReportFormat { Json, Text };

struct JobConfig {
  std::string command;
  std::vector<std::string> inputs;
  int n_max = kDefaultNMax;
  std::vector<int> levels;  // empty: default grid for the group
  /// Checked against the ring named in the input files.
  std::optional<RingBase> ring;
  Rational error_c = 1;
  CompareMode mode = CompareMode::AllN;
  ReportFormat format = ReportFormat::Json;
  std::uint64_t seed = 0;
  std::string out;
  bool inject_corruption = false;

  /// InvalidInput unless n_max >= 1 and levels are nonnegative and strictly ascending.
  void validate() const;
  Json to_json() const;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kInconclusive = 2;
inline constexpr int kUnequal = 3;
}  // namespace exit_code

struct Report {
  Json json;
  std::string text;
  int exit_code = exit_code::kOk;

  std::string render(ReportFormat format) const;
};

Report run_invariants(const JobConfig& config);
Report run_compare(const JobConfig& config);
Report run_tower(const JobConfig& config);
/// Writes the default corpus into config.out (a directory).
Report run_synth(const JobConfig& config);
/// Corpus from config.inputs[0] (a directory of synth output) or, without
/// inputs, the default corpus generated in memory.
Report run_selftest(const JobConfig& config);

/// Ground truths and groups of the default corpus for a seed.
std::vector<std::pair<GroupSpec, GroundTruth>> default_corpus(std::uint64_t seed);

}  // namespace iwmu
