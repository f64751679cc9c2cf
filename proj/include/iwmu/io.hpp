#pragma once

// Module description files, tower data files and corpus entries.
//
// Module file (JSON):
//   {"ring": {"p": 3, "e": 1, "f": 1}, "group": {"kind": "abelian", "r": 1},
//    "gens": 1, "rels": 1,
//    "matrix": [[ [ {"c": ["9"], "e": [0]} ] ]],
//    "pi_exponent": 2}                       (optional)
// matrix[i][j] is a list of terms c * g^e; c is the coefficient vector in
// the integral basis x^i pi^j of O (decimal strings or JSON integers).
//
// Tower file: CSV with header n,m,ord, preceded by a comment line
// "# p=2,r=2" naming the prime and the group dimension; or JSON
// {"p": 2, "r": 2, "rows": [{"n": 1, "m": 0, "ord": 2}, ..]}.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "iwmu/compare.hpp"
#include "iwmu/presentation.hpp"
#include "iwmu/synth.hpp"

namespace iwmu {

using Json = nlohmann::ordered_json;

/// Throws ParseError with line/column for syntax errors and a JSON path for
/// schema errors.
Presentation parse_module(std::string_view text);
Json module_to_json(const Presentation& p);
std::string write_module(const Presentation& p);

/// A module file that may carry the ground truth it was generated from.
struct CorpusEntry {
  Presentation presentation;
  std::optional<GroundTruth> truth;
  std::vector<std::string> log;
};

CorpusEntry parse_corpus_entry(std::string_view text);
std::string write_corpus_entry(const SynthModule& module, const GroundTruth& truth);

TowerSeries parse_tower_csv(std::string_view text, std::string label);
TowerSeries parse_tower_json(std::string_view text, std::string label);
std::string write_tower_csv(const TowerSeries& series);

/// True when the file looks like tower data (.csv, or JSON with "rows").
bool is_tower_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

Presentation read_module(const std::filesystem::path& path);
TowerSeries read_tower(const std::filesystem::path& path);

}  // namespace iwmu
