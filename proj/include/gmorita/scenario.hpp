#pragma once

// Scenario files (JSON, version 1) and the checks the command-line tool runs on them.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gmorita/butterfly.hpp"

namespace gmorita {

using Json = nlohmann::ordered_json;

/// Malformed scenario: bad JSON, unknown keys or unresolved references.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A group element given in a representation, with its matrix.
struct GeneratorImage {
  Elem element = 0;
  Matrix matrix;
};

struct ButterflyTarget {
  std::string group;
  std::vector<std::pair<Elem, Elem>> generator_images; // N -> Ghat
};

struct Scenario {
  std::string name;
  PrimeField F{2};
  std::map<std::string, FiniteGroup> groups;
  BlockSetting setting;
  std::size_t M_dim = 0;
  std::vector<GeneratorImage> M_left;  // action of generators of N
  std::vector<GeneratorImage> M_right; // right action of generators of N'
  /// Action of g (x) g^{-1} on M for some g in G', at least one per coset of N.
  std::optional<std::vector<GeneratorImage>> diagonal_actions;
  /// "M" (the left B-module of M), "regular", or explicit generator images.
  std::string U_kind = "M";
  std::size_t U_dim = 0;
  std::vector<GeneratorImage> U_images;
  /// Element of G' whose unit in A' twists phi~ (negative control for the diagram).
  std::optional<Elem> twist;
  std::vector<ButterflyTarget> butterfly;
  std::vector<std::string> pipeline;
};

/// Reads a group spec: {"degree", "generators"} or {"table", "labels"}.
FiniteGroup parse_group(const Json& j);
Scenario parse_scenario(const Json& j);
Scenario load_scenario_file(const std::string& path);

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"morita", "graded-morita", "diagram", "centralizer-layer", "butterfly"};
  return names;
}

struct RunOptions {
  std::uint64_t seed = 0;
  bool oracle = false;
};

enum class Outcome { Pass = 0, Fail = 1, Inconsistent = 3 };

struct CheckRun {
  Outcome outcome = Outcome::Pass;
  Json report;
};

/// Runs one named check. Errors are caught and reported.
CheckRun run_check(const Scenario& s, const std::string& check, const RunOptions& opt);

/// Runs the given checks (or the scenario pipeline when empty) and returns
/// the report with the process exit code: 0 all passed, 1 a check failed,
/// 3 an internal inconsistency.
std::pair<int, Json> verify_scenario(const Scenario& s, const std::vector<std::string>& checks,
                                     const RunOptions& opt);

/// Block decomposition of kG with idempotency, centrality and completeness residuals.
Json blocks_report(const FiniteGroup& G, const PrimeField& F, bool oracle);

/// The algebra as field, dimension, sparse structure constants and labels.
Json algebra_json(const Algebra& A);

} // namespace gmorita
