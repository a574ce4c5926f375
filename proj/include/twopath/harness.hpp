#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twopath/graph_core.hpp"
#include "twopath/mason.hpp"
#include "twopath/oracles.hpp"
#include "twopath/phi_points.hpp"

namespace twopath {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInvariant = 2, kExitDisagreement = 3 };

struct CompareOptions {
  SweepMode mode = SweepMode::early_exit;
  std::size_t budget = kDefaultSearchBudget;
  /// Graphs with at most this many branches get the full sweep regardless of `mode`.
  int full_sweep_up_to = 0;
  bool timings = false;
  /// Test-only: the algebraic decision reports min(r, 1).
  bool inject_fault = false;
};

/// Structured, deterministic run report. Objects have sorted keys and exact
/// integers are decimal strings.
struct RunReport {
  nlohmann::json doc;
  int exit_code = kExitOk;

  bool disagreement() const { return doc.value("disagreement", false); }
  /// Canonical text: two-space indented JSON followed by a newline.
  std::string text() const;
};

/// Class of every method on one graph.
struct Verdicts {
  int algebraic = 0;
  std::optional<int> brute_force;  // empty when the search budget ran out
  int maxflow = 0;

  bool disagree() const {
    return algebraic != maxflow || (brute_force && *brute_force != maxflow);
  }
};

/// Runs the algebraic decision and both oracles without building a report.
Verdicts verdicts(const RawDigraph& raw, const CompareOptions& opts);

RunReport cmd_decide(const RawDigraph& raw, const CompareOptions& opts);
RunReport cmd_oracle(const RawDigraph& raw, const CompareOptions& opts);
RunReport cmd_compare(const RawDigraph& raw, const CompareOptions& opts);

/// Greedy single-edge deletion that keeps the methods disagreeing. The result
/// is locally minimal: dropping any one remaining edge restores agreement.
RawDigraph minimize_disagreement(const RawDigraph& raw, const CompareOptions& opts);

/// Writes `<dir>/<stem>.graph` and `<dir>/<stem>.json`; returns the graph path.
std::filesystem::path persist_artifact(const std::filesystem::path& dir, const std::string& stem,
                                       const RawDigraph& g, const RunReport& report);

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  int max_nodes = 8;
  int max_edges = 8;
  int exhaustive_up_to = 0;  // 0 disables; otherwise all graphs on 4..N nodes
  CompareOptions compare{SweepMode::early_exit, kDefaultSearchBudget, 10, false, false};
  std::optional<std::filesystem::path> artifact_dir;
};

struct FuzzResult {
  RunReport report;
  std::size_t instances = 0;
  std::size_t disagreements = 0;
  std::size_t bound_violations = 0;
  std::vector<std::filesystem::path> artifacts;
};

/// Campaign: exhaustive graphs first, then `count` random graphs from `seed`.
FuzzResult cmd_fuzz(const FuzzOptions& opts);

RunReport cmd_stats(const RawDigraph& raw, int input, int output);

RunReport cmd_mason_check(const RawDigraph& raw, std::size_t loop_cap = kDefaultLoopCap);

}  // namespace twopath
