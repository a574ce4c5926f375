#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twopath/graph_core.hpp"

namespace twopath {

inline constexpr std::size_t kDefaultSearchBudget = 5'000'000;

/// Evidence for the path class of a graph.
///
/// Class 2: paths[0] runs u_{pairing[0]} -> y_1 and paths[1] runs
/// u_{pairing[1]} -> y_2 (pairing is 1-based) without sharing any node.
/// Class 1: `common_node` lies on every input -> output path.
struct ClassCertificate {
  int cls = 0;
  std::optional<std::array<int, 2>> pairing;
  std::array<std::vector<NodeId>, 2> paths;
  std::optional<NodeId> common_node;  // node of the searched graph
};

/// Literal search: for each pairing, backtrack over simple paths
/// u_{j1} -> y_1 in lexicographic successor order and test reachability
/// u_{j2} -> y_2 in the vertex-deleted remainder. Throws
/// SearchBudgetExceeded after `budget` node expansions.
ClassCertificate brute_force_class(const RawDigraph& g, std::size_t budget = kDefaultSearchBudget);

/// min(2, maximum number of vertex-disjoint paths from {u1, u2} to {y1, y2}),
/// by unit-vertex-capacity augmenting paths.
int maxflow_class(const RawDigraph& g);

/// First node (in id order) lying on some input -> output path whose
/// deletion disconnects every input from every output.
std::optional<NodeId> common_node_certificate(const RawDigraph& g);

/// Re-checks a certificate from scratch: class-2 paths edge by edge and for
/// disjointness, class-1 node by deletion reachability, class 0 by the
/// absence of any input -> output path.
bool verify_certificate(const RawDigraph& g, const ClassCertificate& cert);

/// True when some u_i reaches some y_j.
bool any_input_output_path(const RawDigraph& g);

}  // namespace twopath
