#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace twopath {

using NodeId = std::string;
using Edge = std::pair<NodeId, NodeId>;

/// A digraph with two designated inputs and two designated outputs.
///
/// `origin` maps nodes introduced by normalization or splitting back to the
/// node of the user's graph they stand for. Nodes absent from it are their
/// own origin.
struct RawDigraph {
  std::set<NodeId> nodes;
  std::vector<Edge> edges;
  std::array<NodeId, 2> inputs;
  std::array<NodeId, 2> outputs;
  std::map<NodeId, NodeId> origin;

  /// Original node id for `v`.
  const NodeId& original(const NodeId& v) const;

  /// Throws InvalidTerminals / InvalidGraph when the invariants do not hold.
  void validate() const;

  friend bool operator==(const RawDigraph&, const RawDigraph&) = default;
};

/// Builds a RawDigraph whose node set is the terminals plus all edge endpoints.
RawDigraph make_digraph(std::vector<Edge> edges, std::array<NodeId, 2> inputs,
                        std::array<NodeId, 2> outputs);

/// Subdivides self-loops and repeated edges and detaches terminals that carry
/// edges on the wrong side, so that the result meets the standing assumptions
/// of a standard signal flow graph. Idempotent.
RawDigraph normalize(const RawDigraph& raw);

/// Replaces every non-terminal node with in-degree > 1 and out-degree > 1 by
/// a branch v_1 -> v_2. Idempotent.
RawDigraph split_nodes(const RawDigraph& g);

struct Branch {
  NodeId tail;
  NodeId head;
};

struct NodeInfo {
  NodeId id;
  int in_degree = 0;
  int out_degree = 0;
};

/// Branch-indexed signal flow graph. Branch i carries indeterminate z_{i+1}.
struct StandardSfg {
  std::vector<Branch> branches;
  std::vector<NodeInfo> nodes;  // sorted by id
  std::array<NodeId, 2> inputs;
  std::array<NodeId, 2> outputs;
  std::map<NodeId, NodeId> origin;

  std::size_t size() const { return branches.size(); }
  int node_index(const NodeId& v) const;  // -1 when absent
};

/// Structural 0/1 matrices of x' = (A0 + diag(z)) x + B u, y = C x.
struct SystemStructure {
  int n = 0;
  Eigen::MatrixXi a0;  // n x n, a0(i, j) = 1 iff head(j) == tail(i)
  Eigen::MatrixXi b;   // n x 2, b(i, k) = 1 iff tail(i) == u_k
  Eigen::MatrixXi c;   // 2 x n, c(j, i) = 1 iff head(i) == y_j
  /// feeders[i] lists the j with a0(i, j) = 1, ascending.
  std::vector<std::vector<int>> feeders;
};

struct BuiltSystem {
  StandardSfg sfg;
  SystemStructure structure;
};

/// Indexes branches lexicographically by (tail, head) and fills A0, B, C.
/// Requires a normalized graph (checked); the split property is not enforced.
BuiltSystem build_system(const RawDigraph& g);

/// Everything downstream of a user graph.
struct PreparedGraph {
  RawDigraph raw;
  RawDigraph normalized;
  RawDigraph split;
  StandardSfg sfg;
  SystemStructure structure;
};

PreparedGraph prepare(const RawDigraph& raw);

/// Integer-indexed view of a RawDigraph for search algorithms. Nodes are
/// numbered in sorted id order and successor lists are sorted the same way.
struct IndexedDigraph {
  std::vector<NodeId> names;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
  std::array<int, 2> inputs{};
  std::array<int, 2> outputs{};

  int size() const { return static_cast<int>(names.size()); }
};

IndexedDigraph index_graph(const RawDigraph& g);

}  // namespace twopath
