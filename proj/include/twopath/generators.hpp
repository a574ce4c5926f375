#pragma once

#include <cstdint>
#include <random>

#include "twopath/graph_core.hpp"

namespace twopath {

/// Graphs over terminals u1 u2 y1 y2 plus internal nodes v1..v_{nodes-4}.
/// Candidate edges leave an input or internal node and enter an output or
/// internal node (no self-loops); `mask` selects a subset of them in that order.
std::size_t exhaustive_edge_slots(int nodes);
RawDigraph exhaustive_graph(int nodes, std::uint64_t mask);

/// Random digraph with 4..max_nodes nodes and up to max_edges distinct edges.
/// Self-loops and edges touching terminals on either side are allowed, so the
/// stream exercises normalization.
RawDigraph random_graph(std::mt19937_64& rng, int max_nodes, int max_edges);

/// Random DAG from {u1, u2} through 1-3 internal layers to {y1, y2}.
RawDigraph random_layered_dag(std::mt19937_64& rng);

}  // namespace twopath
