#include "twopath/generators.hpp"

#include <set>
#include <string>
#include <vector>

namespace twopath {

namespace {

const std::array<NodeId, 2> kInputs{"u1", "u2"};
const std::array<NodeId, 2> kOutputs{"y1", "y2"};

std::vector<NodeId> node_names(int nodes) {
  std::vector<NodeId> names{"u1", "u2", "y1", "y2"};
  for (int k = 1; k <= nodes - 4; ++k) names.push_back("v" + std::to_string(k));
  return names;
}

std::vector<Edge> edge_slots(int nodes) {
  std::vector<NodeId> internal;
  for (int k = 1; k <= nodes - 4; ++k) internal.push_back("v" + std::to_string(k));
  std::vector<NodeId> sources{"u1", "u2"}, targets{"y1", "y2"};
  sources.insert(sources.end(), internal.begin(), internal.end());
  targets.insert(targets.end(), internal.begin(), internal.end());
  std::vector<Edge> slots;
  for (const auto& a : sources)
    for (const auto& b : targets)
      if (a != b) slots.emplace_back(a, b);
  return slots;
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

std::size_t exhaustive_edge_slots(int nodes) { return edge_slots(nodes).size(); }

RawDigraph exhaustive_graph(int nodes, std::uint64_t mask) {
  auto slots = edge_slots(nodes);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < slots.size(); ++k)
    if ((mask >> k) & 1u) edges.push_back(slots[k]);
  RawDigraph g = make_digraph(std::move(edges), kInputs, kOutputs);
  for (const auto& v : node_names(nodes)) g.nodes.insert(v);
  return g;
}

RawDigraph random_graph(std::mt19937_64& rng, int max_nodes, int max_edges) {
  const int nodes = 4 + static_cast<int>(below(rng, static_cast<std::uint64_t>(max_nodes - 3)));
  const int attempts = static_cast<int>(below(rng, static_cast<std::uint64_t>(max_edges + 1)));
  const auto names = node_names(nodes);
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (int k = 0; k < attempts; ++k) {
    Edge e{names[below(rng, names.size())], names[below(rng, names.size())]};
    if (seen.insert(e).second) edges.push_back(std::move(e));
  }
  RawDigraph g = make_digraph(std::move(edges), kInputs, kOutputs);
  for (const auto& v : names) g.nodes.insert(v);
  return g;
}

RawDigraph random_layered_dag(std::mt19937_64& rng) {
  std::vector<std::vector<NodeId>> layers{{"u1", "u2"}};
  const int depth = 1 + static_cast<int>(below(rng, 3));
  int counter = 0;
  for (int l = 0; l < depth; ++l) {
    std::vector<NodeId> layer;
    const int width = 1 + static_cast<int>(below(rng, 3));
    for (int w = 0; w < width; ++w) layer.push_back("v" + std::to_string(++counter));
    layers.push_back(std::move(layer));
  }
  layers.push_back({"y1", "y2"});

  std::vector<Edge> edges;
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    for (const auto& a : layers[l]) {
      for (const auto& b : layers[l + 1])
        if (below(rng, 2) == 0) edges.emplace_back(a, b);
      // occasional skip edge two layers ahead
      if (l + 2 < layers.size() && below(rng, 5) == 0) {
        const auto& far = layers[l + 2];
        edges.emplace_back(a, far[below(rng, far.size())]);
      }
    }
  }
  return make_digraph(std::move(edges), kInputs, kOutputs);
}

}  // namespace twopath
