#include "twopath/oracles.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "twopath/errors.hpp"

namespace twopath {

namespace {

class SearchBudget {
 public:
  explicit SearchBudget(std::size_t limit) : limit_(limit) {}
  void spend() {
    if (++used_ > limit_)
      throw SearchBudgetExceeded("brute-force search exceeded " + std::to_string(limit_) +
                                 " node expansions");
  }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

/// BFS from any of `sources` to any of `targets`, never entering a blocked
/// node. Returns the node path or empty.
std::vector<int> bfs_path(const IndexedDigraph& g, const std::vector<int>& sources,
                          const std::vector<int>& targets, const std::vector<char>& blocked,
                          SearchBudget* budget = nullptr) {
  std::vector<int> parent(g.size(), -2);
  std::deque<int> queue;
  for (int s : sources)
    if (!blocked[s] && parent[s] == -2) {
      parent[s] = -1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (budget) budget->spend();
    if (std::find(targets.begin(), targets.end(), v) != targets.end()) {
      std::vector<int> path;
      for (int w = v; w != -1; w = parent[w]) path.push_back(w);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int w : g.succ[v])
      if (!blocked[w] && parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  return {};
}

std::vector<char> reachable(const IndexedDigraph& g, const std::vector<int>& sources, bool forward) {
  std::vector<char> seen(g.size(), 0);
  std::vector<int> stack;
  for (int s : sources)
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : forward ? g.succ[v] : g.pred[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

std::vector<int> inputs_of(const IndexedDigraph& g) { return {g.inputs[0], g.inputs[1]}; }
std::vector<int> outputs_of(const IndexedDigraph& g) { return {g.outputs[0], g.outputs[1]}; }

std::vector<NodeId> names_of(const IndexedDigraph& g, const std::vector<int>& path) {
  std::vector<NodeId> out;
  for (int v : path) out.push_back(g.names[v]);
  return out;
}

struct PairSearch {
  const IndexedDigraph& g;
  SearchBudget& budget;
  int target1, source2, target2;
  std::vector<char> on_path;
  std::vector<char> forbidden;  // endpoints of the second path
  std::vector<int> path;
  std::vector<int> second;

  bool extend(int v) {
    budget.spend();
    if (v == target1) {
      second = bfs_path(g, {source2}, {target2}, on_path, &budget);
      return !second.empty();
    }
    for (int w : g.succ[v]) {
      if (on_path[w] || forbidden[w]) continue;
      on_path[w] = 1;
      path.push_back(w);
      if (extend(w)) return true;
      path.pop_back();
      on_path[w] = 0;
    }
    return false;
  }
};

std::optional<int> common_node_index(const IndexedDigraph& g) {
  auto from_inputs = reachable(g, inputs_of(g), true);
  auto to_outputs = reachable(g, outputs_of(g), false);
  for (int v = 0; v < g.size(); ++v) {
    if (!from_inputs[v] || !to_outputs[v]) continue;
    std::vector<char> blocked(g.size(), 0);
    blocked[v] = 1;
    if (bfs_path(g, inputs_of(g), outputs_of(g), blocked).empty()) return v;
  }
  return std::nullopt;
}

}  // namespace

bool any_input_output_path(const RawDigraph& g) {
  auto ig = index_graph(g);
  return !bfs_path(ig, inputs_of(ig), outputs_of(ig), std::vector<char>(ig.size(), 0)).empty();
}

ClassCertificate brute_force_class(const RawDigraph& g, std::size_t budget_limit) {
  const auto ig = index_graph(g);
  SearchBudget budget(budget_limit);
  ClassCertificate cert;

  for (const std::array<int, 2> pairing : {std::array<int, 2>{0, 1}, std::array<int, 2>{1, 0}}) {
    const int source1 = ig.inputs[pairing[0]];
    PairSearch search{ig,
                      budget,
                      ig.outputs[0],
                      ig.inputs[pairing[1]],
                      ig.outputs[1],
                      std::vector<char>(ig.size(), 0),
                      std::vector<char>(ig.size(), 0),
                      {source1},
                      {}};
    search.on_path[source1] = 1;
    search.forbidden[search.source2] = 1;
    search.forbidden[search.target2] = 1;
    bool found = search.extend(source1);
    if (found) {
      cert.cls = 2;
      cert.pairing = std::array<int, 2>{pairing[0] + 1, pairing[1] + 1};
      cert.paths[0] = names_of(ig, search.path);
      cert.paths[1] = names_of(ig, search.second);
      return cert;
    }
  }
  if (any_input_output_path(g)) {
    cert.cls = 1;
    if (auto v = common_node_index(ig)) cert.common_node = ig.names[*v];
  }
  return cert;
}

int maxflow_class(const RawDigraph& g) {
  const auto ig = index_graph(g);
  const int nv = ig.size();
  const int source = 2 * nv, sink = 2 * nv + 1;

  struct Arc {
    int to, cap, rev;
  };
  std::vector<std::vector<Arc>> adj(2 * nv + 2);
  auto add_arc = [&](int a, int b, int cap) {
    adj[a].push_back({b, cap, static_cast<int>(adj[b].size())});
    adj[b].push_back({a, 0, static_cast<int>(adj[a].size()) - 1});
  };
  for (int v = 0; v < nv; ++v) add_arc(2 * v, 2 * v + 1, 1);
  for (int v = 0; v < nv; ++v)
    for (int w : ig.succ[v]) add_arc(2 * v + 1, 2 * w, 1);
  for (int u : ig.inputs) add_arc(source, 2 * u, 1);
  for (int y : ig.outputs) add_arc(2 * y + 1, sink, 1);

  int flow = 0;
  while (flow < 2) {
    std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
    std::deque<int> queue{source};
    parent[source] = {source, -1};
    while (!queue.empty() && parent[sink].first < 0) {
      int v = queue.front();
      queue.pop_front();
      for (int k = 0; k < static_cast<int>(adj[v].size()); ++k) {
        const Arc& a = adj[v][k];
        if (a.cap > 0 && parent[a.to].first < 0) {
          parent[a.to] = {v, k};
          queue.push_back(a.to);
        }
      }
    }
    if (parent[sink].first < 0) break;
    for (int v = sink; v != source; v = parent[v].first) {
      Arc& a = adj[parent[v].first][parent[v].second];
      a.cap -= 1;
      adj[v][a.rev].cap += 1;
    }
    ++flow;
  }
  return flow;
}

std::optional<NodeId> common_node_certificate(const RawDigraph& g) {
  const auto ig = index_graph(g);
  if (auto v = common_node_index(ig)) return ig.names[*v];
  return std::nullopt;
}

bool verify_certificate(const RawDigraph& g, const ClassCertificate& cert) {
  const auto ig = index_graph(g);
  auto index = [&](const NodeId& v) {
    auto it = std::lower_bound(ig.names.begin(), ig.names.end(), v);
    return it != ig.names.end() && *it == v ? static_cast<int>(it - ig.names.begin()) : -1;
  };
  const bool connected = any_input_output_path(g);

  switch (cert.cls) {
    case 0:
      return !connected;
    case 1: {
      if (!connected || !cert.common_node) return false;
      int v = index(*cert.common_node);
      if (v < 0) return false;
      auto from_inputs = reachable(ig, inputs_of(ig), true);
      auto to_outputs = reachable(ig, outputs_of(ig), false);
      if (!from_inputs[v] || !to_outputs[v]) return false;
      std::vector<char> blocked(ig.size(), 0);
      blocked[v] = 1;
      return bfs_path(ig, inputs_of(ig), outputs_of(ig), blocked).empty();
    }
    case 2: {
      if (!cert.pairing) return false;
      const auto& pr = *cert.pairing;
      if (!((pr[0] == 1 && pr[1] == 2) || (pr[0] == 2 && pr[1] == 1))) return false;
      std::set<int> used;
      for (int k = 0; k < 2; ++k) {
        const auto& p = cert.paths[k];
        if (p.empty()) return false;
        if (index(p.front()) != ig.inputs[pr[k] - 1] || index(p.back()) != ig.outputs[k])
          return false;
        for (std::size_t t = 0; t < p.size(); ++t) {
          int v = index(p[t]);
          if (v < 0 || !used.insert(v).second) return false;
          if (t + 1 < p.size()) {
            int w = index(p[t + 1]);
            if (w < 0 || !std::binary_search(ig.succ[v].begin(), ig.succ[v].end(), w)) return false;
          }
        }
      }
      return true;
    }
    default:
      return false;
  }
}

}  // namespace twopath
