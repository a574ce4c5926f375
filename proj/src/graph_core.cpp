#include "twopath/graph_core.hpp"

#include <algorithm>

#include "twopath/errors.hpp"

namespace twopath {

namespace {

NodeId fresh_name(const std::set<NodeId>& taken, const NodeId& base) {
  if (!taken.contains(base)) return base;
  for (int k = 1;; ++k) {
    NodeId candidate = base + "_" + std::to_string(k);
    if (!taken.contains(candidate)) return candidate;
  }
}

bool is_terminal(const RawDigraph& g, const NodeId& v) {
  return v == g.inputs[0] || v == g.inputs[1] || v == g.outputs[0] || v == g.outputs[1];
}

void degrees(const RawDigraph& g, std::map<NodeId, int>& in, std::map<NodeId, int>& out) {
  for (const auto& v : g.nodes) in[v] = out[v] = 0;
  for (const auto& [a, b] : g.edges) {
    ++out[a];
    ++in[b];
  }
}

}  // namespace

const NodeId& RawDigraph::original(const NodeId& v) const {
  auto it = origin.find(v);
  return it == origin.end() ? v : it->second;
}

void RawDigraph::validate() const {
  std::set<NodeId> terminals{inputs[0], inputs[1], outputs[0], outputs[1]};
  if (terminals.size() != 4)
    throw InvalidTerminals("inputs and outputs must be four distinct nodes");
  for (const auto& t : terminals)
    if (!nodes.contains(t)) throw InvalidTerminals("terminal '" + t + "' is not a node");
  for (const auto& [a, b] : edges)
    if (!nodes.contains(a) || !nodes.contains(b))
      throw InvalidGraph("edge " + a + " -> " + b + " has an endpoint outside the node set");
}

RawDigraph make_digraph(std::vector<Edge> edges, std::array<NodeId, 2> inputs,
                        std::array<NodeId, 2> outputs) {
  RawDigraph g;
  g.inputs = std::move(inputs);
  g.outputs = std::move(outputs);
  g.nodes.insert(g.inputs.begin(), g.inputs.end());
  g.nodes.insert(g.outputs.begin(), g.outputs.end());
  for (const auto& [a, b] : edges) {
    g.nodes.insert(a);
    g.nodes.insert(b);
  }
  g.edges = std::move(edges);
  return g;
}

RawDigraph normalize(const RawDigraph& raw) {
  raw.validate();
  RawDigraph g;
  g.nodes = raw.nodes;
  g.inputs = raw.inputs;
  g.outputs = raw.outputs;
  g.origin = raw.origin;

  std::set<Edge> seen;
  for (const auto& e : raw.edges) {
    const auto& [a, b] = e;
    if (a == b) {
      NodeId w = fresh_name(g.nodes, a + "_s");
      g.nodes.insert(w);
      g.edges.emplace_back(a, w);
      g.edges.emplace_back(w, a);
    } else if (!seen.insert(e).second) {
      NodeId w = fresh_name(g.nodes, a + "_" + b + "_p");
      g.nodes.insert(w);
      g.edges.emplace_back(a, w);
      g.edges.emplace_back(w, b);
    } else {
      g.edges.push_back(e);
    }
  }

  std::map<NodeId, int> in, out;
  degrees(g, in, out);
  for (auto& u : g.inputs) {
    if (in[u] == 0) continue;
    NodeId fresh = fresh_name(g.nodes, u + "_in");
    g.nodes.insert(fresh);
    g.origin[fresh] = g.original(u);
    g.edges.emplace_back(fresh, u);
    u = fresh;
  }
  for (auto& y : g.outputs) {
    if (out[y] == 0) continue;
    NodeId fresh = fresh_name(g.nodes, y + "_out");
    g.nodes.insert(fresh);
    g.origin[fresh] = g.original(y);
    g.edges.emplace_back(y, fresh);
    y = fresh;
  }
  return g;
}

RawDigraph split_nodes(const RawDigraph& g) {
  std::map<NodeId, int> in, out;
  degrees(g, in, out);

  RawDigraph result;
  result.inputs = g.inputs;
  result.outputs = g.outputs;
  result.origin = g.origin;
  result.nodes = g.nodes;

  std::map<NodeId, std::pair<NodeId, NodeId>> halves;
  for (const auto& v : g.nodes) {
    if (is_terminal(g, v) || in[v] <= 1 || out[v] <= 1) continue;
    NodeId first = fresh_name(result.nodes, v + "_1");
    result.nodes.insert(first);
    NodeId second = fresh_name(result.nodes, v + "_2");
    result.nodes.insert(second);
    result.origin[first] = g.original(v);
    result.origin[second] = g.original(v);
    halves.emplace(v, std::make_pair(first, second));
  }
  for (const auto& [v, _] : halves) {
    result.nodes.erase(v);
    result.origin.erase(v);
  }

  for (const auto& [a, b] : g.edges) {
    auto ta = halves.find(a);
    auto hb = halves.find(b);
    result.edges.emplace_back(ta == halves.end() ? a : ta->second.second,
                              hb == halves.end() ? b : hb->second.first);
  }
  for (const auto& [v, h] : halves) result.edges.emplace_back(h.first, h.second);
  return result;
}

int StandardSfg::node_index(const NodeId& v) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), v,
                             [](const NodeInfo& info, const NodeId& id) { return info.id < id; });
  if (it == nodes.end() || it->id != v) return -1;
  return static_cast<int>(it - nodes.begin());
}

BuiltSystem build_system(const RawDigraph& g) {
  g.validate();
  std::set<Edge> distinct(g.edges.begin(), g.edges.end());
  if (distinct.size() != g.edges.size())
    throw InvalidGraph("parallel branches remain; normalize the graph first");
  for (const auto& [a, b] : distinct)
    if (a == b) throw InvalidGraph("self-loop at " + a + "; normalize the graph first");

  BuiltSystem out;
  auto& sfg = out.sfg;
  sfg.inputs = g.inputs;
  sfg.outputs = g.outputs;
  sfg.origin = g.origin;
  for (const auto& v : g.nodes) sfg.nodes.push_back({v, 0, 0});
  for (const auto& [a, b] : distinct) {  // std::set order is lexicographic (tail, head)
    sfg.branches.push_back({a, b});
    ++sfg.nodes[sfg.node_index(a)].out_degree;
    ++sfg.nodes[sfg.node_index(b)].in_degree;
  }
  for (const auto& u : g.inputs)
    if (sfg.nodes[sfg.node_index(u)].in_degree != 0)
      throw InvalidTerminals("input " + u + " has incoming branches; normalize the graph first");
  for (const auto& y : g.outputs)
    if (sfg.nodes[sfg.node_index(y)].out_degree != 0)
      throw InvalidTerminals("output " + y + " has outgoing branches; normalize the graph first");

  const int n = static_cast<int>(sfg.branches.size());
  auto& sys = out.structure;
  sys.n = n;
  sys.a0 = Eigen::MatrixXi::Zero(n, n);
  sys.b = Eigen::MatrixXi::Zero(n, 2);
  sys.c = Eigen::MatrixXi::Zero(2, n);
  sys.feeders.assign(n, {});
  for (int i = 0; i < n; ++i) {
    const auto& bi = sfg.branches[i];
    for (int j = 0; j < n; ++j) {
      if (sfg.branches[j].head == bi.tail) {
        sys.a0(i, j) = 1;
        sys.feeders[i].push_back(j);
      }
    }
    for (int k = 0; k < 2; ++k) {
      if (bi.tail == g.inputs[k]) sys.b(i, k) = 1;
      if (bi.head == g.outputs[k]) sys.c(k, i) = 1;
    }
  }
  return out;
}

PreparedGraph prepare(const RawDigraph& raw) {
  PreparedGraph p;
  p.raw = raw;
  p.normalized = normalize(raw);
  p.split = split_nodes(p.normalized);
  auto built = build_system(p.split);
  p.sfg = std::move(built.sfg);
  p.structure = std::move(built.structure);
  return p;
}

IndexedDigraph index_graph(const RawDigraph& g) {
  IndexedDigraph ig;
  ig.names.assign(g.nodes.begin(), g.nodes.end());
  auto index = [&](const NodeId& v) {
    return static_cast<int>(std::lower_bound(ig.names.begin(), ig.names.end(), v) - ig.names.begin());
  };
  ig.succ.assign(ig.names.size(), {});
  ig.pred.assign(ig.names.size(), {});
  for (const auto& [a, b] : g.edges) {
    ig.succ[index(a)].push_back(index(b));
    ig.pred[index(b)].push_back(index(a));
  }
  for (auto& s : ig.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  for (auto& p : ig.pred) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  for (int k = 0; k < 2; ++k) {
    ig.inputs[k] = index(g.inputs[k]);
    ig.outputs[k] = index(g.outputs[k]);
  }
  return ig;
}

}  // namespace twopath
