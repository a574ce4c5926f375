#include "twopath/mason.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/hawick_circuits.hpp>
#include <boost/graph/strong_components.hpp>

#include "twopath/errors.hpp"
#include "twopath/resolvent.hpp"

namespace twopath {

namespace {

using Digraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
using Poly = UniPoly<BigScalar>;

struct NodeGraph {
  Digraph graph;
  std::map<std::pair<int, int>, int> branch_of;  // (tail node, head node) -> branch
  std::vector<int> tail, head;                   // per branch, node indices
};

NodeGraph node_graph(const StandardSfg& sfg) {
  NodeGraph ng{Digraph(sfg.nodes.size()), {}, {}, {}};
  for (std::size_t i = 0; i < sfg.branches.size(); ++i) {
    int t = sfg.node_index(sfg.branches[i].tail);
    int h = sfg.node_index(sfg.branches[i].head);
    boost::add_edge(t, h, ng.graph);
    ng.branch_of[{t, h}] = static_cast<int>(i);
    ng.tail.push_back(t);
    ng.head.push_back(h);
  }
  return ng;
}

struct CycleCollector {
  const NodeGraph* ng;
  std::vector<Loop>* out;
  std::size_t cap;

  template <typename Path, typename Graph>
  void cycle(const Path& p, const Graph&) {
    if (out->size() >= cap)
      throw CapExceeded("more than " + std::to_string(cap) + " loops");
    Loop loop;
    for (std::size_t k = 0; k < p.size(); ++k) {
      int a = static_cast<int>(p[k]);
      int b = static_cast<int>(p[(k + 1) % p.size()]);
      loop.branches.push_back(ng->branch_of.at({a, b}));
      loop.nodes.push_back(a);
    }
    std::sort(loop.branches.begin(), loop.branches.end());
    std::sort(loop.nodes.begin(), loop.nodes.end());
    out->push_back(std::move(loop));
  }
};

std::uint64_t node_mask(const std::vector<int>& nodes) {
  std::uint64_t m = 0;
  for (int v : nodes) m |= std::uint64_t{1} << v;
  return m;
}

/// Sums over collections of pairwise node-disjoint loops, memoized on
/// (next loop, occupied node mask):
///   H(k, M) = H(k+1, M) - [L_k misses M] * prod_{E_k} (s - a) * H(k+1, M | nodes(L_k))
///   H(K, M) = prod over branches with tail outside M of (s - a)
/// where E_k holds the branches leaving nodes(L_k) that are not in L_k.
class DisjointLoopSum {
 public:
  DisjointLoopSum(const StandardSfg& sfg, const std::vector<Loop>& loops,
                  std::span<const BigScalar> alpha)
      : loops_(loops), alpha_(alpha) {
    if (sfg.nodes.size() > 64) throw CapExceeded("Mason oracle supports at most 64 nodes");
    for (const auto& b : sfg.branches) tail_.push_back(sfg.node_index(b.tail));
    for (const auto& l : loops) {
      std::uint64_t m = node_mask(l.nodes);
      masks_.push_back(m);
      std::vector<int> extra;
      for (std::size_t i = 0; i < tail_.size(); ++i)
        if ((m >> tail_[i]) & 1u)
          if (!std::binary_search(l.branches.begin(), l.branches.end(), static_cast<int>(i)))
            extra.push_back(static_cast<int>(i));
      extra_.push_back(product(extra));
    }
  }

  Poly operator()(std::size_t k, std::uint64_t occupied) {
    if (k == loops_.size()) {
      std::vector<int> free;
      for (std::size_t i = 0; i < tail_.size(); ++i)
        if (!((occupied >> tail_[i]) & 1u)) free.push_back(static_cast<int>(i));
      return product(free);
    }
    auto key = std::make_pair(k, occupied);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Poly h = (*this)(k + 1, occupied);
    if ((masks_[k] & occupied) == 0) h -= extra_[k] * (*this)(k + 1, occupied | masks_[k]);
    memo_.emplace(key, h);
    return h;
  }

  Poly product(const std::vector<int>& branches) const {
    Poly p = Poly::constant(BigScalar(1));
    for (int i : branches) p *= Poly::linear_factor(alpha_[i]);
    return p;
  }

 private:
  const std::vector<Loop>& loops_;
  std::span<const BigScalar> alpha_;
  std::vector<int> tail_;
  std::vector<std::uint64_t> masks_;
  std::vector<Poly> extra_;
  std::map<std::pair<std::size_t, std::uint64_t>, Poly> memo_;
};

void forward_paths(const NodeGraph& ng, int at, int target, const std::vector<char>& reaches,
                   std::vector<char>& on_path, std::vector<int>& nodes, std::vector<int>& branches,
                   std::vector<std::pair<std::vector<int>, std::vector<int>>>& out, std::size_t cap) {
  if (at == target) {
    if (out.size() >= cap) throw CapExceeded("more than " + std::to_string(cap) + " forward paths");
    out.emplace_back(nodes, branches);
    return;
  }
  for (auto [e, end] = boost::out_edges(at, ng.graph); e != end; ++e) {
    int next = static_cast<int>(boost::target(*e, ng.graph));
    if (on_path[next] || !reaches[next]) continue;
    on_path[next] = 1;
    nodes.push_back(next);
    branches.push_back(ng.branch_of.at({at, next}));
    forward_paths(ng, next, target, reaches, on_path, nodes, branches, out, cap);
    branches.pop_back();
    nodes.pop_back();
    on_path[next] = 0;
  }
}

}  // namespace

std::vector<Loop> enumerate_loops(const StandardSfg& sfg, std::size_t cap) {
  NodeGraph ng = node_graph(sfg);
  std::vector<Loop> loops;
  boost::hawick_unique_circuits(ng.graph, CycleCollector{&ng, &loops, cap});
  std::sort(loops.begin(), loops.end(),
            [](const Loop& a, const Loop& b) { return a.branches < b.branches; });
  return loops;
}

UniPoly<BigScalar> cleared_determinant(const StandardSfg& sfg, const std::vector<Loop>& loops,
                                       std::span<const BigScalar> alpha) {
  return DisjointLoopSum(sfg, loops, alpha)(0, 0);
}

MasonGain transfer_gain(const StandardSfg& sfg, const std::vector<Loop>& loops,
                        std::span<const BigScalar> alpha, int input, int output,
                        std::size_t path_cap) {
  NodeGraph ng = node_graph(sfg);
  DisjointLoopSum sum(sfg, loops, alpha);
  MasonGain g;
  g.denominator = sum(0, 0);

  const int src = sfg.node_index(sfg.inputs[input]);
  const int dst = sfg.node_index(sfg.outputs[output]);
  const std::size_t nn = sfg.nodes.size();

  std::vector<char> reaches(nn, 0);
  std::vector<int> stack{dst};
  reaches[dst] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < ng.tail.size(); ++i)
      if (ng.head[i] == v && !reaches[ng.tail[i]]) {
        reaches[ng.tail[i]] = 1;
        stack.push_back(ng.tail[i]);
      }
  }

  std::vector<std::pair<std::vector<int>, std::vector<int>>> paths;
  if (reaches[src]) {
    std::vector<char> on_path(nn, 0);
    on_path[src] = 1;
    std::vector<int> nodes{src}, branches;
    forward_paths(ng, src, dst, reaches, on_path, nodes, branches, paths, path_cap);
  }
  g.forward_paths = paths.size();

  for (const auto& [nodes, branches] : paths) {
    std::uint64_t m = node_mask(nodes);
    std::vector<int> touching;  // leave a path node, not on the path
    for (std::size_t i = 0; i < ng.tail.size(); ++i)
      if (((m >> ng.tail[i]) & 1u) &&
          std::find(branches.begin(), branches.end(), static_cast<int>(i)) == branches.end())
        touching.push_back(static_cast<int>(i));
    g.numerator += sum.product(touching) * sum(0, m);
  }
  return g;
}

std::vector<AssocLoopSet> assoc_loop_sets(const StandardSfg& sfg) {
  const std::size_t n = sfg.branches.size();
  Digraph feed(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sfg.branches[j].head == sfg.branches[i].tail) boost::add_edge(j, i, feed);
  std::vector<int> comp(n);
  int count = n == 0 ? 0 : boost::strong_components(feed, comp.data());

  std::vector<std::vector<int>> members(count);
  for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(static_cast<int>(i));
  std::vector<AssocLoopSet> sets;
  for (auto& m : members)
    if (m.size() >= 2) sets.push_back({std::move(m)});
  std::sort(sets.begin(), sets.end(),
            [](const AssocLoopSet& a, const AssocLoopSet& b) { return a.branches < b.branches; });
  return sets;
}

StandardSfg restrict_branches(const StandardSfg& sfg, const std::vector<int>& keep) {
  StandardSfg sub;
  sub.inputs = sfg.inputs;
  sub.outputs = sfg.outputs;
  sub.origin = sfg.origin;
  sub.nodes = sfg.nodes;
  for (auto& info : sub.nodes) info.in_degree = info.out_degree = 0;
  for (int i : keep) {
    const auto& b = sfg.branches[i];
    sub.branches.push_back(b);
    ++sub.nodes[sub.node_index(b.tail)].out_degree;
    ++sub.nodes[sub.node_index(b.head)].in_degree;
  }
  return sub;
}

FactorizationCheck factorization_check(const StandardSfg& sfg, const SystemStructure& sys,
                                       std::span<const BigScalar> alpha, std::size_t cap) {
  FactorizationCheck fc;
  fc.determinant = faddeev<BigScalar>(sys, alpha).charpoly.polynomial();

  auto sets = assoc_loop_sets(sfg);
  fc.sets = sets.size();
  std::vector<char> in_set(sfg.branches.size(), 0);
  Poly product = Poly::constant(BigScalar(1));
  for (const auto& set : sets) {
    StandardSfg sub = restrict_branches(sfg, set.branches);
    std::vector<BigScalar> sub_alpha;
    for (int i : set.branches) {
      sub_alpha.push_back(alpha[i]);
      in_set[i] = 1;
    }
    product *= cleared_determinant(sub, enumerate_loops(sub, cap), sub_alpha);
  }
  for (std::size_t i = 0; i < sfg.branches.size(); ++i)
    if (!in_set[i]) product *= Poly::linear_factor(alpha[i]);
  fc.product = std::move(product);
  fc.pass = fc.product == fc.determinant;
  return fc;
}

}  // namespace twopath
