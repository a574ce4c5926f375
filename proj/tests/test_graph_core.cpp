#include <doctest.h>

#include "reference.hpp"
#include "twopath/errors.hpp"
#include "twopath/generators.hpp"
#include "twopath/graph_core.hpp"
#include "twopath/oracles.hpp"

using namespace twopath;

namespace {

RawDigraph graph(std::vector<Edge> edges) {
  return make_digraph(std::move(edges), {"u1", "u2"}, {"y1", "y2"});
}

int count_ones(const Eigen::MatrixXi& m) { return static_cast<int>(m.sum()); }

}  // namespace

TEST_CASE("normalize leaves a clean graph unchanged") {
  auto g = graph({{"u1", "y1"}, {"u2", "y2"}});
  CHECK(normalize(g) == g);
}

TEST_CASE("normalize subdivides a self-loop") {
  auto g = graph({{"u1", "v"}, {"v", "v"}, {"v", "y1"}});
  auto n = normalize(g);
  CHECK(n.nodes.size() == g.nodes.size() + 1);
  CHECK(n.edges.size() == g.edges.size() + 1);
  for (const auto& [a, b] : n.edges) CHECK(a != b);
}

TEST_CASE("normalize subdivides a repeated edge and keeps the class") {
  RawDigraph g = graph({{"u1", "a"}, {"a", "b"}, {"b", "y1"}, {"u2", "y2"}});
  g.edges.push_back({"a", "b"});
  auto n = normalize(g);
  CHECK(n.edges.size() == g.edges.size() + 1);
  std::set<Edge> distinct(n.edges.begin(), n.edges.end());
  CHECK(distinct.size() == n.edges.size());
  CHECK(ref::enumerated_class(n) == brute_force_class(g).cls);
  CHECK(brute_force_class(n).cls == 2);
}

TEST_CASE("normalize detaches terminals with forbidden degree") {
  auto g = graph({{"u2", "u1"}, {"u1", "y1"}, {"y1", "y2"}});
  auto n = normalize(g);
  CHECK(n.inputs[0] != "u1");
  CHECK(n.outputs[0] != "y1");
  CHECK(n.original(n.inputs[0]) == "u1");
  CHECK(n.original(n.outputs[0]) == "y1");
  for (const auto& [a, b] : n.edges) {
    CHECK(b != n.inputs[0]);
    CHECK(b != n.inputs[1]);
    CHECK(a != n.outputs[0]);
    CHECK(a != n.outputs[1]);
  }
}

TEST_CASE("terminals must be four distinct nodes") {
  CHECK_THROWS_AS(make_digraph({{"u1", "y1"}}, {"u1", "u1"}, {"y1", "y2"}).validate(),
                  InvalidTerminals);
  CHECK_THROWS_AS(make_digraph({{"u1", "y1"}}, {"u1", "u2"}, {"y1", "u2"}).validate(),
                  InvalidTerminals);
  RawDigraph g = graph({{"u1", "y1"}});
  g.inputs[1] = "u1";
  CHECK_THROWS_AS(normalize(g), InvalidTerminals);
}

TEST_CASE("split_nodes splits the star centre") {
  auto g = graph({{"u1", "v"}, {"u2", "v"}, {"v", "y1"}, {"v", "y2"}});
  auto s = split_nodes(normalize(g));
  CHECK(s.edges.size() == 5);
  CHECK(s.nodes.count("v") == 0);
  int from_v = 0;
  for (const auto& v : s.nodes)
    if (s.original(v) == "v") ++from_v;
  CHECK(from_v == 2);
}

TEST_CASE("split_nodes leaves a pure path alone") {
  auto g = graph({{"u1", "a"}, {"a", "y1"}});
  CHECK(split_nodes(g) == g);
}

TEST_CASE("grid crossing is split once and keeps its class") {
  auto g = graph({{"u1", "x"}, {"u2", "x"}, {"x", "y1"}, {"x", "y2"}, {"u1", "p"}, {"p", "q"},
                  {"q", "y1"}});
  auto n = normalize(g);
  auto s = split_nodes(n);
  CHECK(s.nodes.size() == n.nodes.size() + 1);
  CHECK(ref::enumerated_class(s) == ref::enumerated_class(g));
  CHECK(brute_force_class(s).cls == brute_force_class(g).cls);
}

TEST_CASE("build_system on a two-branch path") {
  auto built = build_system(graph({{"u1", "a"}, {"a", "y1"}}));
  const auto& sys = built.structure;
  REQUIRE(sys.n == 2);
  Eigen::MatrixXi a0(2, 2);
  // branch 0 is a -> y1, branch 1 is u1 -> a
  a0 << 0, 1, 0, 0;
  CHECK(sys.a0 == a0);
  CHECK(sys.b(0, 0) == 0);
  CHECK(sys.b(1, 0) == 1);
  CHECK(sys.c(0, 0) == 1);
  CHECK(sys.c(0, 1) == 0);
  CHECK(count_ones(sys.b.col(1)) == 0);
  CHECK(count_ones(sys.c.row(1)) == 0);
}

TEST_CASE("build_system on two disjoint edges") {
  const auto sys = build_system(graph({{"u1", "y1"}, {"u2", "y2"}})).structure;
  CHECK(sys.a0 == Eigen::MatrixXi::Zero(2, 2));
  CHECK(sys.b == Eigen::MatrixXi::Identity(2, 2));
  CHECK(sys.c == Eigen::MatrixXi::Identity(2, 2));
}

TEST_CASE("split star has four feedings") {
  auto p = prepare(graph({{"u1", "v"}, {"u2", "v"}, {"v", "y1"}, {"v", "y2"}}));
  CHECK(p.structure.n == 5);
  CHECK(count_ones(p.structure.a0) == 4);
}

TEST_CASE("branches are indexed by (tail, head)") {
  auto p = prepare(graph({{"u2", "b"}, {"u1", "a"}, {"b", "y2"}, {"a", "y1"}}));
  for (std::size_t i = 1; i < p.sfg.branches.size(); ++i) {
    const auto& x = p.sfg.branches[i - 1];
    const auto& y = p.sfg.branches[i];
    CHECK(std::make_pair(x.tail, x.head) < std::make_pair(y.tail, y.head));
  }
}

TEST_CASE("normalize and split are idempotent") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    auto g = random_graph(rng, 8, 10);
    auto n = normalize(g);
    CHECK(normalize(n) == n);
    auto s = split_nodes(n);
    CHECK(split_nodes(s) == s);
  }
}

TEST_CASE("structure invariants on random graphs") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 300; ++k) {
    auto p = prepare(random_graph(rng, 8, 10));
    const auto& sys = p.structure;
    const auto& br = p.sfg.branches;
    int pairs = 0;
    for (int i = 0; i < sys.n; ++i)
      for (int j = 0; j < sys.n; ++j)
        if (br[j].head == br[i].tail) ++pairs;
    CHECK(count_ones(sys.a0) == pairs);
    for (int i = 0; i < sys.n; ++i) CHECK(sys.a0(i, i) == 0);
    for (int i = 0; i < sys.n; ++i)
      for (int k2 = 0; k2 < 2; ++k2) {
        CHECK((sys.b(i, k2) == 1) == (br[i].tail == p.sfg.inputs[k2]));
        CHECK((sys.c(k2, i) == 1) == (br[i].head == p.sfg.outputs[k2]));
      }
    for (const auto& info : p.sfg.nodes) {
      bool terminal = info.id == p.sfg.inputs[0] || info.id == p.sfg.inputs[1] ||
                      info.id == p.sfg.outputs[0] || info.id == p.sfg.outputs[1];
      if (!terminal) CHECK(std::min(info.in_degree, info.out_degree) <= 1);
    }
    for (const auto& u : p.sfg.inputs) CHECK(p.sfg.nodes[p.sfg.node_index(u)].in_degree == 0);
    for (const auto& y : p.sfg.outputs) CHECK(p.sfg.nodes[p.sfg.node_index(y)].out_degree == 0);
  }
}

TEST_CASE("class is preserved by normalize and split on all small graphs") {
  for (int nodes = 4; nodes <= 5; ++nodes)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << exhaustive_edge_slots(nodes)); ++mask) {
      auto g = exhaustive_graph(nodes, mask);
      const int before = ref::enumerated_class(g);
      auto p = prepare(g);
      CHECK(ref::enumerated_class(p.normalized) == before);
      CHECK(ref::enumerated_class(p.split) == before);
    }
}

TEST_CASE("class is preserved on random graphs with loops and bad terminals") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 400; ++k) {
    auto g = random_graph(rng, 7, 9);
    auto p = prepare(g);
    CHECK(brute_force_class(p.split).cls == ref::enumerated_class(g));
  }
}
