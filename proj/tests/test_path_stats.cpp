#include <doctest.h>

#include <random>

#include "reference.hpp"
#include "twopath/generators.hpp"
#include "twopath/path_stats.hpp"

using namespace twopath;

namespace {

PreparedGraph prep(std::vector<Edge> edges) {
  return prepare(make_digraph(std::move(edges), {"u1", "u2"}, {"y1", "y2"}));
}

Series z(int i) { return Series::variable(i); }
Series zz(int i, int j) { return Series::product_term(i, j); }

// A shortest walk never repeats a node, so the walks of length d are the shortest paths.
std::vector<std::vector<int>> enumerated_shortest(const SystemStructure& sys, int in, int out, int d) {
  return ref::branch_walks(sys, in, out, d);
}

void check_pair(const SystemStructure& sys, int in, int out) {
  auto d = relative_order(sys, in, out);
  if (!d) {
    CHECK(shortest_paths(sys, in, out).empty());
    Eigen::MatrixXi reach = Eigen::MatrixXi::Identity(sys.n, sys.n);
    for (int len = 1; len <= sys.n; ++len) {
      CHECK((sys.c.row(out) * reach * sys.b.col(in))(0, 0) == 0);
      reach = (sys.a0 * reach).cwiseMin(1);
    }
    return;
  }
  auto v = verify_esqp(sys, in, out);
  CHECK(v.pass);
  const auto& sc = v.coeffs;
  auto paths = enumerated_shortest(sys, in, out, *d);
  CHECK(v.witnesses == paths);
  CHECK(sc.f0 == BigScalar(paths.size()));
  CHECK(sc.f10() == walk_count(sys, in, out, *d + 1));
  CHECK(sc.f20() == walk_count(sys, in, out, *d + 2));
  CHECK(sc.f10() == BigScalar(ref::branch_walks(sys, in, out, *d + 1).size()));
  CHECK(sc.first_order.quadratic().empty());
  CHECK(sc.first_order == ref::truncate2(ref::full_markov(sys, in, out, *d)));
  CHECK(sc.second_order == ref::truncate2(ref::full_markov(sys, in, out, *d + 1)));
  const auto f22 = sc.f22();
  for (const auto& [key, c] : f22.quadratic()) {
    CHECK(c > 0);
    if (key.first == key.second) continue;
    std::size_t containing = 0;
    for (const auto& p : paths)
      if (std::count(p.begin(), p.end(), key.first - 1) && std::count(p.begin(), p.end(), key.second - 1))
        ++containing;
    CHECK(c == BigScalar(containing));
  }
  if (sc.f0 == 1) CHECK(reconstruct_single_path(sys, in, sc) == paths.front());
}

}  // namespace

TEST_CASE("relative order examples") {
  CHECK(relative_order(prep({{"u1", "a"}, {"a", "y1"}}).structure, 0, 0) == 2);
  CHECK(relative_order(prep({{"u1", "y1"}}).structure, 0, 0) == 1);
  CHECK_FALSE(relative_order(prep({{"u1", "y1"}}).structure, 1, 1).has_value());
}

TEST_CASE("single path coefficients") {
  auto p = prep({{"u1", "a"}, {"a", "y1"}});
  auto sc = series_coeffs(p.structure, 0, 0);
  CHECK(sc.d == 2);
  CHECK(sc.f0 == 1);
  CHECK(sc.f11() == z(1) + z(2));
  CHECK(sc.f22() == zz(1, 1) + zz(2, 2) + zz(1, 2));
  CHECK(sc.f22() == esqp({0, 1}));
  CHECK(sc.f11() == espp({0, 1}));
  CHECK(sc.f10() == 0);
  CHECK(verify_esqp(p.structure, 0, 0).pass);
  CHECK_THROWS_AS(series_coeffs(p.structure, 1, 1), std::invalid_argument);
}

TEST_CASE("two parallel length-two paths") {
  auto p = prep({{"u1", "a"}, {"a", "y1"}, {"u1", "b"}, {"b", "y1"}});
  auto sc = series_coeffs(p.structure, 0, 0);
  CHECK(sc.f0 == 2);
  CHECK(sc.f11() == z(1) + z(2) + z(3) + z(4));
  // branches: a->y1, b->y1, u1->a, u1->b
  CHECK(sc.f22() == esqp({2, 0}) + esqp({3, 1}));
  auto v = verify_esqp(p.structure, 0, 0);
  CHECK(v.pass);
  CHECK(v.witnesses.size() == 2);
  const auto f22 = sc.f22();
  for (const auto& [key, c] : f22.quadratic()) CHECK(c == 1);
}

TEST_CASE("a longer detour leaves f0 alone and shows up in the walk count") {
  auto base = prep({{"u1", "a"}, {"a", "y1"}});
  auto detour = prep({{"u1", "a"}, {"a", "y1"}, {"u1", "b"}, {"b", "c"}, {"c", "y1"}});
  auto sc0 = series_coeffs(base.structure, 0, 0);
  auto sc1 = series_coeffs(detour.structure, 0, 0);
  CHECK(sc1.f0 == sc0.f0);
  CHECK(sc1.f10() == 1);
  CHECK(sc1.f10() == walk_count(detour.structure, 0, 0, 3));
}

TEST_CASE("walks and paths differ on a short cycle") {
  // u1 -> a -> b -> c -> y1 with the 2-cycle b <-> c: one walk of length d + 2, no such path
  auto p = prep({{"u1", "a"}, {"a", "b"}, {"b", "c"}, {"c", "b"}, {"c", "y1"}});
  auto sc = series_coeffs(p.structure, 0, 0);
  CHECK(sc.d == 4);
  CHECK(sc.f10() == 0);
  CHECK(sc.f20() == 1);
  auto g = make_digraph({{"u1", "a"}, {"a", "b"}, {"b", "c"}, {"c", "b"}, {"c", "y1"}}, {"u1", "u2"},
                        {"y1", "y2"});
  for (const auto& path : ref::simple_paths(g, "u1", "y1")) CHECK(path.size() == 5);
  check_pair(p.structure, 0, 0);
}

TEST_CASE("fixtures and curated graphs") {
  for (const auto& file : ref::curated_files()) {
    auto p = prepare(twopath::parse_graph_file(file));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) check_pair(p.structure, i, j);
  }
}

TEST_CASE("random layered DAGs") {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 60; ++k) {
    auto p = prepare(random_layered_dag(rng));
    if (p.structure.n > 14) continue;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) check_pair(p.structure, i, j);
  }
}

TEST_CASE("random graphs with cycles") {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 60; ++k) {
    auto p = prepare(random_graph(rng, 6, 8));
    if (p.structure.n > 12) continue;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) check_pair(p.structure, i, j);
  }
}

TEST_CASE("disjoint shortest paths give 0/1 cross terms") {
  auto p = prep({{"u1", "a"}, {"a", "y1"}, {"u1", "b"}, {"b", "y1"}, {"u1", "c"}, {"c", "y1"}});
  auto sc = series_coeffs(p.structure, 0, 0);
  const auto f22 = sc.f22();
  for (const auto& [key, c] : f22.quadratic()) CHECK(c == 1);
}
