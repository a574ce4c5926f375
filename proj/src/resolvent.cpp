#include "twopath/resolvent.hpp"

#include <algorithm>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

namespace twopath {

BlockPlan block_plan(const SystemStructure& sys) {
  using Digraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  const int n = sys.n;
  Digraph feed(n);
  for (int i = 0; i < n; ++i)
    for (int f : sys.feeders[i]) boost::add_edge(f, i, feed);
  std::vector<int> comp(n);
  const int count = n == 0 ? 0 : boost::strong_components(feed, comp.data());

  std::vector<std::vector<int>> members(count);
  for (int i = 0; i < n; ++i) members[comp[i]].push_back(i);
  BlockPlan plan;
  for (auto& m : members) {
    if (m.size() == 1) {
      plan.singletons.push_back(m.front());
    } else {
      plan.blocks.push_back(std::move(m));
    }
  }
  std::sort(plan.singletons.begin(), plan.singletons.end());
  std::sort(plan.blocks.begin(), plan.blocks.end());

  for (const auto& block : plan.blocks) {
    const int b = static_cast<int>(block.size());
    SystemStructure sub;
    sub.n = b;
    sub.a0 = Eigen::MatrixXi::Zero(b, b);
    sub.b = Eigen::MatrixXi::Zero(b, 2);
    sub.c = Eigen::MatrixXi::Zero(2, b);
    sub.feeders.resize(b);
    for (int r = 0; r < b; ++r)
      for (int col = 0; col < b; ++col)
        if (sys.a0(block[r], block[col])) {
          sub.a0(r, col) = 1;
          sub.feeders[r].push_back(col);
        }
    plan.block_systems.push_back(std::move(sub));
  }
  return plan;
}

std::pair<BigScalar, BigScalar> coefficient_bounds(int n) {
  using boost::multiprecision::pow;
  const BigScalar base(n);
  const unsigned e = static_cast<unsigned>(2 * n * n);
  return {BigScalar(2) * pow(base, e), BigScalar(2) * pow(base, e + 2)};
}

BoundReport bound_check(const CharPoly<BigScalar>& cp, const NumeratorMatrix<BigScalar>& nm,
                        const std::pair<BigScalar, BigScalar>& bounds) {
  BoundReport rep;
  rep.bound_a = bounds.first;
  rep.bound_rbar = bounds.second;
  for (std::size_t k = 1; k < cp.a.size(); ++k) rep.max_a = std::max(rep.max_a, abs_value(cp.a[k]));
  for (const auto& m : nm.rbar)
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) rep.max_rbar = std::max(rep.max_rbar, abs_value(m(j, i)));
  rep.a_ok = rep.max_a < rep.bound_a;
  rep.rbar_ok = rep.max_rbar < rep.bound_rbar;
  return rep;
}

BoundReport bound_check(const CharPoly<BigScalar>& cp, const NumeratorMatrix<BigScalar>& nm, int n) {
  return bound_check(cp, nm, coefficient_bounds(n));
}

}  // namespace twopath
