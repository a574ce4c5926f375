#include "twopath/phi_points.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

namespace twopath {

std::string PhiPoint::label() const {
  std::string s = "F" + std::to_string(family) + ".";
  switch (kind) {
    case PerturbKind::base: return s + "base";
    case PerturbKind::minus: return s + "minus" + std::to_string(coordinate);
    case PerturbKind::plus: return s + "plus" + std::to_string(coordinate);
  }
  return s;
}

std::vector<PhiPoint> generate_phi(int n) {
  using boost::multiprecision::pow;
  std::vector<PhiPoint> pts;
  if (n <= 0) return pts;
  pts.reserve(static_cast<std::size_t>(n) * n + 2 * n);

  for (int j = 1; j <= n; ++j) {
    std::vector<BigScalar> base(n);
    for (int i = 1; i <= n; ++i) base[i - 1] = pow(BigScalar(n * i), static_cast<unsigned>(j));
    pts.push_back({base, j, PerturbKind::base, 0});
    for (int k = 1; k <= n; ++k) {
      auto a = base;
      a[k - 1] -= 1;
      pts.push_back({std::move(a), j, PerturbKind::minus, k});
    }
    if (j == 1) {
      for (int k = 1; k <= n; ++k) {
        auto a = base;
        a[k - 1] += 1;
        pts.push_back({std::move(a), j, PerturbKind::plus, k});
      }
    }
  }
  return pts;
}

Decision decide(const SystemStructure& sys, SweepMode mode) {
  auto start = std::chrono::steady_clock::now();
  Decision d;
  d.mode = mode;
  const int n = sys.n;
  if (n == 0) return d;

  const auto bounds = coefficient_bounds(n);
  const auto pts = generate_phi(n);
  const auto plan = block_plan(sys);
  bool saw_zero = false, saw_nonzero = false;

  for (std::size_t idx = 0; idx < pts.size(); ++idx) {
    const auto& p = pts[idx];
    auto fr = faddeev_blockwise<BigScalar>(sys, plan, p.alpha);
    PointRank<BigScalar> pr;
    pr.rank = classify_numerator(fr.numerator, &pr.delta);
    ++d.points_evaluated;

    auto br = bound_check(fr.charpoly, fr.numerator, bounds);
    ++d.bounds.points_checked;
    d.bounds.max_a = std::max(d.bounds.max_a, br.max_a);
    d.bounds.max_rbar = std::max(d.bounds.max_rbar, br.max_rbar);
    if (!br.ok()) d.bounds.violations.push_back(p.label());

    (pr.rank == 0 ? saw_zero : saw_nonzero) = true;
    if (pr.rank > d.r) d.r = pr.rank;
    if (pr.rank == 2 && !d.witness) {
      d.witness = idx;
      d.witness_point = p;
    }
    if (mode == SweepMode::full_sweep) {
      pr.point = p.alpha;
      d.points.push_back(p);
      d.table.push_back(std::move(pr));
    } else if (d.r == 2) {
      break;
    }
  }
  d.cls = d.r;
  d.mixed_zero = saw_zero && saw_nonzero;
  d.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return d;
}

std::vector<std::vector<BigScalar>> random_distinct_points(int n, std::size_t count,
                                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<BigScalar>> out;
  if (n <= 0) return out;
  std::vector<int> pool(static_cast<std::size_t>(n) * n);
  std::iota(pool.begin(), pool.end(), 1);
  for (std::size_t c = 0; c < count; ++c) {
    // partial Fisher-Yates with an explicit modulus so the stream is portable
    for (int i = 0; i < n; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<BigScalar> a(n);
    for (int i = 0; i < n; ++i) a[i] = pool[i];
    out.push_back(std::move(a));
  }
  return out;
}

int max_rank_at_random_points(const SystemStructure& sys, std::size_t count, std::uint64_t seed) {
  int best = 0;
  for (const auto& a : random_distinct_points(sys.n, count, seed))
    best = std::max(best, rank_at_point<BigScalar>(sys, a).rank);
  return best;
}

}  // namespace twopath
