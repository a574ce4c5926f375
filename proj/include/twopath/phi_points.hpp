#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twopath/graph_core.hpp"
#include "twopath/resolvent.hpp"
#include "twopath/scalar.hpp"

namespace twopath {

enum class PerturbKind { base, minus, plus };

/// One evaluation point of the structured sweep.
///
/// Family 1 is built on z_i = n*i, family j >= 2 on z_i = (n*i)^j. `coordinate`
/// is the 1-based index k of the perturbed coordinate, 0 for a base point.
struct PhiPoint {
  std::vector<BigScalar> alpha;
  int family = 1;
  PerturbKind kind = PerturbKind::base;
  int coordinate = 0;

  /// e.g. "F1.base", "F1.minus2", "F3.minus1"
  std::string label() const;
};

/// All n^2 + 2n points in generation order: family 1 (base, minus 1..n,
/// plus 1..n), then families 2..n (base, minus 1..n). Empty for n = 0.
std::vector<PhiPoint> generate_phi(int n);

enum class SweepMode { early_exit, full_sweep };

struct BoundStats {
  BigScalar max_a{0};
  BigScalar max_rbar{0};
  std::size_t points_checked = 0;
  std::vector<std::string> violations;  // point labels
};

struct Decision {
  int cls = 0;  // equals r
  int r = 0;
  SweepMode mode = SweepMode::early_exit;
  std::optional<std::size_t> witness;  // index into the generated points
  std::optional<PhiPoint> witness_point;
  std::vector<PhiPoint> points;                  // full sweep only
  std::vector<PointRank<BigScalar>> table;       // full sweep only, parallel to points
  std::size_t points_evaluated = 0;
  BoundStats bounds;
  /// Some points gave N = 0 while others did not.
  bool mixed_zero = false;
  double elapsed_ms = 0.0;
};

/// r = max pointwise rank of T(s, alpha) over the sweep; class = r.
/// Early-exit mode stops at the first rank-2 point. Coefficient bounds are
/// checked at every evaluated point.
Decision decide(const SystemStructure& sys, SweepMode mode = SweepMode::early_exit);

/// `count` deterministic random points with pairwise distinct coordinates in [1, n^2].
std::vector<std::vector<BigScalar>> random_distinct_points(int n, std::size_t count, std::uint64_t seed);

/// Largest pointwise rank over random_distinct_points; used to check that
/// random points never exceed the sweep rank.
int max_rank_at_random_points(const SystemStructure& sys, std::size_t count, std::uint64_t seed);

}  // namespace twopath
