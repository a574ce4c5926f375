#pragma once

#include <optional>
#include <vector>

#include "twopath/exact_poly.hpp"
#include "twopath/graph_core.hpp"
#include "twopath/scalar.hpp"

namespace twopath {

using Series = TruncPoly2<BigScalar>;

/// Smallest k with c_output A0^{k-1} b_input != 0, i.e. the branch length of a
/// shortest input -> output path. Empty when no such path exists.
std::optional<int> relative_order(const SystemStructure& sys, int input, int output);

/// Leading series coefficients of T_{output,input}(s, z) = sum_k c A^{k-1} b / s^k
/// for A = A0 + diag(z), indeterminate z_{i+1} on branch i:
///   f0           = c A^{d-1} b
///   first_order  = c A^d b       (f11 linear, f10 constant)
///   second_order = c A^{d+1} b   (f22 quadratic, f21 linear, f20 constant)
struct SeriesCoeffs {
  int d = 0;
  BigScalar f0{0};
  Series first_order;
  Series second_order;

  Series f11() const { return first_order.linear_part(); }
  BigScalar f10() const { return first_order.constant_term(); }
  Series f22() const { return second_order.quadratic_part(); }
  Series f21() const { return second_order.linear_part(); }
  BigScalar f20() const { return second_order.constant_term(); }
};

/// Requires a path (relative_order has a value); throws std::invalid_argument otherwise.
SeriesCoeffs series_coeffs(const SystemStructure& sys, int input, int output);

/// Elementary symmetric quadratic polynomial of a branch set:
/// sum_v z_v^2 + sum_{i<j} z_i z_j.
Series esqp(const std::vector<int>& branches);

/// Elementary symmetric primary polynomial: sum_v z_v.
Series espp(const std::vector<int>& branches);

/// All shortest input -> output paths as branch-index sequences, found by
/// breadth-first layering of the branch graph.
std::vector<std::vector<int>> shortest_paths(const SystemStructure& sys, int input, int output);

struct EsqpVerdict {
  bool pass = false;
  bool count_matches = false;
  bool f22_matches = false;
  std::vector<std::vector<int>> witnesses;  // shortest paths
  Series expected_f22;                      // sum of witness ESQPs
  SeriesCoeffs coeffs;
};

EsqpVerdict verify_esqp(const SystemStructure& sys, int input, int output);

/// When exactly one shortest path exists, rebuilds it from the square terms
/// of f22 ordered by distance from the input. Empty when f0 != 1.
std::vector<int> reconstruct_single_path(const SystemStructure& sys, int input,
                                         const SeriesCoeffs& sc);

/// c_output A0^{len-1} b_input: number of branch walks of the given length.
BigScalar walk_count(const SystemStructure& sys, int input, int output, int len);

}  // namespace twopath
