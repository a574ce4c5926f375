#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "twopath/exact_poly.hpp"
#include "twopath/graph_core.hpp"
#include "twopath/scalar.hpp"

namespace twopath {

inline constexpr std::size_t kDefaultLoopCap = 10000;

/// A simple directed cycle of the signal flow graph.
struct Loop {
  std::vector<int> branches;  // ascending branch indices
  std::vector<int> nodes;     // ascending indices into StandardSfg::nodes
};

/// Every simple cycle, ordered by branch set. Throws CapExceeded when more
/// than `cap` cycles exist.
std::vector<Loop> enumerate_loops(const StandardSfg& sfg, std::size_t cap = kDefaultLoopCap);

/// Mason's determinant 1 - sum L_i + sum L_i L_j - ... (node-disjoint
/// products) multiplied through by prod_i (s - alpha_i).
UniPoly<BigScalar> cleared_determinant(const StandardSfg& sfg, const std::vector<Loop>& loops,
                                       std::span<const BigScalar> alpha);

/// Gain from input u_{input+1} to output y_{output+1} as a cleared fraction
/// sum_mu p_mu Delta_mu / Delta, both sides multiplied by prod_i (s - alpha_i).
struct MasonGain {
  UniPoly<BigScalar> numerator;
  UniPoly<BigScalar> denominator;
  std::size_t forward_paths = 0;
};

MasonGain transfer_gain(const StandardSfg& sfg, const std::vector<Loop>& loops,
                        std::span<const BigScalar> alpha, int input, int output,
                        std::size_t path_cap = kDefaultLoopCap);

/// Branch set of one nontrivial strongly connected component of the
/// branch-feeding graph (branch j feeds i when head(j) == tail(i)).
struct AssocLoopSet {
  std::vector<int> branches;  // ascending
};

std::vector<AssocLoopSet> assoc_loop_sets(const StandardSfg& sfg);

struct FactorizationCheck {
  bool pass = false;
  std::size_t sets = 0;
  UniPoly<BigScalar> determinant;  // det(sI - A) from the resolvent recurrence
  UniPoly<BigScalar> product;      // prod of cleared sub-determinants times free factors
};

/// det(sI - A) == prod_m (cleared sub-determinant of set m) * prod_k (s - alpha_k)
/// over branches that lie on no loop.
FactorizationCheck factorization_check(const StandardSfg& sfg, const SystemStructure& sys,
                                       std::span<const BigScalar> alpha,
                                       std::size_t cap = kDefaultLoopCap);

/// StandardSfg restricted to a subset of branches (node table unchanged).
StandardSfg restrict_branches(const StandardSfg& sfg, const std::vector<int>& keep);

}  // namespace twopath
