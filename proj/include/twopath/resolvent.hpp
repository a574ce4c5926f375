#pragma once

#include <span>
#include <string>
#include <vector>

#include "twopath/errors.hpp"
#include "twopath/exact_poly.hpp"
#include "twopath/graph_core.hpp"
#include "twopath/scalar.hpp"

namespace twopath {

/// Characteristic polynomial s^n + a_1 s^{n-1} + ... + a_n, stored as (a_0 = 1, a_1, ..., a_n).
template <typename Scalar>
struct CharPoly {
  std::vector<Scalar> a;

  int n() const { return static_cast<int>(a.size()) - 1; }

  UniPoly<Scalar> polynomial() const {
    std::vector<Scalar> asc(a.rbegin(), a.rend());
    return UniPoly<Scalar>(std::move(asc));
  }
};

/// N(s) = Delta(s) T(s) = sum_k Rbar_k s^{n-k}, with Rbar_k = C R_k B.
/// entries[j][i] is the numerator from input u_{i+1} to output y_{j+1}.
template <typename Scalar>
struct NumeratorMatrix {
  PolyMatrix2<Scalar> entries;
  std::vector<Matrix2<Scalar>> rbar;  // Rbar_1 .. Rbar_n

  bool is_zero() const {
    for (const auto& row : entries)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
    return true;
  }
};

/// entries[j][i] = sum_k Rbar_k(j, i) s^{n-k}.
template <typename Scalar>
void fill_numerator_entries(NumeratorMatrix<Scalar>& nm, int n) {
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      std::vector<Scalar> asc(n, Scalar(0));
      for (int k = 1; k <= n; ++k) asc[n - k] = nm.rbar[k - 1](j, i);
      nm.entries[j][i] = UniPoly<Scalar>(std::move(asc));
    }
}

template <typename Scalar>
struct FaddeevResult {
  CharPoly<Scalar> charpoly;
  NumeratorMatrix<Scalar> numerator;
  std::vector<MatrixX<Scalar>> resolvent;  // R_1 .. R_n, filled only on request
};

/// A = A0 + diag(alpha) as a dense matrix.
template <typename Scalar>
MatrixX<Scalar> assemble(const SystemStructure& sys, std::span<const Scalar> alpha) {
  MatrixX<Scalar> a = sys.a0.cast<Scalar>();
  for (int i = 0; i < sys.n; ++i) a(i, i) = alpha[i];
  return a;
}

/// Leverrier-Faddeev recurrence
///   R_1 = I,  R_k = A R_{k-1} + a_{k-1} I,  a_k = -tr(A R_k) / k
/// evaluated exactly at the diagonal assignment alpha. A R_k is formed row by
/// row from the sparse feeding structure of A0.
template <typename Scalar>
FaddeevResult<Scalar> faddeev(const SystemStructure& sys, std::span<const Scalar> alpha,
                              bool keep_resolvent = false) {
  const int n = sys.n;
  if (static_cast<int>(alpha.size()) != n)
    throw std::invalid_argument("faddeev: point dimension does not match branch count");

  FaddeevResult<Scalar> out;
  out.charpoly.a.assign(n + 1, Scalar(0));
  out.charpoly.a[0] = Scalar(1);
  out.numerator.rbar.reserve(n);

  // Only rows of R that feed an output and columns fed by an input matter for C R B.
  std::vector<int> b_rows[2], c_cols[2];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 2; ++k) {
      if (sys.b(i, k)) b_rows[k].push_back(i);
      if (sys.c(k, i)) c_cols[k].push_back(i);
    }

  MatrixX<Scalar> r = MatrixX<Scalar>::Identity(n, n);
  MatrixX<Scalar> ar(n, n);
  for (int k = 1; k <= n; ++k) {
    Matrix2<Scalar> rb;
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) {
        Scalar acc(0);
        for (int row : c_cols[j])
          for (int col : b_rows[i]) acc += r(row, col);
        rb(j, i) = acc;
      }
    out.numerator.rbar.push_back(rb);
    if (keep_resolvent) out.resolvent.push_back(r);

    // In-place updates keep the big-integer storage of `ar` alive across steps.
    for (int i = 0; i < n; ++i) {
      for (int col = 0; col < n; ++col) {
        Scalar& acc = ar(i, col);
        if (r(i, col) == 0) {
          acc = 0;
        } else {
          acc = alpha[i];
          acc *= r(i, col);
        }
        for (int f : sys.feeders[i])
          if (r(f, col) != 0) acc += r(f, col);
      }
    }
    Scalar trace(0);
    for (int i = 0; i < n; ++i) trace += ar(i, i);
    if (trace % k != 0)
      throw DivisibilityViolation("tr(A R_" + std::to_string(k) + ") = " + to_string_any(trace) +
                                  " is not divisible by " + std::to_string(k));
    out.charpoly.a[k] = -trace / k;
    if (k < n) {
      r.swap(ar);
      for (int i = 0; i < n; ++i) r(i, i) += out.charpoly.a[k];
    }
  }

  fill_numerator_entries(out.numerator, n);
  return out;
}

/// Diagonal blocks of A = A0 + diag(alpha) under a strongly connected
/// ordering of the branch-feeding graph. A is block triangular in that
/// order, so det(sI - A) is the product of the block determinants.
struct BlockPlan {
  std::vector<int> singletons;                 // branches on no cycle
  std::vector<std::vector<int>> blocks;        // cyclic components, ascending
  std::vector<SystemStructure> block_systems;  // A0 restricted to each block, no terminals
};

BlockPlan block_plan(const SystemStructure& sys);

/// Same CharPoly and NumeratorMatrix as `faddeev`, assembled from two exact
/// identities: det(sI - A) as the product of per-block Faddeev polynomials,
/// and Rbar_k = sum_{t<k} a_t C A^{k-1-t} B from the Markov parameters
/// C A^m B. The cost per point is dominated by the largest cyclic block
/// rather than by n. Resolvent matrices are never formed here.
template <typename Scalar>
FaddeevResult<Scalar> faddeev_blockwise(const SystemStructure& sys, const BlockPlan& plan,
                                        std::span<const Scalar> alpha) {
  const int n = sys.n;
  if (static_cast<int>(alpha.size()) != n)
    throw std::invalid_argument("faddeev_blockwise: point dimension does not match branch count");

  // Descending coefficients, multiplied by (s - alpha_i) in place.
  std::vector<Scalar> lin(1, Scalar(1));
  lin.reserve(plan.singletons.size() + 1);
  Scalar tmp;
  for (int i : plan.singletons) {
    lin.push_back(Scalar(0));
    for (std::size_t k = lin.size() - 1; k > 0; --k) {
      tmp = alpha[i];
      tmp *= lin[k - 1];
      lin[k] -= tmp;
    }
  }
  UniPoly<Scalar> delta(std::vector<Scalar>(lin.rbegin(), lin.rend()));
  for (std::size_t b = 0; b < plan.blocks.size(); ++b) {
    std::vector<Scalar> sub;
    for (int i : plan.blocks[b]) sub.push_back(alpha[i]);
    auto block = faddeev<Scalar>(plan.block_systems[b], std::span<const Scalar>(sub));
    delta = delta * block.charpoly.polynomial();
  }

  FaddeevResult<Scalar> out;
  out.charpoly.a.assign(n + 1, Scalar(0));
  for (int k = 0; k <= n; ++k) out.charpoly.a[k] = delta.coeff(n - k);

  // markov[m](j, i) = c_j A^m b_i
  std::vector<Matrix2<Scalar>> markov(n, Matrix2<Scalar>::Zero());
  for (int i = 0; i < 2; ++i) {
    std::vector<Scalar> v(n, Scalar(0)), next(n, Scalar(0));
    for (int r = 0; r < n; ++r) v[r] = sys.b(r, i);
    for (int m = 0; m < n; ++m) {
      for (int j = 0; j < 2; ++j) {
        Scalar acc(0);
        for (int r = 0; r < n; ++r)
          if (sys.c(j, r)) acc += v[r];
        markov[m](j, i) = std::move(acc);
      }
      if (m + 1 == n) break;
      for (int r = 0; r < n; ++r) {
        Scalar& acc = next[r];
        acc = alpha[r];
        acc *= v[r];
        for (int f : sys.feeders[r]) acc += v[f];
      }
      v.swap(next);
    }
  }

  out.numerator.rbar.assign(n, Matrix2<Scalar>::Zero());
  for (int k = 1; k <= n; ++k)
    for (int t = 0; t < k; ++t) {
      if (out.charpoly.a[t] == 0) continue;
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
          if (markov[k - 1 - t](j, i) == 0) continue;
          tmp = out.charpoly.a[t];
          tmp *= markov[k - 1 - t](j, i);
          out.numerator.rbar[k - 1](j, i) += tmp;
        }
    }
  fill_numerator_entries(out.numerator, n);
  return out;
}

/// Checks (sI - A) * sum_k R_k s^{n-k} == Delta(s) I coefficient by coefficient,
/// using a dense product independent of the sparse recurrence. Requires the
/// resolvent matrices to have been kept.
template <typename Scalar>
bool resolvent_identity_holds(const SystemStructure& sys, std::span<const Scalar> alpha,
                              const FaddeevResult<Scalar>& fr) {
  const int n = sys.n;
  if (static_cast<int>(fr.resolvent.size()) != n) return false;
  if (n == 0) return true;
  const MatrixX<Scalar> a = assemble(sys, alpha);
  const MatrixX<Scalar> id = MatrixX<Scalar>::Identity(n, n);
  const auto& r = fr.resolvent;
  const auto& coef = fr.charpoly.a;
  // s^n: R_1 = a_0 I
  if (r[0] != id) return false;
  // s^{n-k}, 1 <= k < n: R_{k+1} - A R_k = a_k I
  for (int k = 1; k < n; ++k) {
    MatrixX<Scalar> lhs = r[k] - a * r[k - 1];
    if (lhs != MatrixX<Scalar>(coef[k] * id)) return false;
  }
  // s^0: -A R_n = a_n I
  MatrixX<Scalar> last = -(a * r[n - 1]);
  return last == MatrixX<Scalar>(coef[n] * id);
}

/// Pointwise rank of T(s, alpha) from the numerator: 0 iff N = 0, 1 iff
/// N != 0 and delta = N11 N22 - N12 N21 vanishes identically, else 2.
template <typename Scalar>
struct PointRank {
  std::vector<Scalar> point;
  int rank = 0;
  UniPoly<Scalar> delta;
};

template <typename Scalar>
int classify_numerator(const NumeratorMatrix<Scalar>& nm, UniPoly<Scalar>* delta_out = nullptr) {
  if (nm.is_zero()) return 0;
  UniPoly<Scalar> delta = det2x2(nm.entries);
  int rank = delta.is_zero() ? 1 : 2;
  if (delta_out) *delta_out = std::move(delta);
  return rank;
}

template <typename Scalar>
PointRank<Scalar> rank_at_point(const SystemStructure& sys, std::span<const Scalar> alpha) {
  PointRank<Scalar> pr;
  pr.point.assign(alpha.begin(), alpha.end());
  auto fr = faddeev<Scalar>(sys, alpha);
  pr.rank = classify_numerator(fr.numerator, &pr.delta);
  return pr;
}

/// Measured coefficient maxima against |a_k| < 2 n^(2n^2) and
/// |Rbar| < 2 n^(2n^2 + 2).
struct BoundReport {
  BigScalar max_a{0};
  BigScalar max_rbar{0};
  BigScalar bound_a{0};
  BigScalar bound_rbar{0};
  bool a_ok = true;
  bool rbar_ok = true;

  bool ok() const { return a_ok && rbar_ok; }
};

/// Bounds (2 n^(2n^2), 2 n^(2n^2+2)) for a given n.
std::pair<BigScalar, BigScalar> coefficient_bounds(int n);

BoundReport bound_check(const CharPoly<BigScalar>& cp, const NumeratorMatrix<BigScalar>& nm, int n);

/// Same as bound_check with precomputed bounds.
BoundReport bound_check(const CharPoly<BigScalar>& cp, const NumeratorMatrix<BigScalar>& nm,
                        const std::pair<BigScalar, BigScalar>& bounds);

}  // namespace twopath
