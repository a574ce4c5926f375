#include "twopath/path_stats.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace twopath {

namespace {

// v <- A0 v over 0/1 structure.
std::vector<BigScalar> step_counts(const SystemStructure& sys, const std::vector<BigScalar>& v) {
  std::vector<BigScalar> out(sys.n, BigScalar(0));
  for (int i = 0; i < sys.n; ++i)
    for (int f : sys.feeders[i]) out[i] += v[f];
  return out;
}

BigScalar dot_output(const SystemStructure& sys, int output, const std::vector<BigScalar>& v) {
  BigScalar acc(0);
  for (int i = 0; i < sys.n; ++i)
    if (sys.c(output, i)) acc += v[i];
  return acc;
}

std::vector<BigScalar> input_vector(const SystemStructure& sys, int input) {
  std::vector<BigScalar> v(sys.n, BigScalar(0));
  for (int i = 0; i < sys.n; ++i) v[i] = sys.b(i, input);
  return v;
}

// v <- (A0 + diag(z)) v, truncated at total degree 2.
std::vector<Series> step_symbolic(const SystemStructure& sys, const std::vector<Series>& v) {
  std::vector<Series> out(sys.n);
  for (int i = 0; i < sys.n; ++i) {
    out[i] = trunc2_mul(Series::variable(i + 1), v[i]);
    for (int f : sys.feeders[i]) out[i] += v[f];
  }
  return out;
}

// Distance (in branches) from the input terminal to the end of each branch.
std::vector<int> branch_levels(const SystemStructure& sys, int input) {
  std::vector<int> level(sys.n, -1);
  std::vector<int> frontier;
  for (int i = 0; i < sys.n; ++i)
    if (sys.b(i, input)) {
      level[i] = 1;
      frontier.push_back(i);
    }
  // successors of branch j: branches i with a0(i, j) = 1
  std::vector<std::vector<int>> succ(sys.n);
  for (int i = 0; i < sys.n; ++i)
    for (int f : sys.feeders[i]) succ[f].push_back(i);
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int j : frontier)
      for (int i : succ[j])
        if (level[i] < 0) {
          level[i] = level[j] + 1;
          next.push_back(i);
        }
    frontier = std::move(next);
  }
  return level;
}

}  // namespace

std::optional<int> relative_order(const SystemStructure& sys, int input, int output) {
  auto v = input_vector(sys, input);
  for (int k = 1; k <= sys.n; ++k) {
    if (dot_output(sys, output, v) != 0) return k;
    v = step_counts(sys, v);
  }
  return std::nullopt;
}

BigScalar walk_count(const SystemStructure& sys, int input, int output, int len) {
  if (len < 1) return BigScalar(0);
  auto v = input_vector(sys, input);
  for (int k = 1; k < len; ++k) v = step_counts(sys, v);
  return dot_output(sys, output, v);
}

SeriesCoeffs series_coeffs(const SystemStructure& sys, int input, int output) {
  auto d = relative_order(sys, input, output);
  if (!d) throw std::invalid_argument("series_coeffs: no path from input to output");

  std::vector<Series> v(sys.n);
  for (int i = 0; i < sys.n; ++i)
    if (sys.b(i, input)) v[i] = Series::constant(BigScalar(1));
  auto project = [&](const std::vector<Series>& w) {
    Series acc;
    for (int i = 0; i < sys.n; ++i)
      if (sys.c(output, i)) acc += w[i];
    return acc;
  };

  SeriesCoeffs sc;
  sc.d = *d;
  for (int k = 1; k < *d; ++k) v = step_symbolic(sys, v);
  sc.f0 = project(v).constant_term();
  v = step_symbolic(sys, v);
  sc.first_order = project(v);
  v = step_symbolic(sys, v);
  sc.second_order = project(v);
  return sc;
}

Series espp(const std::vector<int>& branches) {
  Series s;
  for (int i : branches) s.add_linear(i + 1, BigScalar(1));
  return s;
}

Series esqp(const std::vector<int>& branches) {
  Series s;
  for (std::size_t a = 0; a < branches.size(); ++a)
    for (std::size_t b = a; b < branches.size(); ++b)
      s.add_quadratic(branches[a] + 1, branches[b] + 1, BigScalar(1));
  return s;
}

std::vector<std::vector<int>> shortest_paths(const SystemStructure& sys, int input, int output) {
  std::vector<std::vector<int>> paths;
  auto d = relative_order(sys, input, output);
  if (!d) return paths;
  auto level = branch_levels(sys, input);

  // Walk backwards from branches entering the output, stepping to feeders one level lower.
  std::vector<int> rev;
  auto extend = [&](auto&& self, int branch) -> void {
    rev.push_back(branch);
    if (level[branch] == 1) {
      paths.emplace_back(rev.rbegin(), rev.rend());
    } else {
      for (int f : sys.feeders[branch])
        if (level[f] == level[branch] - 1) self(self, f);
    }
    rev.pop_back();
  };
  for (int i = 0; i < sys.n; ++i)
    if (sys.c(output, i) && level[i] == *d) extend(extend, i);
  std::sort(paths.begin(), paths.end());
  return paths;
}

EsqpVerdict verify_esqp(const SystemStructure& sys, int input, int output) {
  EsqpVerdict v;
  v.coeffs = series_coeffs(sys, input, output);
  v.witnesses = shortest_paths(sys, input, output);
  for (const auto& p : v.witnesses) v.expected_f22 += esqp(p);
  v.count_matches = v.coeffs.f0 == BigScalar(v.witnesses.size());
  v.f22_matches = v.coeffs.f22() == v.expected_f22;
  v.pass = v.count_matches && v.f22_matches;
  return v;
}

std::vector<int> reconstruct_single_path(const SystemStructure& sys, int input,
                                         const SeriesCoeffs& sc) {
  if (sc.f0 != 1) return {};
  auto level = branch_levels(sys, input);
  std::vector<int> path;
  const Series f22 = sc.f22();
  for (const auto& [key, c] : f22.quadratic())
    if (key.first == key.second) path.push_back(key.first - 1);
  std::sort(path.begin(), path.end(), [&](int a, int b) { return level[a] < level[b]; });
  return path;
}

}  // namespace twopath
