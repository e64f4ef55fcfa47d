// Shared test utilities: exhaustive DAG enumeration, a d-separation oracle,
// and small random-data helpers used across the suites.
#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <utility>
#include <string>
#include <vector>

#include "kci/data.hpp"
#include "kci/kernel.hpp"
#include "kci/pc.hpp"

namespace testsup {

using Dag = std::vector<std::vector<bool>>;  // true at (i, j) iff i -> j

inline bool is_acyclic(const Dag& g) {
  const int k = static_cast<int>(g.size());
  std::vector<int> indegree(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (g[i][j]) ++indegree[j];
  std::vector<int> ready;
  for (int v = 0; v < k; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  int removed = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++removed;
    for (int w = 0; w < k; ++w)
      if (g[v][w] && --indegree[w] == 0) ready.push_back(w);
  }
  return removed == k;
}

/// Every labeled DAG on k nodes: each unordered pair is absent, i->j, or j->i.
inline std::vector<Dag> all_dags(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  const int m = static_cast<int>(pairs.size());
  long total = 1;
  for (int i = 0; i < m; ++i) total *= 3;

  std::vector<Dag> out;
  for (long code = 0; code < total; ++code) {
    Dag g(k, std::vector<bool>(k, false));
    long c = code;
    for (int e = 0; e < m; ++e) {
      const int choice = static_cast<int>(c % 3);
      c /= 3;
      if (choice == 1) g[pairs[e].first][pairs[e].second] = true;
      if (choice == 2) g[pairs[e].second][pairs[e].first] = true;
    }
    if (is_acyclic(g)) out.push_back(std::move(g));
  }
  return out;
}

/// Active-trail reachability (the standard "Bayes ball" rules): returns true
/// iff x and y are d-separated by z in the DAG.
inline bool d_separated(const Dag& g, int x, int y, const std::vector<int>& z) {
  const int k = static_cast<int>(g.size());
  std::vector<bool> in_z(k, false);
  for (int v : z) in_z[v] = true;

  // ancestors of z (including z itself)
  std::vector<bool> anc(k, false);
  std::vector<int> queue = z;
  for (int v : z) anc[v] = true;
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (int p = 0; p < k; ++p)
      if (g[p][v] && !anc[p]) {
        anc[p] = true;
        queue.push_back(p);
      }
  }

  // states: (node, 0 = arrived from a child / start, 1 = arrived from a parent)
  std::vector<std::array<bool, 2>> visited(k, {false, false});
  std::vector<std::pair<int, int>> frontier{{x, 0}};
  while (!frontier.empty()) {
    const auto [v, dir] = frontier.back();
    frontier.pop_back();
    if (visited[v][dir]) continue;
    visited[v][dir] = true;
    if (v == y && !in_z[v]) return false;

    if (dir == 0) {  // travelling upward: pass through unless v is observed
      if (in_z[v]) continue;
      for (int p = 0; p < k; ++p)
        if (g[p][v]) frontier.emplace_back(p, 0);
      for (int c = 0; c < k; ++c)
        if (g[v][c]) frontier.emplace_back(c, 1);
    } else {  // travelling downward into v
      if (!in_z[v])
        for (int c = 0; c < k; ++c)
          if (g[v][c]) frontier.emplace_back(c, 1);
      if (anc[v])  // collider (or ancestor of observed): bounce to parents
        for (int p = 0; p < k; ++p)
          if (g[p][v]) frontier.emplace_back(p, 0);
    }
  }
  return true;
}

/// CI oracle answering from d-separation in a known DAG: p = 1 when
/// separated, p = 0 otherwise. The data argument is ignored.
class PerfectOracle : public kci::CiOracle {
 public:
  explicit PerfectOracle(Dag dag) : dag_(std::move(dag)) {}
  double p_value(const kci::DataMatrix&, int x, int y,
                 const std::vector<int>& z) const override {
    return d_separated(dag_, x, y, z) ? 1.0 : 0.0;
  }
  std::string name() const override { return "dsep"; }

 private:
  Dag dag_;
};

/// Standard-normal data matrix with named columns c0..c{d-1}.
inline kci::DataMatrix random_data(int n, int d, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(n, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = normal(eng);
  std::vector<std::string> names;
  for (int j = 0; j < d; ++j) names.push_back("c" + std::to_string(j));
  return kci::standardize(m, names);
}

/// Random centered PSD kernel (from Gaussian points) for structural tests.
inline kci::CenteredKernel random_kernel(int n, int dims, std::uint64_t seed,
                                         double width = 1.0) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd pts(n, dims);
  for (int j = 0; j < dims; ++j)
    for (int i = 0; i < n; ++i) pts(i, j) = normal(eng);
  return kci::gaussian_centered_kernel(pts, width);
}

}  // namespace testsup
