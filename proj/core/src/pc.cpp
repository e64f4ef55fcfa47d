#include "kci/pc.hpp"

#include <algorithm>
#include <stdexcept>

#include "kci/ci_test.hpp"
#include "kci/pcorr.hpp"

namespace kci {

double KciOracle::p_value(const DataMatrix& data, int x, int y,
                          const std::vector<int>& z) const {
  return ci_test(data, {x}, {y}, z, config_).p_value;
}

double PcorrOracle::p_value(const DataMatrix& data, int x, int y,
                            const std::vector<int>& z) const {
  return partial_correlation_test(data, x, y, z);
}

namespace {

// First size-k subset in lexicographic order, then successors; empty when done.
bool next_subset(std::vector<int>& idx, int pool_size) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == pool_size - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

}  // namespace

Skeleton pc_skeleton(const DataMatrix& data, const CiOracle& oracle, double alpha,
                     int max_cond) {
  const int d = static_cast<int>(data.d());
  if (d < 2) throw std::invalid_argument("pc_skeleton: need at least 2 variables");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("pc_skeleton: alpha must be in (0, 1)");
  if (max_cond < 0) max_cond = d - 2;

  Skeleton sk;
  sk.adjacency.assign(d, std::vector<bool>(d, true));
  for (int i = 0; i < d; ++i) sk.adjacency[i][i] = false;

  for (int level = 0; level <= max_cond; ++level) {
    // PC-stable: all queries at this level see the adjacency frozen at the
    // level start; deletions apply when the level completes.
    const auto frozen = sk.adjacency;
    std::vector<std::pair<int, int>> removals;

    bool any_big_enough = false;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j || !frozen[i][j]) continue;
        // pairs are probed from both sides: adj(i) \ {j} and adj(j) \ {i}
        // give different conditioning pools
        // adj(i) \ {j}
        std::vector<int> pool;
        for (int k = 0; k < d; ++k)
          if (k != i && k != j && frozen[i][k]) pool.push_back(k);
        if (static_cast<int>(pool.size()) < level) continue;
        any_big_enough = true;

        const auto key = std::minmax(i, j);
        if (std::find(removals.begin(), removals.end(),
                      std::make_pair(key.first, key.second)) != removals.end())
          continue;  // already separated at this level

        std::vector<int> idx(level);
        for (int t = 0; t < level; ++t) idx[t] = t;
        bool more = true;
        while (more) {
          std::vector<int> cond;
          cond.reserve(level);
          for (int t : idx) cond.push_back(pool[t]);
          ++sk.queries;
          double p;
          try {
            p = oracle.p_value(data, i, j, cond);
          } catch (const std::exception& e) {
            throw std::runtime_error("pc_skeleton: oracle failed on (" +
                                     data.column_names[i] + ", " + data.column_names[j] +
                                     " | level " + std::to_string(level) + "): " + e.what());
          }
          if (p > alpha) {
            removals.emplace_back(key.first, key.second);
            sk.sepsets[{key.first, key.second}] = cond;
            break;
          }
          more = level > 0 && next_subset(idx, static_cast<int>(pool.size()));
          if (level == 0) more = false;
        }
      }

    for (const auto& [i, j] : removals) {
      sk.adjacency[i][j] = false;
      sk.adjacency[j][i] = false;
    }
    if (!any_big_enough) break;  // no adjacency large enough for the next level
  }
  return sk;
}

Cpdag run_pc(const DataMatrix& data, const CiOracle& oracle, double alpha,
             int max_cond) {
  const Skeleton sk = pc_skeleton(data, oracle, alpha, max_cond);
  return orient_cpdag(sk.adjacency, sk.sepsets, data.column_names);
}

}  // namespace kci
