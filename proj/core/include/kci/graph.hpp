#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kci {

using SepsetMap = std::map<std::pair<int, int>, std::vector<int>>;  // key i < j

/// Partially directed graph for a Markov equivalence class. Edge marks live
/// in a pairwise matrix: 0 none, 1 undirected, 2 directed (row -> col).
class Cpdag {
 public:
  Cpdag() = default;
  explicit Cpdag(std::vector<std::string> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<std::string>& nodes() const { return nodes_; }

  bool adjacent(int i, int j) const;
  bool undirected(int i, int j) const;
  bool directed(int i, int j) const;  // i -> j

  void add_undirected(int i, int j);
  void orient(int i, int j);  // i -> j, replacing any mark between i and j
  void remove_edge(int i, int j);

  std::vector<int> neighbors(int i) const;  // any mark
  std::vector<std::pair<int, int>> directed_edges() const;
  std::vector<std::pair<int, int>> undirected_edges() const;  // i < j

  /// (i, k, j) with i -> k <- j, i < j, i and j nonadjacent.
  std::vector<std::array<int, 3>> v_structures() const;

  bool has_directed_cycle() const;

  SepsetMap sepsets;
  std::vector<std::string> conflicts;  // orientation conflicts, as diagnostics

 private:
  std::vector<std::string> nodes_;
  std::vector<std::vector<int>> mark_;
};

/// Orients v-structures from the sepsets, then closes under Meek rules 1-4.
/// Conflicting v-structure orientations leave the edge undirected and record
/// a diagnostic.
Cpdag orient_cpdag(const std::vector<std::vector<bool>>& adjacency,
                   const SepsetMap& sepsets,
                   std::vector<std::string> node_names);

/// CPDAG of a known DAG (adjacency true at (i, j) iff i -> j).
Cpdag cpdag_from_dag(const std::vector<std::vector<bool>>& dag,
                     std::vector<std::string> node_names);

/// Same skeleton and same v-structure set.
bool markov_equivalent(const Cpdag& g1, const Cpdag& g2);

std::string to_dot(const Cpdag& g);
std::string to_json(const Cpdag& g);

}  // namespace kci
