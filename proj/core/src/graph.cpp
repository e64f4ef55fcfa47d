#include "kci/graph.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kci {

namespace {
constexpr int kNone = 0, kUndirected = 1, kDirected = 2;
}

Cpdag::Cpdag(std::vector<std::string> nodes) : nodes_(std::move(nodes)) {
  mark_.assign(nodes_.size(), std::vector<int>(nodes_.size(), kNone));
}

bool Cpdag::adjacent(int i, int j) const {
  return i != j && (mark_[i][j] != kNone || mark_[j][i] != kNone);
}
bool Cpdag::undirected(int i, int j) const {
  return i != j && mark_[i][j] == kUndirected;
}
bool Cpdag::directed(int i, int j) const {
  return i != j && mark_[i][j] == kDirected;
}

void Cpdag::add_undirected(int i, int j) {
  if (i == j) throw std::invalid_argument("Cpdag: self-loop");
  mark_[i][j] = mark_[j][i] = kUndirected;
}

void Cpdag::orient(int i, int j) {
  if (i == j) throw std::invalid_argument("Cpdag: self-loop");
  mark_[i][j] = kDirected;
  mark_[j][i] = kNone;
}

void Cpdag::remove_edge(int i, int j) { mark_[i][j] = mark_[j][i] = kNone; }

std::vector<int> Cpdag::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (adjacent(i, j)) out.push_back(j);
  return out;
}

std::vector<std::pair<int, int>> Cpdag::directed_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (directed(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<int, int>> Cpdag::undirected_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (undirected(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::array<int, 3>> Cpdag::v_structures() const {
  std::vector<std::array<int, 3>> out;
  for (int k = 0; k < size(); ++k)
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        if (directed(i, k) && directed(j, k) && !adjacent(i, j))
          out.push_back({i, k, j});
  return out;
}

bool Cpdag::has_directed_cycle() const {
  const int n = size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::function<bool(int)> visit = [&](int u) {
    state[u] = 1;
    for (int v = 0; v < n; ++v) {
      if (!directed(u, v)) continue;
      if (state[v] == 1) return true;
      if (state[v] == 0 && visit(v)) return true;
    }
    state[u] = 2;
    return false;
  };
  for (int u = 0; u < n; ++u)
    if (state[u] == 0 && visit(u)) return true;
  return false;
}

namespace {

// Would orienting i -> j close a directed cycle?
bool creates_cycle(const Cpdag& g, int i, int j) {
  // cycle iff a directed path j ~> i already exists
  const int n = g.size();
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {j};
  seen[j] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u == i) return true;
    for (int v = 0; v < n; ++v)
      if (g.directed(u, v) && !seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return false;
}

using EdgeSet = std::set<std::pair<int, int>>;

bool meek_orient(Cpdag& g, int a, int b, const char* rule,
                 const EdgeSet& frozen) {
  if (!g.undirected(a, b)) return false;
  if (frozen.count({std::min(a, b), std::max(a, b)})) return false;
  if (creates_cycle(g, a, b)) {
    g.conflicts.push_back(std::string(rule) + " orientation " + g.nodes()[a] +
                          "->" + g.nodes()[b] + " skipped: would create a cycle");
    return false;
  }
  g.orient(a, b);
  return true;
}

void meek_closure(Cpdag& g, const EdgeSet& frozen = {}) {
  const int n = g.size();
  bool changed = true;
  while (changed) {
    changed = false;
    // R1: a -> b, b - c, a and c nonadjacent  =>  b -> c
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!g.directed(a, b)) continue;
        for (int c = 0; c < n; ++c)
          if (g.undirected(b, c) && c != a && !g.adjacent(a, c))
            changed |= meek_orient(g, b, c, "R1", frozen);
      }
    // R2: a -> b -> c, a - c  =>  a -> c
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        if (!g.undirected(a, c)) continue;
        for (int b = 0; b < n; ++b)
          if (g.directed(a, b) && g.directed(b, c)) {
            changed |= meek_orient(g, a, c, "R2", frozen);
            break;
          }
      }
    // R3: a - b, a - c, a - d, c -> b, d -> b, c and d nonadjacent  =>  a -> b
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!g.undirected(a, b)) continue;
        bool fired = false;
        for (int c = 0; c < n && !fired; ++c) {
          if (!g.undirected(a, c) || !g.directed(c, b)) continue;
          for (int d = c + 1; d < n && !fired; ++d)
            if (g.undirected(a, d) && g.directed(d, b) && !g.adjacent(c, d))
              fired = meek_orient(g, a, b, "R3", frozen);
        }
        changed |= fired;
      }
    // R4: a - b, a - c, c -> d, d -> b, c and b nonadjacent, a and d adjacent
    //     =>  a -> b
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!g.undirected(a, b)) continue;
        bool fired = false;
        for (int c = 0; c < n && !fired; ++c) {
          if (!g.undirected(a, c) || g.adjacent(c, b)) continue;
          for (int d = 0; d < n && !fired; ++d)
            if (g.directed(c, d) && g.directed(d, b) && g.adjacent(a, d))
              fired = meek_orient(g, a, b, "R4", frozen);
        }
        changed |= fired;
      }
  }
}

}  // namespace

Cpdag orient_cpdag(const std::vector<std::vector<bool>>& adjacency,
                   const SepsetMap& sepsets,
                   std::vector<std::string> node_names) {
  const int n = static_cast<int>(adjacency.size());
  if (node_names.empty())
    for (int i = 0; i < n; ++i) node_names.push_back("v" + std::to_string(i));

  Cpdag g(std::move(node_names));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adjacency[i][j]) g.add_undirected(i, j);

  // v-structures: i -> k <- j for nonadjacent i, j with k outside sepset(i, j)
  std::set<std::pair<int, int>> wants;  // directed marks requested
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (i == k || j == k) continue;
        if (!g.adjacent(i, k) || !g.adjacent(j, k) || g.adjacent(i, j)) continue;
        const auto it = sepsets.find({i, j});
        if (it == sepsets.end()) continue;
        const auto& s = it->second;
        if (std::find(s.begin(), s.end(), k) == s.end()) {
          wants.insert({i, k});
          wants.insert({j, k});
        }
      }

  EdgeSet frozen;  // conflicted edges stay undirected through Meek closure
  for (const auto& [i, k] : wants) {
    if (wants.count({k, i})) {
      if (i < k) {
        g.conflicts.push_back("conflicting v-structure orientations between " +
                              g.nodes()[i] + " and " + g.nodes()[k] +
                              "; edge left undirected");
        frozen.insert({i, k});
      }
      continue;
    }
    g.orient(i, k);
  }

  meek_closure(g, frozen);
  g.sepsets = sepsets;
  return g;
}

Cpdag cpdag_from_dag(const std::vector<std::vector<bool>>& dag,
                     std::vector<std::string> node_names) {
  const int n = static_cast<int>(dag.size());
  if (node_names.empty())
    for (int i = 0; i < n; ++i) node_names.push_back("v" + std::to_string(i));

  Cpdag g(std::move(node_names));
  auto adj = [&](int i, int j) { return dag[i][j] || dag[j][i]; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adj(i, j)) g.add_undirected(i, j);

  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (i != k && j != k && dag[i][k] && dag[j][k] && !adj(i, j)) {
          g.orient(i, k);
          g.orient(j, k);
        }

  meek_closure(g);
  return g;
}

bool markov_equivalent(const Cpdag& g1, const Cpdag& g2) {
  if (g1.nodes() != g2.nodes())
    throw std::invalid_argument("markov_equivalent: node sets differ");
  const int n = g1.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g1.adjacent(i, j) != g2.adjacent(i, j)) return false;
  auto v1 = g1.v_structures(), v2 = g2.v_structures();
  std::sort(v1.begin(), v1.end());
  std::sort(v2.begin(), v2.end());
  return v1 == v2;
}

std::string to_dot(const Cpdag& g) {
  std::ostringstream os;
  os << "graph {\n";
  for (const auto& name : g.nodes()) os << "  \"" << name << "\";\n";
  for (const auto& [i, j] : g.directed_edges())
    os << "  \"" << g.nodes()[i] << "\" -- \"" << g.nodes()[j]
       << "\" [dir=forward];\n";
  for (const auto& [i, j] : g.undirected_edges())
    os << "  \"" << g.nodes()[i] << "\" -- \"" << g.nodes()[j] << "\";\n";
  os << "}\n";
  return os.str();
}

std::string to_json(const Cpdag& g) {
  nlohmann::json j;
  j["nodes"] = g.nodes();
  auto edges = nlohmann::json::array();
  for (const auto& [a, b] : g.directed_edges())
    edges.push_back({{"from", g.nodes()[a]}, {"to", g.nodes()[b]}});
  j["directed_edges"] = edges;
  auto uedges = nlohmann::json::array();
  for (const auto& [a, b] : g.undirected_edges())
    uedges.push_back({g.nodes()[a], g.nodes()[b]});
  j["undirected_edges"] = uedges;
  auto sep = nlohmann::json::array();
  for (const auto& [pair, s] : g.sepsets) {
    nlohmann::json names = nlohmann::json::array();
    for (int v : s) names.push_back(g.nodes()[v]);
    sep.push_back({{"x", g.nodes()[pair.first]},
                   {"y", g.nodes()[pair.second]},
                   {"sepset", names}});
  }
  j["sepsets"] = sep;
  j["conflicts"] = g.conflicts;
  return j.dump(2);
}

}  // namespace kci
