#pragma once

// Combinatorial substrate shared by the planners: cycle extraction, minimum
// spanning forests, minimum spanning arborescences and min-cost assignment.
// Every routine breaks ties deterministically.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <vector>

#include "core.hpp"

namespace lattice_rearrange {

// A cycle lists cells in move order: the item at cells[j] belongs at
// cells[(j + 1) % size]. Stored over cells, never over labels.
using Cycle = std::vector<int>;

struct CycleSet {
  std::vector<Cycle> cycles;
  std::vector<int> fixed_points;
};

// Cycles of a successor map: next[c - 1] is the destination cell of the item
// at cell c, or 0 (or c itself) when the item stays. Each cycle starts at its
// minimum cell; cycles are ordered by that minimum.
inline CycleSet successor_cycles(std::span<const int> next) {
  CycleSet out;
  const int n = static_cast<int>(next.size());
  std::vector<char> seen(next.size(), 0);
  for (int c = 1; c <= n; ++c) {
    if (seen[c - 1]) continue;
    const int d = next[c - 1];
    if (d == 0 || d == c) {
      seen[c - 1] = 1;
      out.fixed_points.push_back(c);
      continue;
    }
    Cycle cycle;
    for (int x = c; !seen[x - 1]; x = next[x - 1]) {
      seen[x - 1] = 1;
      cycle.push_back(x);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

inline CycleSet permutation_cycles(std::span<const int> pi) {
  if (!is_permutation_of_cells(pi))
    throw rearrange_error("MalformedPermutation", "pi is not a permutation of 1..n");
  return successor_cycles(pi);
}

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

struct WeightedGraph {
  int vertex_count = 0;
  std::vector<WeightedEdge> edges;
  bool directed = false;
};

// Chosen edges are reported as indices into the input graph's edge list.
struct EdgeSelection {
  std::vector<std::size_t> edges;
  double weight = 0.0;
};

namespace detail {

class DisjointSets {
public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

private:
  std::vector<int> parent_;
};

}  // namespace detail

// Kruskal's algorithm. Equal weights are resolved by the smaller
// (min(u,v), max(u,v)) pair, then by edge index.
inline EdgeSelection mst_undirected(const WeightedGraph& g) {
  std::vector<std::size_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t i) {
    const auto& e = g.edges[i];
    return std::tuple(e.weight, std::min(e.u, e.v), std::max(e.u, e.v), i);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  detail::DisjointSets sets(g.vertex_count);
  EdgeSelection out;
  for (std::size_t i : order) {
    const auto& e = g.edges[i];
    if (e.u == e.v) continue;
    if (sets.unite(e.u, e.v)) {
      out.edges.push_back(i);
      out.weight += e.weight;
    }
  }
  return out;
}

namespace detail {

struct Arc {
  int u;
  int v;
  double w;
  std::size_t id;
};

// Chu-Liu/Edmonds by recursive cycle contraction. Returns positions in arcs.
inline std::vector<std::size_t> edmonds(int n, int root, const std::vector<Arc>& arcs) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(static_cast<std::size_t>(n), none);
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    const auto& a = arcs[e];
    if (a.u == a.v || a.v == root) continue;
    auto& b = best[a.v];
    if (b == none || a.w < arcs[b].w || (a.w == arcs[b].w && a.id < arcs[b].id)) b = e;
  }

  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<int> mark(static_cast<std::size_t>(n), -1);
  std::vector<char> on_cycle(static_cast<std::size_t>(n), 0);
  int cycles = 0;
  for (int v = 0; v < n; ++v) {
    int x = v;
    while (x != root && mark[x] == -1) {
      mark[x] = v;
      x = arcs[best[x]].u;
    }
    if (x != root && mark[x] == v && comp[x] == -1) {
      int y = x;
      do {
        comp[y] = cycles;
        on_cycle[y] = 1;
        y = arcs[best[y]].u;
      } while (y != x);
      ++cycles;
    }
  }

  std::vector<std::size_t> chosen;
  if (cycles == 0) {
    for (int v = 0; v < n; ++v)
      if (v != root) chosen.push_back(best[v]);
    return chosen;
  }

  int count = cycles;
  for (int v = 0; v < n; ++v)
    if (comp[v] == -1) comp[v] = count++;

  std::vector<Arc> contracted;
  std::vector<std::size_t> origin;
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    const auto& a = arcs[e];
    const int cu = comp[a.u];
    const int cv = comp[a.v];
    if (cu == cv) continue;
    const double w = on_cycle[a.v] ? a.w - arcs[best[a.v]].w : a.w;
    contracted.push_back({cu, cv, w, a.id});
    origin.push_back(e);
  }

  std::vector<char> entered(static_cast<std::size_t>(n), 0);
  for (std::size_t e : edmonds(count, comp[root], contracted)) {
    chosen.push_back(origin[e]);
    entered[arcs[origin[e]].v] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (on_cycle[v] && !entered[v]) chosen.push_back(best[v]);
  return chosen;
}

}  // namespace detail

// Minimum-weight spanning arborescence rooted at root. Equal-weight
// candidate arcs are resolved by the smaller edge index.
inline EdgeSelection min_arborescence(const WeightedGraph& g, int root) {
  const int n = g.vertex_count;
  if (root < 0 || root >= n) throw rearrange_error("InvalidGraph", "root outside the graph");
  std::vector<std::vector<int>> out_adj(static_cast<std::size_t>(n));
  for (const auto& e : g.edges)
    if (e.u != e.v) out_adj[e.u].push_back(e.v);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : out_adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v])
      throw rearrange_error("Unreachable", "vertex " + std::to_string(v) + " is unreachable from the root");

  std::vector<detail::Arc> arcs;
  arcs.reserve(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    arcs.push_back({g.edges[i].u, g.edges[i].v, g.edges[i].weight, i});

  EdgeSelection out;
  for (std::size_t e : detail::edmonds(n, root, arcs)) out.edges.push_back(arcs[e].id);
  std::sort(out.edges.begin(), out.edges.end());
  for (std::size_t e : out.edges) out.weight += g.edges[e].weight;
  return out;
}

struct Assignment {
  std::vector<int> column_of_row;  // 0-based
  double cost = 0.0;
};

namespace detail {

// Re-routes the row matched to `col` so that `target` becomes its column,
// along tight edges through unfixed rows.
inline bool reroute(int row, int target, int banned, const std::vector<std::vector<int>>& tight,
                    std::vector<int>& row_to_col, std::vector<int>& col_to_row,
                    const std::vector<char>& fixed, std::vector<char>& visited) {
  for (int c : tight[row]) {
    if (c == banned || visited[c]) continue;
    visited[c] = 1;
    if (c == target) {
      row_to_col[row] = c;
      col_to_row[c] = row;
      return true;
    }
    const int next = col_to_row[c];
    if (fixed[next]) continue;
    if (reroute(next, target, banned, tight, row_to_col, col_to_row, fixed, visited)) {
      row_to_col[row] = c;
      col_to_row[c] = row;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Hungarian algorithm with potentials, followed by a pass that selects the
// lexicographically smallest assignment among the optimal ones: optimal
// assignments are exactly the perfect matchings on zero-reduced-cost edges.
inline Assignment min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  Assignment out;
  if (n == 0) return out;
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n)
      throw rearrange_error("InvalidMatrix", "assignment cost matrix must be square");

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n), col_to_row(n);
  for (int j = 1; j <= n; ++j) {
    row_to_col[p[j] - 1] = j - 1;
    col_to_row[j - 1] = p[j] - 1;
  }

  double scale = 1.0;
  for (const auto& row : cost)
    for (double c : row) scale = std::max(scale, std::abs(c));
  const double eps = 1e-9 * scale;
  std::vector<std::vector<int>> tight(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cost[i][j] - u[i + 1] - v[j + 1] <= eps || j == row_to_col[i]) tight[i].push_back(j);

  std::vector<char> fixed(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : tight[i]) {
      if (row_to_col[i] == j) break;
      const int holder = col_to_row[j];
      if (fixed[holder]) continue;
      const int freed = row_to_col[i];
      std::vector<char> visited(n, 0);
      fixed[i] = 1;
      if (detail::reroute(holder, freed, j, tight, row_to_col, col_to_row, fixed, visited)) {
        row_to_col[i] = j;
        col_to_row[j] = i;
        break;
      }
      fixed[i] = 0;
    }
    fixed[i] = 1;
  }

  out.column_of_row = std::move(row_to_col);
  for (int i = 0; i < n; ++i) out.cost += cost[i][out.column_of_row[i]];
  return out;
}

}  // namespace lattice_rearrange
