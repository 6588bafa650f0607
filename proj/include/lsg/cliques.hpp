#pragma once

// Exact maximum clique / independence number at small n (branch-and-bound
// with a greedy-coloring upper bound on bitmask candidate sets), plus the
// greedy procedures: ordered coloring, list coloring with failure point, and
// clique cover by coloring the complement.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lsg/graph.hpp"

namespace lsg {

inline constexpr int kCliqueExactCap = 64;

namespace detail {

struct CliqueSolver {
  int n;
  std::vector<std::uint64_t> adj;
  int best = 0;

  explicit CliqueSolver(const Graph& g) : n(g.order()), adj(g.order(), 0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && g.has_edge(i, j)) adj[i] |= 1ULL << j;
  }

  void expand(std::uint64_t cand, int depth) {
    if (!cand) {
      best = std::max(best, depth);
      return;
    }
    // Greedy-color the candidates; a clique can take at most one vertex per
    // color class, so depth + color is an upper bound along the order.
    int order[kCliqueExactCap];
    int color[kCliqueExactCap];
    int cnt = 0;
    std::uint64_t rest = cand;
    int c = 0;
    while (rest) {
      ++c;
      std::uint64_t avail = rest;
      while (avail) {
        int v = std::countr_zero(avail);
        std::uint64_t vb = 1ULL << v;
        avail &= ~(adj[v] | vb);
        rest &= ~vb;
        order[cnt] = v;
        color[cnt] = c;
        ++cnt;
      }
    }
    std::uint64_t p = cand;
    for (int i = cnt - 1; i >= 0; --i) {
      if (depth + color[i] <= best) return;  // colors ascend along the order
      int v = order[i];
      expand(p & adj[v], depth + 1);
      p &= ~(1ULL << v);
    }
  }
};

}  // namespace detail

inline int clique_number_exact(const Graph& g) {
  if (g.order() > kCliqueExactCap) {
    std::ostringstream os;
    os << "clique_number_exact: n = " << g.order() << " exceeds the exact cap "
       << kCliqueExactCap << "; use sampled/greedy structure metrics instead";
    throw std::invalid_argument(os.str());
  }
  detail::CliqueSolver solver(g);
  std::uint64_t all = g.order() == 64 ? ~0ULL : (1ULL << g.order()) - 1;
  solver.expand(all, 0);
  return solver.best;
}

inline int independence_number_exact(const Graph& g) {
  return clique_number_exact(complement_graph(g));
}

// Least-index greedy coloring along the given vertex order.
inline std::vector<int> greedy_coloring(const Graph& g, const std::vector<int>& ordering) {
  int n = g.order();
  if (static_cast<int>(ordering.size()) != n)
    throw std::invalid_argument("greedy_coloring: ordering size mismatch");
  std::vector<char> seen(n, 0);
  for (int v : ordering) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("greedy_coloring: ordering is not a permutation");
    seen[v] = 1;
  }
  std::vector<int> colors(n, -1);
  std::vector<char> used(n + 1, 0);
  for (int v : ordering) {
    for (int u : g.neighbors(v))
      if (colors[u] >= 0) used[colors[u]] = 1;
    int c = 0;
    while (used[c]) ++c;
    colors[v] = c;
    for (int u : g.neighbors(v))
      if (colors[u] >= 0) used[colors[u]] = 0;
  }
  return colors;
}

inline std::vector<int> greedy_coloring(const Graph& g) {
  std::vector<int> natural(g.order());
  for (int i = 0; i < g.order(); ++i) natural[i] = i;
  return greedy_coloring(g, natural);
}

inline int color_count(const std::vector<int>& colors) {
  int m = -1;
  for (int c : colors) m = std::max(m, c);
  return m + 1;
}

struct ListColoringResult {
  bool success = false;
  std::vector<int> colors;     // -1 where uncolored
  int failed_vertex = -1;      // first vertex whose whole list was blocked
};

// Pick the first usable color from each vertex's list, in order; stop at the
// first vertex whose earlier neighbors cover its entire list.
inline ListColoringResult greedy_list_coloring(const Graph& g,
                                               const std::vector<std::vector<int>>& lists,
                                               const std::vector<int>& ordering) {
  int n = g.order();
  if (static_cast<int>(lists.size()) != n)
    throw std::invalid_argument("greedy_list_coloring: one list per vertex required");
  for (int v = 0; v < n; ++v)
    if (lists[v].empty()) throw std::invalid_argument("greedy_list_coloring: empty list");
  if (static_cast<int>(ordering.size()) != n)
    throw std::invalid_argument("greedy_list_coloring: ordering size mismatch");

  ListColoringResult res;
  res.colors.assign(n, -1);
  for (int v : ordering) {
    int chosen = -1;
    for (int c : lists[v]) {
      bool blocked = false;
      for (int u : g.neighbors(v))
        if (res.colors[u] == c) {
          blocked = true;
          break;
        }
      if (!blocked) {
        chosen = c;
        break;
      }
    }
    if (chosen < 0) {
      res.success = false;
      res.failed_vertex = v;
      return res;
    }
    res.colors[v] = chosen;
  }
  res.success = true;
  return res;
}

inline ListColoringResult greedy_list_coloring(const Graph& g,
                                               const std::vector<std::vector<int>>& lists) {
  std::vector<int> order(g.order());
  for (int v = 0; v < g.order(); ++v) order[v] = v;
  return greedy_list_coloring(g, lists, order);
}

// Clique cover via greedy coloring of the complement; classes come back as
// cliques of g, grouped by color index.
inline std::vector<std::vector<int>> clique_cover_greedy(const Graph& g) {
  std::vector<int> colors = greedy_coloring(complement_graph(g));
  std::vector<std::vector<int>> classes(color_count(colors));
  for (int v = 0; v < g.order(); ++v) classes[colors[v]].push_back(v);
  for (const auto& cls : classes)
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j)
        if (!g.has_edge(cls[i], cls[j]))
          throw validation_error("clique_cover_greedy: class is not a clique");
  return classes;
}

struct StructureReport {
  int n = 0;
  std::optional<int> omega;   // exact, only when n <= 64
  std::optional<int> alpha;   // exact, only when n <= 64
  int chi_greedy = 0;
  int theta_greedy = 0;
};

inline StructureReport structure_report(const Graph& g) {
  StructureReport r;
  r.n = g.order();
  if (g.order() <= kCliqueExactCap) {
    r.omega = clique_number_exact(g);
    r.alpha = independence_number_exact(g);
  }
  r.chi_greedy = color_count(greedy_coloring(g));
  r.theta_greedy = static_cast<int>(clique_cover_greedy(g).size());
  return r;
}

}  // namespace lsg
