#pragma once

// Exact connectivity invariants at small n: plain connectedness, vertex and
// edge connectivity by unit-capacity max flow (layered augmentation), exact
// Hamiltonian cycle search with degree-2 and reachability pruning, BFS
// diameter/girth/triangle metrics, and the twin-neighborhood check for the
// paired square family.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "lsg/graph.hpp"

namespace lsg {

inline constexpr int kConnectivityCap = 256;
inline constexpr int kHamiltonCap = 20;

inline bool is_connected(const Graph& g) {
  int n = g.order();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n;
}

namespace detail {

// Dinic on unit-ish capacities; supports an early cutoff since callers only
// care about flows below the running minimum.
struct MaxFlow {
  struct Arc {
    int to;
    int cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;
  std::vector<int> level, iter;

  explicit MaxFlow(int nodes) : out(nodes), level(nodes), iter(nodes) {}

  void add_arc(int u, int v, int cap) {
    out[u].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({v, cap});
    out[v].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({u, 0});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : out[v]) {
        const Arc& a = arcs[id];
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < static_cast<int>(out[v].size()); ++i) {
      int id = out[v][i];
      Arc& a = arcs[id];
      if (a.cap > 0 && level[a.to] == level[v] + 1) {
        int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          arcs[id ^ 1].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int run(int s, int t, int cutoff) {
    int flow = 0;
    while (flow < cutoff && bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      int f;
      while (flow < cutoff && (f = dfs(s, t, cutoff - flow)) > 0) flow += f;
    }
    return flow;
  }
};

// Internally-disjoint path count between non-adjacent s,t via vertex
// splitting: v_in = 2v, v_out = 2v+1, unit interior capacity.
inline int vertex_flow(const Graph& g, int s, int t, int cutoff) {
  int n = g.order();
  MaxFlow mf(2 * n);
  for (int v = 0; v < n; ++v) mf.add_arc(2 * v, 2 * v + 1, v == s || v == t ? n : 1);
  for (int i = 0; i < n; ++i)
    for (int j : g.neighbors(i))
      if (i < j) {
        mf.add_arc(2 * i + 1, 2 * j, 1);
        mf.add_arc(2 * j + 1, 2 * i, 1);
      }
  return mf.run(2 * s + 1, 2 * t, cutoff);
}

}  // namespace detail

// Exact vertex connectivity.  Menger over a min-degree pivot: any minimum
// cut either avoids the pivot (caught by pivot-to-nonadjacent flows) or
// contains it, in which case every component of the cut graph holds one of
// the pivot's neighbors (caught by the nonadjacent-neighbor-pair flows).
inline int vertex_connectivity(const Graph& g) {
  int n = g.order();
  if (n > kConnectivityCap)
    throw std::invalid_argument("vertex_connectivity: n exceeds the exact cap 256");
  if (n == 1) return 0;

  int pivot = 0;
  for (int v = 1; v < n; ++v)
    if (g.degree(v) < g.degree(pivot)) pivot = v;

  int best = n - 1;  // complete-graph convention
  for (int t = 0; t < n; ++t)
    if (t != pivot && !g.has_edge(pivot, t))
      best = std::min(best, detail::vertex_flow(g, pivot, t, best));
  std::vector<int> nb = g.neighbors(pivot);
  for (std::size_t x = 0; x < nb.size() && best > 0; ++x)
    for (std::size_t y = x + 1; y < nb.size() && best > 0; ++y)
      if (!g.has_edge(nb[x], nb[y]))
        best = std::min(best, detail::vertex_flow(g, nb[x], nb[y], best));
  return best;
}

// Exact edge connectivity: min cut from vertex 0 to every other vertex with
// unit capacity per edge direction.
inline int edge_connectivity(const Graph& g) {
  int n = g.order();
  if (n > kConnectivityCap)
    throw std::invalid_argument("edge_connectivity: n exceeds the exact cap 256");
  if (n == 1) return 0;
  int best = n;  // any single flow is at most n-1
  for (int t = 1; t < n && best > 0; ++t) {
    detail::MaxFlow mf(n);
    for (int i = 0; i < n; ++i)
      for (int j : g.neighbors(i))
        if (i < j) {
          mf.add_arc(i, j, 1);
          mf.add_arc(j, i, 1);
        }
    best = std::min(best, mf.run(0, t, best));
  }
  return best;
}

// Exact Hamiltonian cycle via backtracking.  Prunings are sound: on any
// completion, an unvisited vertex keeps two cycle-neighbors drawn from the
// unvisited set plus the path endpoint and vertex 0; and all unvisited
// vertices stay reachable from the endpoint without crossing the path.
inline std::optional<std::vector<int>> hamiltonian_cycle_exact(const Graph& g) {
  int n = g.order();
  if (n < 3) throw std::invalid_argument("hamiltonian_cycle_exact: n must be at least 3");
  if (n > kHamiltonCap)
    throw std::invalid_argument("hamiltonian_cycle_exact: n exceeds the exact cap 20");
  for (int v = 0; v < n; ++v)
    if (g.degree(v) < 2) return std::nullopt;

  std::vector<std::uint32_t> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : g.neighbors(i)) adj[i] |= 1u << j;

  std::vector<int> path{0};
  std::uint32_t used = 1;
  const std::uint32_t full = (n == 32 ? ~0u : (1u << n) - 1);

  auto prune = [&](int endpoint) {
    std::uint32_t unvisited = full & ~used;
    // degree-2 feasibility for every unvisited vertex
    for (std::uint32_t m = unvisited; m; m &= m - 1) {
      int u = std::countr_zero(m);
      std::uint32_t allowed = unvisited | (1u << endpoint) | 1u;
      if (std::popcount(adj[u] & allowed & ~(1u << u)) < 2) return true;
    }
    // endpoint must reach every unvisited vertex through unvisited ground
    if (unvisited) {
      std::uint32_t reach = 1u << endpoint;
      std::uint32_t frontier = reach;
      while (frontier) {
        std::uint32_t next = 0;
        for (std::uint32_t m = frontier; m; m &= m - 1)
          next |= adj[std::countr_zero(m)];
        next &= unvisited & ~reach;
        reach |= next;
        frontier = next;
      }
      if ((reach & unvisited) != unvisited) return true;
    }
    return false;
  };

  std::optional<std::vector<int>> found;
  auto extend = [&](auto&& self, int v) -> bool {
    if (static_cast<int>(path.size()) == n) {
      if (adj[v] & 1u) {
        found = path;
        return true;
      }
      return false;
    }
    if (prune(v)) return false;
    for (std::uint32_t m = adj[v] & ~used; m; m &= m - 1) {
      int u = std::countr_zero(m);
      path.push_back(u);
      used |= 1u << u;
      if (self(self, u)) return true;
      used &= ~(1u << u);
      path.pop_back();
    }
    return false;
  };
  extend(extend, 0);
  return found;
}

struct DistanceMetrics {
  std::optional<int> diameter;  // nullopt when disconnected
  std::optional<int> girth;     // nullopt when acyclic
  long long triangle_count = 0;
  long long triangles_at_vertex_0 = 0;
};

inline DistanceMetrics distance_metrics(const Graph& g) {
  int n = g.order();
  DistanceMetrics dm;
  int diameter = 0;
  bool connected = true;
  int girth = -1;

  std::vector<int> dist(n), parent(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    int reached = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : g.neighbors(v)) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          parent[u] = v;
          ++reached;
          q.push(u);
        } else if (u != parent[v]) {
          int cyc = dist[u] + dist[v] + 1;  // closed walk through s
          if (girth < 0 || cyc < girth) girth = cyc;
        }
      }
    }
    if (reached < n) connected = false;
    if (connected)
      for (int v = 0; v < n; ++v) diameter = std::max(diameter, dist[v]);
  }
  if (connected) dm.diameter = diameter;
  if (girth > 0) dm.girth = girth;

  // Triangles: for each edge i < j, count common neighbors k > j.
  for (int i = 0; i < n; ++i) {
    const std::uint64_t* ri = g.row(i);
    for (int j : g.neighbors(i)) {
      if (j <= i) continue;
      const std::uint64_t* rj = g.row(j);
      int jw = j >> 6;
      std::uint64_t up_to_j = (j & 63) == 63 ? ~0ULL : (2ULL << (j & 63)) - 1;
      for (int w = jw; w < g.row_words(); ++w) {
        std::uint64_t mask = ri[w] & rj[w];
        if (w == jw) mask &= ~up_to_j;
        dm.triangle_count += std::popcount(mask);
      }
    }
  }
  // Triangles containing vertex 0: adjacent pairs inside N(0).
  {
    std::vector<int> nb = g.neighbors(0);
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y)
        if (g.has_edge(nb[x], nb[y])) ++dm.triangles_at_vertex_0;
  }
  return dm;
}

// Twin property of the paired family: for every x, the neighborhoods of x
// and x+r agree once the pair edge itself is set aside.
inline bool paired_neighborhood_check(const LatinSquare& sq, const std::vector<int>& subset) {
  if (sq.family() != FamilyTag::paired)
    throw std::invalid_argument("paired_neighborhood_check: square is not from the paired family");
  Graph g = build_graph(sq, subset);
  int n = sq.order();
  int r = n / 2;
  for (int x = 0; x < r; ++x) {
    int a = x, b = x + r;
    for (int w = 0; w < g.row_words(); ++w) {
      std::uint64_t ra = g.row(a)[w];
      std::uint64_t rb = g.row(b)[w];
      if ((b >> 6) == w) ra &= ~(1ULL << (b & 63));
      if ((a >> 6) == w) rb &= ~(1ULL << (a & 63));
      if (ra != rb) return false;
    }
  }
  return true;
}

struct ConnectivityReport {
  bool connected = false;
  int kappa = 0;
  int lambda = 0;
  int delta = 0;
  bool kappa_equals_delta = false;
  bool kappa_equals_delta_minus_one = false;
  bool lambda_equals_delta = false;
};

inline ConnectivityReport connectivity_report(const Graph& g) {
  ConnectivityReport r;
  r.connected = is_connected(g);
  r.kappa = vertex_connectivity(g);
  r.lambda = edge_connectivity(g);
  r.delta = degree_profile(g).min_degree;
  r.kappa_equals_delta = r.kappa == r.delta;
  r.kappa_equals_delta_minus_one = r.kappa == r.delta - 1;
  r.lambda_equals_delta = r.lambda == r.delta;
  return r;
}

inline void to_json(nlohmann::json& j, const ConnectivityReport& r) {
  j = nlohmann::json{{"connected", r.connected},
                     {"kappa", r.kappa},
                     {"lambda", r.lambda},
                     {"delta", r.delta},
                     {"kappa_equals_delta", r.kappa_equals_delta},
                     {"kappa_equals_delta_minus_one", r.kappa_equals_delta_minus_one},
                     {"lambda_equals_delta", r.lambda_equals_delta}};
}

inline void to_json(nlohmann::json& j, const DistanceMetrics& d) {
  j = nlohmann::json{{"triangle_count", d.triangle_count},
                     {"triangles_at_vertex_0", d.triangles_at_vertex_0}};
  if (d.diameter)
    j["diameter"] = *d.diameter;
  else
    j["diameter"] = "inf";
  if (d.girth)
    j["girth"] = *d.girth;
  else
    j["girth"] = "inf";
}

}  // namespace lsg
