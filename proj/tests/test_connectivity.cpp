#include <catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <vector>

#include <json.hpp>
#include <lsg/connectivity.hpp>
#include <lsg/graph.hpp>
#include <lsg/latin.hpp>
#include <lsg/rng.hpp>

using namespace lsg;

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

bool connected_after_removal(const Graph& g, std::uint32_t removed) {
  int n = g.order();
  int start = -1, kept = 0;
  for (int v = 0; v < n; ++v)
    if (!(removed & (1u << v))) {
      if (start < 0) start = v;
      ++kept;
    }
  if (kept <= 1) return true;
  std::vector<int> stack{start};
  std::uint32_t seen = 1u << start;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v)) {
      if (removed & (1u << u)) continue;
      if (!(seen & (1u << u))) {
        seen |= 1u << u;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == kept;
}

// Reference kappa: smallest vertex set whose removal disconnects; n-1 for K_n.
int kappa_by_brute_force(const Graph& g) {
  int n = g.order();
  if (!is_connected(g)) return 0;
  int best = n - 1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best) continue;
    if (!connected_after_removal(g, mask)) best = size;
  }
  return best;
}

// Reference lambda: minimum crossing-edge count over bipartitions through 0.
int lambda_by_bipartition(const Graph& g) {
  int n = g.order();
  if (!is_connected(g)) return 0;
  if (n == 1) return 0;
  int best = g.order() * g.order();
  // side enumerates subsets of {1,...,n-1}; vertex 0 joins it, and the full
  // vertex set (empty far side) is skipped.
  for (std::uint32_t side = 0; side + 1 < (1u << (n - 1)); ++side) {
    std::uint32_t s = (side << 1) | 1u;
    int crossing = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (g.has_edge(i, j) && ((s >> i) & 1u) != ((s >> j) & 1u)) ++crossing;
    best = std::min(best, crossing);
  }
  return best;
}

bool has_hamiltonian_by_permutations(const Graph& g) {
  int n = g.order();
  std::vector<int> rest;
  for (int v = 1; v < n; ++v) rest.push_back(v);
  do {
    bool ok = g.has_edge(0, rest.front()) && g.has_edge(rest.back(), 0);
    for (std::size_t i = 0; ok && i + 1 < rest.size(); ++i)
      ok = g.has_edge(rest[i], rest[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

// Reference girth: per removed edge, shortest alternative path + 1.
std::optional<int> girth_by_edge_removal(const Graph& g) {
  int n = g.order();
  int best = -1;
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) {
      if (v < u) continue;
      // BFS u -> v avoiding the edge itself.
      std::vector<int> dist(n, -1);
      std::vector<int> queue{u};
      dist[u] = 0;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        int x = queue[h];
        for (int y : g.neighbors(x)) {
          if (x == u && y == v) continue;
          if (x == v && y == u) continue;
          if (dist[y] < 0) {
            dist[y] = dist[x] + 1;
            queue.push_back(y);
          }
        }
      }
      if (dist[v] >= 0 && (best < 0 || dist[v] + 1 < best)) best = dist[v] + 1;
    }
  if (best < 0) return std::nullopt;
  return best;
}

}  // namespace

TEST_CASE("is_connected on the basics") {
  CHECK(is_connected(Graph(1)));
  CHECK(is_connected(cycle(4)));
  CHECK_FALSE(is_connected(Graph(2)));
  CHECK_FALSE(is_connected(build_graph(cyclic_difference_table(4), {2})));
}

TEST_CASE("vertex connectivity fixed points") {
  CHECK(vertex_connectivity(complete(4)) == 3);
  CHECK(vertex_connectivity(cycle(4)) == 2);
  CHECK(vertex_connectivity(path(5)) == 1);
  CHECK(vertex_connectivity(Graph(3)) == 0);
  CHECK(vertex_connectivity(Graph(1)) == 0);
  CHECK(vertex_connectivity(complete(2)) == 1);
  // Star: removing the hub disconnects.
  Graph star(5);
  for (int leaf = 1; leaf < 5; ++leaf) star.add_edge(0, leaf);
  CHECK(vertex_connectivity(star) == 1);
}

TEST_CASE("edge connectivity fixed points") {
  CHECK(edge_connectivity(cycle(4)) == 2);
  CHECK(edge_connectivity(complete(2)) == 1);
  CHECK(edge_connectivity(Graph(3)) == 0);
  CHECK(edge_connectivity(complete(5)) == 4);
  CHECK(edge_connectivity(path(4)) == 1);
}

TEST_CASE("connectivity caps are enforced") {
  CHECK_THROWS_AS(vertex_connectivity(Graph(257)), std::invalid_argument);
  CHECK_THROWS_AS(edge_connectivity(Graph(257)), std::invalid_argument);
}

TEST_CASE("vertex and edge connectivity match brute force on random models (n <= 10)") {
  Rng rng(1234);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 4 + rng.next_int(7);  // 4..10
    LatinSquare sq = random_latin_square(n, mix_seed(21, rep));
    SymbolSample s = sample_symbols_p(n, 0.45, mix_seed(22, rep));
    Graph g = build_graph(sq, s.symbols);
    REQUIRE(vertex_connectivity(g) == kappa_by_brute_force(g));
    REQUIRE(edge_connectivity(g) == lambda_by_bipartition(g));
  }
}

TEST_CASE("Whitney chain kappa <= lambda <= delta on every report") {
  Rng rng(555);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 5 + rng.next_int(20);
    Graph g = build_graph(random_latin_square(n, mix_seed(31, rep)),
                          sample_symbols_p(n, 0.35, mix_seed(32, rep)).symbols);
    ConnectivityReport r = connectivity_report(g);
    REQUIRE(r.kappa <= r.lambda);
    REQUIRE(r.lambda <= r.delta);
    CHECK(r.kappa_equals_delta == (r.kappa == r.delta));
    CHECK(r.lambda_equals_delta == (r.lambda == r.delta));
    CHECK(r.connected == is_connected(g));
  }
}

TEST_CASE("paired square r=4: kappa stays below the regular multigraph degree") {
  LatinSquare sq = paired_square(4);

  // S={6}: 6 = 2*1+4, so the twin pair at x=1 is adjacent; the simple graph is
  // disconnected (x=3 contributes only a loop), and kappa = 0 <= 2|S|-1.
  Graph g6 = build_graph(sq, {6});
  CHECK_FALSE(is_connected(g6));
  CHECK(g6.has_edge(1, 5));
  CHECK(vertex_connectivity(g6) == 0);
  CHECK(vertex_connectivity(g6) <= 2 * 1 - 1);

  // S={1,6}: twins at x=1 adjacent, graph connected and not complete. The
  // common neighborhood of the twins is a cut, so kappa <= deg(twin)-1, and in
  // particular kappa <= 2|S|-1.
  Graph g = build_graph(sq, {1, 6});
  REQUIRE(is_connected(g));
  REQUIRE(g.has_edge(1, 5));
  DegreeProfile prof = degree_profile(g);
  REQUIRE(prof.max_degree < g.order() - 1);  // not complete
  int kappa = vertex_connectivity(g);
  CHECK(kappa <= g.degree(1) - 1);
  CHECK(kappa <= 2 * 2 - 1);
}

TEST_CASE("Hamiltonian search finds the canonical C4 cycle") {
  auto cyc = hamiltonian_cycle_exact(cycle(4));
  REQUIRE(cyc.has_value());
  CHECK(*cyc == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("Hamiltonian search on K4, the matching, and bad sizes") {
  REQUIRE(hamiltonian_cycle_exact(complete(4)).has_value());
  CHECK_FALSE(hamiltonian_cycle_exact(build_graph(cyclic_difference_table(4), {2})).has_value());
  CHECK_FALSE(hamiltonian_cycle_exact(path(5)).has_value());
  CHECK_THROWS_AS(hamiltonian_cycle_exact(complete(2)), std::invalid_argument);
  CHECK_THROWS_AS(hamiltonian_cycle_exact(Graph(21)), std::invalid_argument);
}

TEST_CASE("returned Hamiltonian cycles are genuine cycles") {
  Rng rng(9);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 4 + rng.next_int(9);
    Graph g = build_graph(random_latin_square(n, mix_seed(41, rep)),
                          sample_symbols_p(n, 0.5, mix_seed(42, rep)).symbols);
    auto cyc = hamiltonian_cycle_exact(g);
    if (!cyc.has_value()) continue;
    REQUIRE(static_cast<int>(cyc->size()) == n);
    std::vector<int> sorted = *cyc;
    std::sort(sorted.begin(), sorted.end());
    for (int v = 0; v < n; ++v) REQUIRE(sorted[v] == v);
    for (int i = 0; i < n; ++i) REQUIRE(g.has_edge((*cyc)[i], (*cyc)[(i + 1) % n]));
  }
}

TEST_CASE("Hamiltonicity verdict matches permutation enumeration (n <= 9)") {
  Rng rng(3030);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 4 + rng.next_int(6);  // 4..9
    Graph g = build_graph(random_latin_square(n, mix_seed(51, rep)),
                          sample_symbols_p(n, 0.35, mix_seed(52, rep)).symbols);
    REQUIRE(hamiltonian_cycle_exact(g).has_value() == has_hamiltonian_by_permutations(g));
  }
}

TEST_CASE("distance metrics fixed points") {
  DistanceMetrics k3 = distance_metrics(complete(3));
  CHECK(k3.diameter == 1);
  CHECK(k3.girth == 3);
  CHECK(k3.triangle_count == 1);

  DistanceMetrics c4 = distance_metrics(cycle(4));
  CHECK(c4.diameter == 2);
  CHECK(c4.girth == 4);
  CHECK(c4.triangle_count == 0);
  CHECK(c4.triangles_at_vertex_0 == 0);

  DistanceMetrics match = distance_metrics(build_graph(cyclic_difference_table(4), {2}));
  CHECK_FALSE(match.diameter.has_value());  // disconnected
  CHECK_FALSE(match.girth.has_value());     // acyclic

  DistanceMetrics k4 = distance_metrics(complete(4));
  CHECK(k4.triangle_count == 4);
  CHECK(k4.triangles_at_vertex_0 == 3);
  CHECK(k4.girth == 3);
}

TEST_CASE("girth and triangle counts agree with independent oracles") {
  Rng rng(600);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 4 + rng.next_int(9);  // 4..12
    Graph g = build_graph(random_latin_square(n, mix_seed(61, rep)),
                          sample_symbols_p(n, 0.4, mix_seed(62, rep)).symbols);
    DistanceMetrics m = distance_metrics(g);
    auto want_girth = girth_by_edge_removal(g);
    REQUIRE(m.girth == want_girth);
    long long tri = 0, tri0 = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
          if (g.has_edge(i, j) && g.has_edge(j, l) && g.has_edge(i, l)) {
            ++tri;
            if (i == 0) ++tri0;
          }
    REQUIRE(m.triangle_count == tri);
    REQUIRE(m.triangles_at_vertex_0 == tri0);
  }
}

TEST_CASE("diameter agrees with Floyd-Warshall on random graphs") {
  Rng rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 4 + rng.next_int(12);
    Graph g = build_graph(random_latin_square(n, mix_seed(81, rep)),
                          sample_symbols_p(n, 0.5, mix_seed(82, rep)).symbols);
    const int inf = 1 << 20;
    std::vector<int> d(static_cast<std::size_t>(n) * n, inf);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0;
    for (int i = 0; i < n; ++i)
      for (int j : g.neighbors(i)) d[static_cast<std::size_t>(i) * n + j] = 1;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          d[static_cast<std::size_t>(i) * n + j] =
              std::min(d[static_cast<std::size_t>(i) * n + j],
                       d[static_cast<std::size_t>(i) * n + k] + d[static_cast<std::size_t>(k) * n + j]);
    int diam = 0;
    bool conn = true;
    for (int v : d)
      if (v >= inf) conn = false;
      else diam = std::max(diam, v);
    DistanceMetrics m = distance_metrics(g);
    if (conn) {
      REQUIRE(m.diameter.has_value());
      REQUIRE(*m.diameter == diam);
    } else {
      REQUIRE_FALSE(m.diameter.has_value());
    }
  }
}

TEST_CASE("paired neighborhood identity: documented cases") {
  CHECK(paired_neighborhood_check(paired_square(2), {1}));
  CHECK(paired_neighborhood_check(paired_square(3), {}));  // vacuous
  CHECK_THROWS_AS(paired_neighborhood_check(cyclic_difference_table(4), {1}),
                  std::invalid_argument);
}

TEST_CASE("paired neighborhood identity holds for all 256 subsets at r=4") {
  LatinSquare sq = paired_square(4);
  for (int mask = 0; mask < 256; ++mask) {
    std::vector<int> subset;
    for (int s = 0; s < 8; ++s)
      if (mask & (1 << s)) subset.push_back(s);
    REQUIRE(paired_neighborhood_check(sq, subset));
  }
}

TEST_CASE("paired family: multigraph degree is 2|S| everywhere; simple projection may dip") {
  Rng rng(88);
  for (int rep = 0; rep < 20; ++rep) {
    int r = 2 + rng.next_int(9);
    LatinSquare sq = paired_square(r);
    SymbolSample s = sample_symbols_p(2 * r, 0.5, mix_seed(91, rep));
    // Regularity lives in the multigraph model, where loops and multiplicities
    // count toward the degree: every row of A sums to 2|S|.
    MultiGraph m = build_multigraph(sq, s.symbols);
    long long want = 2LL * static_cast<long long>(s.symbols.size());
    for (int v = 0; v < m.n; ++v) REQUIRE(m.row_sum(v) == want);
    REQUIRE(paired_neighborhood_check(sq, s.symbols));
  }
  // The simple projection drops loops, so it is genuinely irregular for some
  // subsets: r=4, S={6} leaves two vertices isolated.
  DegreeProfile prof = degree_profile(build_graph(paired_square(4), {6}));
  CHECK(prof.min_degree == 0);
  CHECK(prof.max_degree == 2);
  CHECK_FALSE(prof.regular);
}

TEST_CASE("connectivity report and distance metrics serialize to JSON") {
  nlohmann::json rep = connectivity_report(cycle(4));
  CHECK(rep["kappa"] == 2);
  CHECK(rep["lambda"] == 2);
  CHECK(rep["delta"] == 2);
  CHECK(rep["connected"].get<bool>());
  CHECK(rep["kappa_equals_delta"].get<bool>());

  nlohmann::json dm = distance_metrics(build_graph(cyclic_difference_table(4), {2}));
  CHECK(dm["diameter"] == "inf");
  CHECK(dm["girth"] == "inf");
  nlohmann::json dm2 = distance_metrics(complete(3));
  CHECK(dm2["diameter"] == 1);
  CHECK(dm2["girth"] == 3);
}
