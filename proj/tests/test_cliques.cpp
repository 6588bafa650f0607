#include <catch_amalgamated.hpp>

#include <vector>

#include <lsg/cliques.hpp>
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

// Exhaustive subset scan, independent of the branch-and-bound solver.
int clique_by_scan(const Graph& g) {
  int n = g.order();
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = i + 1; j < n && ok; ++j)
        if ((mask & (1u << j)) && !g.has_edge(i, j)) ok = false;
    }
    if (ok) best = size;
  }
  return best;
}

bool proper(const Graph& g, const std::vector<int>& colors) {
  for (int i = 0; i < g.order(); ++i)
    for (int j : g.neighbors(i))
      if (colors[i] == colors[j]) return false;
  return true;
}

}  // namespace

TEST_CASE("clique number fixed points") {
  CHECK(clique_number_exact(complete(3)) == 3);
  CHECK(clique_number_exact(Graph(5)) == 1);
  CHECK(clique_number_exact(cycle(4)) == 2);
  CHECK(clique_number_exact(complete(64)) == 64);
}

TEST_CASE("independence number fixed points and duality") {
  CHECK(independence_number_exact(Graph(5)) == 5);
  CHECK(independence_number_exact(complete(4)) == 1);
  CHECK(independence_number_exact(cycle(4)) == 2);
  CHECK(independence_number_exact(cycle(5)) == 2);
}

TEST_CASE("exact solvers refuse graphs beyond the cap with guidance") {
  CHECK_THROWS_MATCHES(clique_number_exact(Graph(65)), std::invalid_argument,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("sampled/greedy")));
  CHECK_THROWS_AS(independence_number_exact(Graph(65)), std::invalid_argument);
}

TEST_CASE("clique number matches an exhaustive subset scan on random models") {
  Rng rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 5 + rng.next_int(14);  // 5..18
    LatinSquare sq = random_latin_square(n, mix_seed(123, rep));
    SymbolSample s = sample_symbols_p(n, 0.35, mix_seed(321, rep));
    Graph g = build_graph(sq, s.symbols);
    REQUIRE(clique_number_exact(g) == clique_by_scan(g));
    REQUIRE(independence_number_exact(g) == clique_by_scan(complement_graph(g)));
  }
}

TEST_CASE("greedy coloring walks the documented examples") {
  CHECK(color_count(greedy_coloring(complete(3))) == 3);
  CHECK(greedy_coloring(cycle(4)) == std::vector<int>{0, 1, 0, 1});
  CHECK(color_count(greedy_coloring(Graph(4))) == 1);
}

TEST_CASE("greedy coloring is proper and bounded by max degree plus one") {
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 6 + rng.next_int(25);
    LatinSquare sq = random_latin_square(n, mix_seed(7, rep));
    SymbolSample s = sample_symbols_p(n, 0.3, mix_seed(8, rep));
    Graph g = build_graph(sq, s.symbols);
    std::vector<int> colors = greedy_coloring(g);
    REQUIRE(proper(g, colors));
    REQUIRE(color_count(colors) <= degree_profile(g).max_degree + 1);
  }
}

TEST_CASE("greedy coloring accepts custom orderings and validates them") {
  Graph g = cycle(4);
  std::vector<int> order{3, 2, 1, 0};
  std::vector<int> colors = greedy_coloring(g, order);
  CHECK(proper(g, colors));
  CHECK_THROWS_AS(greedy_coloring(g, std::vector<int>{0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(greedy_coloring(g, std::vector<int>{0, 1, 2, 2}), std::invalid_argument);
}

TEST_CASE("list coloring: edgeless succeeds, K2 with identical singletons fails") {
  Graph lone(3);
  ListColoringResult ok = greedy_list_coloring(lone, {{0}, {0}, {0}});
  CHECK(ok.success);
  CHECK(ok.colors == std::vector<int>{0, 0, 0});

  Graph k2 = complete(2);
  ListColoringResult bad = greedy_list_coloring(k2, {{0}, {0}});
  CHECK_FALSE(bad.success);
  CHECK(bad.failed_vertex == 1);
}

TEST_CASE("list coloring C4 with lists {0,1} alternates") {
  ListColoringResult r = greedy_list_coloring(cycle(4), {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  REQUIRE(r.success);
  CHECK(r.colors == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("list coloring validates its lists") {
  Graph g(2);
  CHECK_THROWS_AS(greedy_list_coloring(g, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(greedy_list_coloring(g, {{0}, {}}), std::invalid_argument);
}

TEST_CASE("clique cover fixed points") {
  CHECK(clique_cover_greedy(complete(3)).size() == 1);
  CHECK(clique_cover_greedy(Graph(3)).size() == 3);
  auto cover = clique_cover_greedy(cycle(4));
  REQUIRE(cover.size() == 2);
  CHECK(cover[0] == std::vector<int>{0, 1});
  CHECK(cover[1] == std::vector<int>{2, 3});
}

TEST_CASE("clique cover classes are cliques covering every vertex") {
  Rng rng(5);
  for (int rep = 0; rep < 15; ++rep) {
    int n = 8 + rng.next_int(20);
    Graph g = build_graph(random_latin_square(n, mix_seed(1, rep)),
                          sample_symbols_p(n, 0.5, mix_seed(2, rep)).symbols);
    auto cover = clique_cover_greedy(g);  // throws internally if a class is not a clique
    std::vector<int> hit(n, 0);
    for (const auto& cls : cover)
      for (int v : cls) ++hit[v];
    for (int h : hit) REQUIRE(h == 1);
  }
}

TEST_CASE("structure report combines exact and greedy numbers") {
  StructureReport r = structure_report(cycle(5));
  REQUIRE(r.omega.has_value());
  REQUIRE(r.alpha.has_value());
  CHECK(*r.omega == 2);
  CHECK(*r.alpha == 2);
  CHECK(r.chi_greedy >= 3);  // C5 is not bipartite
  CHECK(r.theta_greedy >= 3);
  // chi_greedy >= n / alpha when alpha is exact.
  CHECK(r.chi_greedy * *r.alpha >= r.n);

  StructureReport big = structure_report(Graph(100));
  CHECK_FALSE(big.omega.has_value());
  CHECK(big.chi_greedy == 1);
}
