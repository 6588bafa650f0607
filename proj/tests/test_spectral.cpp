#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <json.hpp>
#include <lsg/connectivity.hpp>
#include <lsg/graph.hpp>
#include <lsg/latin.hpp>
#include <lsg/rng.hpp>
#include <lsg/spectral.hpp>

using namespace lsg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

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

}  // namespace

TEST_CASE("Jacobi eigensolver on hand-checkable matrices") {
  // [[2,1],[1,2]] -> {3, 1}
  std::vector<double> two{2, 1, 1, 2};
  std::vector<double> ev = symmetric_eigenvalues(two, 2);
  REQUIRE(ev.size() == 2);
  CHECK_THAT(ev[0], WithinAbs(3.0, 1e-12));
  CHECK_THAT(ev[1], WithinAbs(1.0, 1e-12));

  // Already-diagonal input comes back sorted descending.
  std::vector<double> diag{5, 0, 0, 0, -2, 0, 0, 0, 7};
  ev = symmetric_eigenvalues(diag, 3);
  CHECK_THAT(ev[0], WithinAbs(7.0, 1e-12));
  CHECK_THAT(ev[1], WithinAbs(5.0, 1e-12));
  CHECK_THAT(ev[2], WithinAbs(-2.0, 1e-12));
}

TEST_CASE("Jacobi eigenvalues preserve trace and Frobenius mass on random symmetric matrices") {
  Rng rng(404);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 3 + rng.next_int(30);
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = rng.next_double() * 2 - 1;
        a[static_cast<std::size_t>(i) * n + j] = v;
        a[static_cast<std::size_t>(j) * n + i] = v;
      }
    double trace = 0, frob = 0;
    for (int i = 0; i < n; ++i) trace += a[static_cast<std::size_t>(i) * n + i];
    for (double v : a) frob += v * v;
    std::vector<double> ev = symmetric_eigenvalues(a, n);
    double sum = 0, sq = 0;
    for (double l : ev) {
      sum += l;
      sq += l * l;
    }
    REQUIRE_THAT(sum, WithinAbs(trace, 1e-9));
    REQUIRE_THAT(sq, WithinAbs(frob, 1e-9));
    REQUIRE(std::is_sorted(ev.rbegin(), ev.rend()));
  }
}

TEST_CASE("spectrum of cyclic(3) with multiset {1,1}: T = (J - I)/2") {
  SpectralReport r = spectrum(build_multigraph(cyclic_difference_table(3), {1, 1}));
  REQUIRE(r.eigenvalues.size() == 3);
  CHECK_THAT(r.eigenvalues[0], WithinAbs(1.0, 1e-10));
  CHECK_THAT(r.eigenvalues[1], WithinAbs(-0.5, 1e-10));
  CHECK_THAT(r.eigenvalues[2], WithinAbs(-0.5, 1e-10));
  CHECK_THAT(r.mu, WithinAbs(0.5, 1e-10));
  CHECK(r.degree == 4);  // 2k
}

TEST_CASE("spectrum of cyclic(3) with multiset {0}: loops only, T = I") {
  SpectralReport r = spectrum(build_multigraph(cyclic_difference_table(3), {0}));
  for (double l : r.eigenvalues) CHECK_THAT(l, WithinAbs(1.0, 1e-10));
  CHECK_THAT(r.mu, WithinAbs(1.0, 1e-10));
}

TEST_CASE("spectrum_regular: K4 has mu = 1/3, C4 has mu = 1") {
  SpectralReport k4 = spectrum_regular(complete(4));
  CHECK_THAT(k4.mu, WithinAbs(1.0 / 3.0, 1e-10));
  SpectralReport c4 = spectrum_regular(cycle(4));
  CHECK_THAT(c4.mu, WithinAbs(1.0, 1e-10));
  // C4 is connected with mu = 1: mu < 1 is sufficient, not necessary.
  CHECK(is_connected(cycle(4)));
}

TEST_CASE("spectrum rejects undefined normalizations") {
  CHECK_THROWS_AS(spectrum(build_multigraph(cyclic_difference_table(3), {})),
                  std::invalid_argument);
  Graph irregular(3);
  irregular.add_edge(0, 1);
  CHECK_THROWS_AS(spectrum_regular(irregular), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_regular(Graph(3)), std::invalid_argument);  // 0-regular
}

TEST_CASE("spectral residuals stay tiny on random multigraphs") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 4 + rng.next_int(29);
    LatinSquare sq = random_latin_square(n, mix_seed(3, rep));
    SymbolSample s = sample_symbols_k(n, 3 + rng.next_int(8), mix_seed(4, rep));
    SpectralReport r = spectrum(build_multigraph(sq, s.symbols));
    REQUIRE(r.row_sum_residual <= 1e-9);
    REQUIRE(r.lambda0_residual <= 1e-9);
    REQUIRE(r.mu_residual <= 1e-8);  // mu equals the operator norm of T - J/n
    REQUIRE(r.eigenvalues.back() >= -1.0 - 1e-9);
    if (r.mu < 1.0 - 1e-9) REQUIRE(is_connected(simple_graph(build_multigraph(sq, s.symbols))));
  }
}

TEST_CASE("entropy H: zero at 1/2, frozen value at 3/4, symmetric") {
  CHECK_THAT(entropy_H(0.5), WithinAbs(0.0, 1e-15));
  CHECK_THAT(entropy_H(0.75), WithinRel(0.13081203594113697, 1e-14));
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    double x = 0.01 + 0.98 * rng.next_double();
    REQUIRE_THAT(entropy_H(x), WithinAbs(entropy_H(1 - x), 1e-12));
  }
  CHECK_THROWS_AS(entropy_H(0.0), std::invalid_argument);
  CHECK_THROWS_AS(entropy_H(1.0), std::invalid_argument);
  CHECK_THROWS_AS(entropy_H(-0.5), std::invalid_argument);
}

TEST_CASE("tail bound frozen values at n=64, k=40, eps=1/2") {
  TailBound tb = tail_bound(64, 40, 0.5);
  CHECK_THAT(tb.exact, WithinRel(0.6835529385045603, 1e-12));
  CHECK_THAT(tb.weak, WithinRel(0.8624572158829398, 1e-12));
}

TEST_CASE("tail bound near eps = 1 approaches 2n * 2^-k") {
  TailBound tb = tail_bound(64, 40, 0.999999);
  CHECK_THAT(tb.exact, WithinRel(1.1641532182693481e-10, 1e-3));
}

TEST_CASE("tail bound clamps to 1 and keeps exact <= weak") {
  TailBound small = tail_bound(64, 1, 0.1);
  CHECK(small.exact == 1.0);
  CHECK(small.weak == 1.0);
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    long long n = 1 + rng.next_int(5000);
    long long k = 1 + rng.next_int(100);
    double eps = 0.01 + 0.98 * rng.next_double();
    TailBound tb = tail_bound(n, k, eps);
    REQUIRE(tb.exact <= tb.weak + 1e-15);
    REQUIRE((tb.exact >= 0 && tb.exact <= 1));
  }
  CHECK_THROWS_AS(tail_bound(64, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound(64, 40, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound(64, 40, 1.0), std::invalid_argument);
}

TEST_CASE("edge discrepancy: A = B = V collapses to zero lhs") {
  MultiGraph m = build_multigraph(cyclic_difference_table(5), {1, 2, 2});
  SpectralReport r = spectrum(m);
  std::vector<int> all{0, 1, 2, 3, 4};
  Discrepancy d = edge_discrepancy(m, all, all, r.mu);
  CHECK_THAT(d.lhs, WithinAbs(0.0, 1e-9));
  CHECK(d.holds);
}

TEST_CASE("edge discrepancy on C4 as a multigraph: documented single-vertex case") {
  // cyclic(4) with multiset {1}: i ~ j iff i - j = +-1 mod 4, which is C4 with k=1.
  MultiGraph m = build_multigraph(cyclic_difference_table(4), {1});
  Graph g = simple_graph(m);
  CHECK(g == cycle(4));
  Discrepancy d = edge_discrepancy(m, {0}, {2}, 1.0);
  CHECK_THAT(d.e_ab, WithinAbs(0.0, 1e-12));
  CHECK_THAT(d.expected, WithinAbs(0.5, 1e-12));
  CHECK_THAT(d.lhs, WithinAbs(0.5, 1e-12));
  CHECK_THAT(d.rhs, WithinAbs(2.0, 1e-12));
  CHECK(d.holds);
}

TEST_CASE("edge discrepancy holds for 50 random instances and handles empties") {
  Rng rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 5 + rng.next_int(20);
    LatinSquare sq = random_latin_square(n, mix_seed(10, rep));
    MultiGraph m =
        build_multigraph(sq, sample_symbols_k(n, 2 + rng.next_int(6), mix_seed(11, rep)).symbols);
    double mu = spectrum(m).mu;
    std::vector<int> a = sample_without_replacement(n, 1 + rng.next_int(n), rng);
    std::vector<int> b = sample_without_replacement(n, 1 + rng.next_int(n), rng);
    REQUIRE(edge_discrepancy(m, a, b, mu).holds);
  }
  MultiGraph m = build_multigraph(cyclic_difference_table(4), {1});
  Discrepancy d = edge_discrepancy(m, {}, {0}, 1.0);
  CHECK(d.lhs == 0.0);
  CHECK(d.rhs == 0.0);
  CHECK(d.holds);
  CHECK_THROWS_AS(edge_discrepancy(m, {4}, {0}, 1.0), std::invalid_argument);
}

TEST_CASE("expansion: K4 and C4 expand at eps = 1, the matching does not") {
  ExpansionResult k4 = expansion_check(complete(4), 1.0);
  CHECK(k4.expander);
  CHECK(k4.exhaustive);

  ExpansionResult c4 = expansion_check(cycle(4), 1.0);
  CHECK(c4.expander);
  CHECK(c4.subsets_checked == 10);  // 4 singletons + 6 pairs

  Graph matching = build_graph(cyclic_difference_table(4), {2});
  ExpansionResult bad = expansion_check(matching, 0.5);
  CHECK_FALSE(bad.expander);
  REQUIRE_FALSE(bad.witness.empty());
  // The witness must genuinely fail: count its outside neighborhood.
  std::vector<char> in_w(4, 0);
  for (int v : bad.witness) in_w[v] = 1;
  int outside = 0;
  for (int v = 0; v < 4; ++v) {
    if (in_w[v]) continue;
    for (int u : matching.neighbors(v))
      if (in_w[u]) {
        ++outside;
        break;
      }
  }
  CHECK(static_cast<double>(outside) < 0.5 * static_cast<double>(bad.witness.size()));
}

TEST_CASE("expansion sampling mode engages past 24 vertices") {
  LatinSquare sq = cyclic_difference_table(30);
  Graph g = build_graph(sq, {1, 2, 3, 5, 8});
  ExpansionResult r = expansion_check(g, 0.25, 99);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.subsets_checked <= 10000);
  CHECK_THROWS_AS(expansion_check(g, 0.0), std::invalid_argument);
}

TEST_CASE("Hamiltonicity threshold frozen values and monotone decay") {
  auto t6 = hamiltonicity_threshold(1e6);
  auto t9 = hamiltonicity_threshold(1e9);
  REQUIRE(t6.has_value());
  REQUIRE(t9.has_value());
  CHECK_THAT(*t6, WithinRel(0.0005169567827852289, 1e-12));
  CHECK_THAT(*t9, WithinRel(0.0003998201090769921, 1e-12));
  CHECK(*t9 < *t6);
  CHECK_FALSE(hamiltonicity_threshold(15).has_value());
  CHECK(hamiltonicity_threshold(16).has_value());
}

TEST_CASE("spectral report JSON: full eigenvalue list only up to 128 vertices") {
  nlohmann::json small = spectrum(build_multigraph(cyclic_difference_table(3), {1, 1}));
  REQUIRE(small["eigenvalues"].is_array());
  CHECK(small["eigenvalues"].size() == 3);
  CHECK_THAT(small["mu"].get<double>(), WithinAbs(0.5, 1e-10));

  nlohmann::json big = spectrum(build_multigraph(cyclic_difference_table(129), {1}));
  REQUIRE_FALSE(big.contains("eigenvalues"));
  REQUIRE(big.contains("eigenvalues_summary"));
  CHECK(big["eigenvalues_summary"]["count"] == 129);
  CHECK_THAT(big["eigenvalues_summary"]["lambda0"].get<double>(), WithinAbs(1.0, 1e-9));
  CHECK(big["eigenvalues_summary"].contains("lambda1"));
  CHECK(big["eigenvalues_summary"].contains("lambda_min"));
}
