#pragma once

// Graphs derived from a Latin square and a set/multiset of symbols:
//   simple model   i ~ j  iff  L[i][j] in S or L[j][i] in S  (i != j)
//   multigraph     A[i][j] = occurrences of L[i][j] plus L[j][i] in the
//                  multiset; loops count twice, so every row sums to 2k.
// Simple graphs are stored as packed 64-bit adjacency rows.

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lsg/latin.hpp"
#include "lsg/rng.hpp"

namespace lsg {

class Graph {
 public:
  explicit Graph(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {
    if (n < 1) throw std::invalid_argument("Graph: order must be positive");
  }

  int order() const { return n_; }
  int row_words() const { return words_; }
  const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }

  bool has_edge(int i, int j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1ULL;
  }

  void add_edge(int i, int j) {
    if (i == j) return;  // simple graph: loops discarded
    mut_row(i)[j >> 6] |= 1ULL << (j & 63);
    mut_row(j)[i >> 6] |= 1ULL << (i & 63);
  }

  int degree(int v) const {
    int d = 0;
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
    return d;
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w)
      for (std::uint64_t m = r[w]; m; m &= m - 1)
        out.push_back(w * 64 + std::countr_zero(m));
    return out;
  }

  long long edge_count() const {
    long long total = 0;
    for (int v = 0; v < n_; ++v) total += degree(v);
    return total / 2;
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  std::uint64_t* mut_row(int v) { return bits_.data() + static_cast<std::size_t>(v) * words_; }

  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

struct MultiGraph {
  int n = 0;
  long long k = 0;                // multiset size; every row sums to 2k
  std::vector<long long> weights; // n*n, symmetric, loops on the diagonal

  long long at(int i, int j) const { return weights[static_cast<std::size_t>(i) * n + j]; }
  long long& at(int i, int j) { return weights[static_cast<std::size_t>(i) * n + j]; }

  long long row_sum(int i) const {
    long long s = 0;
    for (int j = 0; j < n; ++j) s += at(i, j);
    return s;
  }
};

// ---- symbol sampling --------------------------------------------------------

struct SymbolSample {
  enum class Mode { subset, multiset };
  Mode mode = Mode::subset;
  double p = 0;       // subset mode parameter
  long long k = 0;    // multiset mode parameter
  std::vector<int> symbols;  // subset: strictly increasing; multiset: sorted draws
  std::uint64_t seed = 0;

  std::vector<int> support() const {
    std::vector<int> s(symbols);
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }
};

// Each symbol of {0,...,n-1} independently with probability p.
inline SymbolSample sample_symbols_p(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_symbols_p: p outside [0,1]");
  if (n < 1) throw std::invalid_argument("sample_symbols_p: n must be positive");
  SymbolSample s;
  s.mode = SymbolSample::Mode::subset;
  s.p = p;
  s.seed = seed;
  Rng rng(seed);
  for (int x = 0; x < n; ++x)
    if (rng.bernoulli(p)) s.symbols.push_back(x);
  return s;
}

// k independent uniform draws with replacement (k may exceed n).
inline SymbolSample sample_symbols_k(int n, long long k, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_symbols_k: n must be positive");
  if (k < 0) throw std::invalid_argument("sample_symbols_k: k must be nonnegative");
  SymbolSample s;
  s.mode = SymbolSample::Mode::multiset;
  s.k = k;
  s.seed = seed;
  Rng rng(seed);
  s.symbols.reserve(static_cast<std::size_t>(k));
  for (long long i = 0; i < k; ++i) s.symbols.push_back(rng.next_int(n));
  std::sort(s.symbols.begin(), s.symbols.end());
  return s;
}

// ---- model construction -----------------------------------------------------

inline void check_symbols(const LatinSquare& sq, const std::vector<int>& symbols, const char* who) {
  for (int s : symbols)
    if (s < 0 || s >= sq.order()) {
      std::ostringstream os;
      os << who << ": symbol " << s << " out of range [0, " << sq.order() << ")";
      throw std::invalid_argument(os.str());
    }
}

inline Graph build_graph(const LatinSquare& sq, const std::vector<int>& subset) {
  check_symbols(sq, subset, "build_graph");
  int n = sq.order();
  std::vector<char> in_set(n, 0);
  for (int s : subset) in_set[s] = 1;
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (in_set[sq.at(i, j)] || in_set[sq.at(j, i)]) g.add_edge(i, j);
  return g;
}

inline MultiGraph build_multigraph(const LatinSquare& sq, const std::vector<int>& multiset) {
  check_symbols(sq, multiset, "build_multigraph");
  int n = sq.order();
  std::vector<long long> count(n, 0);
  for (int s : multiset) ++count[s];
  MultiGraph m;
  m.n = n;
  m.k = static_cast<long long>(multiset.size());
  m.weights.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 2 * count[sq.at(i, i)];
    for (int j = i + 1; j < n; ++j) {
      long long w = count[sq.at(i, j)] + count[sq.at(j, i)];
      m.at(i, j) = w;
      m.at(j, i) = w;
    }
  }
  for (int i = 0; i < n; ++i)
    if (m.row_sum(i) != 2 * m.k) {
      std::ostringstream os;
      os << "build_multigraph: row " << i << " sums to " << m.row_sum(i) << ", expected "
         << 2 * m.k;
      throw validation_error(os.str());
    }
  return m;
}

// Loops dropped, multiplicities collapsed.
inline Graph simple_graph(const MultiGraph& m) {
  Graph g(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      if (m.at(i, j) > 0) g.add_edge(i, j);
  return g;
}

inline Graph complement_graph(const Graph& g) {
  int n = g.order();
  Graph c(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) c.add_edge(i, j);
  return c;
}

struct DegreeProfile {
  int min_degree = 0;
  int max_degree = 0;
  bool regular = false;
  std::vector<int> degrees;
};

inline DegreeProfile degree_profile(const Graph& g) {
  DegreeProfile d;
  d.degrees.resize(g.order());
  for (int v = 0; v < g.order(); ++v) d.degrees[v] = g.degree(v);
  d.min_degree = *std::min_element(d.degrees.begin(), d.degrees.end());
  d.max_degree = *std::max_element(d.degrees.begin(), d.degrees.end());
  d.regular = d.min_degree == d.max_degree;
  return d;
}

// ---- edge-list text format --------------------------------------------------
// Header "n m"; then m lines "i j w", lexicographic with i < j, loops last.

inline void write_edge_list(std::ostream& out, const Graph& g) {
  int n = g.order();
  out << n << ' ' << g.edge_count() << '\n';
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.has_edge(i, j)) out << i << ' ' << j << " 1\n";
}

inline void write_edge_list(std::ostream& out, const MultiGraph& m) {
  long long lines = 0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i; j < m.n; ++j)
      if (m.at(i, j) > 0) ++lines;
  out << m.n << ' ' << lines << '\n';
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      if (m.at(i, j) > 0) out << i << ' ' << j << ' ' << m.at(i, j) << '\n';
  for (int i = 0; i < m.n; ++i)
    if (m.at(i, i) > 0) out << i << ' ' << i << ' ' << m.at(i, i) << '\n';
}

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    std::ostringstream os;
    os << "graph file: line " << lineno << ": " << msg;
    throw validation_error(os.str());
  };
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw validation_error("graph file: empty input");
  long long n = 0, m = 0;
  {
    std::istringstream is(line);
    if (!(is >> n >> m)) fail("expected header 'n m'");
  }
  if (n < 1) fail("vertex count must be positive");
  Graph g(static_cast<int>(n));
  for (long long e = 0; e < m; ++e) {
    if (!next_line()) {
      ++lineno;
      fail("unexpected end of input");
    }
    std::istringstream is(line);
    long long i = 0, j = 0, w = 0;
    if (!(is >> i >> j >> w)) fail("expected 'i j w'");
    if (i < 0 || i >= n || j < 0 || j >= n) fail("vertex index out of range");
    if (i == j) fail("loop not allowed in a simple graph");
    if (w != 1) fail("simple graph expects weight 1");
    g.add_edge(static_cast<int>(i), static_cast<int>(j));
  }
  return g;
}

}  // namespace lsg
