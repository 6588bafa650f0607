#pragma once

// Cell-pattern counting over a vertex subset A of a Latin square:
//   A' = multiset { L[i][j] : i, j in A, i != j }   (r_x = multiplicity)
//   n2 = unordered pairs {i,j} with L[i][j] == L[j][i]
//   n3 = ordered triples (i,j,k), pairwise distinct, with L[i][j] == L[j][k]
//   n4 = unordered pairs of vertex-disjoint ordered pairs with equal symbols
// These satisfy n2 + n3 + n4 = sum over distinct x in A' of C(r_x, 2):
// classify a pair of equal-symbol cells by how many vertices it shares
// (2 -> n2, 1 -> n3 since row/column uniqueness forbids shared rows or
// columns, 0 -> n4).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lsg/latin.hpp"
#include "lsg/rng.hpp"

namespace lsg {

struct DerivedSymbols {
  std::vector<int> symbols;            // sorted distinct symbols of A'
  std::vector<long long> multiplicity; // parallel to symbols
  long long total_pairs = 0;           // a(a-1) = multiset size
  long long distinct() const { return static_cast<long long>(symbols.size()); }
};

namespace detail {

inline std::vector<int> checked_vertex_subset(const LatinSquare& sq, std::vector<int> a,
                                              const char* who) {
  for (int v : a)
    if (v < 0 || v >= sq.order()) {
      std::ostringstream os;
      os << who << ": vertex " << v << " out of range [0, " << sq.order() << ")";
      throw std::invalid_argument(os.str());
    }
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace detail

inline DerivedSymbols derived_symbols(const LatinSquare& sq, const std::vector<int>& subset) {
  std::vector<int> a = detail::checked_vertex_subset(sq, subset, "derived_symbols");
  std::vector<long long> count(sq.order(), 0);
  for (int i : a)
    for (int j : a)
      if (i != j) ++count[sq.at(i, j)];
  DerivedSymbols d;
  long long sz = static_cast<long long>(a.size());
  d.total_pairs = sz * (sz - 1);
  for (int s = 0; s < sq.order(); ++s)
    if (count[s] > 0) {
      d.symbols.push_back(s);
      d.multiplicity.push_back(count[s]);
    }
  return d;
}

struct PatternCounts {
  std::vector<int> subset;  // the deduplicated, sorted A
  DerivedSymbols derived;
  long long n2 = 0, n3 = 0, n4 = 0;

  long long pair_sum() const {  // sum of C(r_x, 2) over A'
    long long t = 0;
    for (long long r : derived.multiplicity) t += r * (r - 1) / 2;
    return t;
  }
  bool identity_holds() const { return n2 + n3 + n4 == pair_sum(); }
};

inline PatternCounts pattern_counts(const LatinSquare& sq, const std::vector<int>& subset) {
  PatternCounts pc;
  pc.subset = detail::checked_vertex_subset(sq, subset, "pattern_counts");
  pc.derived = derived_symbols(sq, pc.subset);
  const std::vector<int>& a = pc.subset;
  int n = sq.order();
  int asz = static_cast<int>(a.size());
  if (asz <= 1) return pc;

  // n2: symmetric cell pairs.
  for (int u = 0; u < asz; ++u)
    for (int v = u + 1; v < asz; ++v)
      if (sq.at(a[u], a[v]) == sq.at(a[v], a[u])) ++pc.n2;

  // n3 via column lookup: for the ordered pair (j,k) the symbol s = L[j][k]
  // pins the unique row i with L[i][j] = s; the triple (i,j,k) counts when
  // i lies in A and differs from both.
  std::vector<char> in_a(n, 0);
  for (int v : a) in_a[v] = 1;
  // col_row[t][s] = the row holding symbol s in column a[t]
  std::vector<int> col_row(static_cast<std::size_t>(asz) * n);
  for (int t = 0; t < asz; ++t)
    for (int i = 0; i < n; ++i) col_row[static_cast<std::size_t>(t) * n + sq.at(i, a[t])] = i;
  for (int t = 0; t < asz; ++t)
    for (int u = 0; u < asz; ++u) {
      if (t == u) continue;
      int j = a[t], kk = a[u];
      int s = sq.at(j, kk);
      int i = col_row[static_cast<std::size_t>(t) * n + s];
      if (i != j && i != kk && in_a[i]) ++pc.n3;
    }

  // n4: per symbol, all C(r,2) cell pairs minus those sharing a vertex.  A
  // vertex appears in at most two cells of one symbol class (once as row,
  // once as column), so shared-vertex pairs are exactly the vertices with
  // both appearances, double-counting the fully-shared {(i,j),(j,i)} pairs.
  {
    std::vector<std::vector<std::pair<int, int>>> cells_by_symbol(n);
    for (int u = 0; u < asz; ++u)
      for (int v = 0; v < asz; ++v)
        if (u != v) cells_by_symbol[sq.at(a[u], a[v])].push_back({a[u], a[v]});
    std::vector<int> touch(n, 0);
    for (int s = 0; s < n; ++s) {
      const auto& cells = cells_by_symbol[s];
      if (cells.size() < 2) continue;
      long long r = static_cast<long long>(cells.size());
      long long both = 0, swapped = 0;
      for (const auto& [i, j] : cells) {
        ++touch[i];
        ++touch[j];
        if (i < j && sq.at(j, i) == s) ++swapped;
      }
      for (const auto& [i, j] : cells) {
        if (touch[i] == 2) ++both;  // each twice-used vertex counted once
        touch[i] = 0;
        if (touch[j] == 2) ++both;
        touch[j] = 0;
      }
      pc.n4 += r * (r - 1) / 2 - both + swapped;
    }
  }
  return pc;
}

// ---- subset spread (distinct-symbol lower bound) ---------------------------

struct SpreadCertificate {
  std::vector<int> subset;   // B, sorted
  long long b_prime = 0;     // distinct symbols over ordered pairs of B
  long long n2 = 0;          // n2(B)
  double bound = 0;          // b(b-1)(1 - (b-2)/(a-2) - (b-2)(b-3)/(2(a-3))) - n2(B)
  bool met = false;
  bool exhaustive = false;   // false -> sampled ("heuristic") search
  long long checked = 0;     // candidate subsets examined
};

namespace detail {

inline double spread_bound_prefactor(long long a, long long b) {
  // Degenerate small a: denominators vanish; treat the bound as -infinity.
  if (a <= 3) return -std::numeric_limits<double>::infinity();
  double bd = static_cast<double>(b);
  double ad = static_cast<double>(a);
  return bd * (bd - 1) *
         (1.0 - (bd - 2) / (ad - 2) - (bd - 2) * (bd - 3) / (2.0 * (ad - 3)));
}

// C(a,b) saturating at limit+1.
inline long long binomial_capped(long long a, long long b, long long limit) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  long long r = 1;
  for (long long i = 1; i <= b; ++i) {
    if (r > limit) return limit + 1;
    r = r * (a - b + i) / i;
  }
  return std::min(r, limit + 1);
}

}  // namespace detail

// Search A for a size-b subset B whose distinct derived-symbol count reaches
// the pair-spread lower bound.  Exhaustive (lexicographic, first hit wins)
// when C(a,b) <= 1e6, else 1e4 random draws; if nothing reaches the bound the
// best candidate is returned with met=false.
inline SpreadCertificate spread_subset(const LatinSquare& sq, const std::vector<int>& subset,
                                       int b, std::uint64_t seed = 0) {
  std::vector<int> a = detail::checked_vertex_subset(sq, subset, "spread_subset");
  long long asz = static_cast<long long>(a.size());
  if (b < 1 || b > asz) throw std::invalid_argument("spread_subset: need 1 <= b <= |A|");

  std::vector<long long> seen_epoch(sq.order(), -1);
  long long epoch = 0;
  auto evaluate = [&](const std::vector<int>& bset, SpreadCertificate& cert) {
    ++epoch;
    long long distinct = 0, n2 = 0;
    for (std::size_t u = 0; u < bset.size(); ++u)
      for (std::size_t v = 0; v < bset.size(); ++v) {
        if (u == v) continue;
        int s = sq.at(bset[u], bset[v]);
        if (seen_epoch[s] != epoch) {
          seen_epoch[s] = epoch;
          ++distinct;
        }
        if (u < v && s == sq.at(bset[v], bset[u])) ++n2;
      }
    cert.subset = bset;
    cert.b_prime = distinct;
    cert.n2 = n2;
    cert.bound = detail::spread_bound_prefactor(asz, b) - static_cast<double>(n2);
    cert.met = static_cast<double>(distinct) >= cert.bound;
  };

  constexpr long long kExhaustiveLimit = 1000000;
  constexpr long long kSampleBudget = 10000;
  bool exhaustive = detail::binomial_capped(asz, b, kExhaustiveLimit) <= kExhaustiveLimit;

  SpreadCertificate best;
  best.met = false;
  bool have_best = false;
  long long checked = 0;
  SpreadCertificate cur;

  auto consider = [&](const std::vector<int>& bset) {
    evaluate(bset, cur);
    ++checked;
    if (!have_best || (cur.b_prime - cur.bound) > (best.b_prime - best.bound)) {
      best = cur;
      have_best = true;
    }
    return cur.met;
  };

  if (exhaustive) {
    std::vector<int> idx(b);
    for (int i = 0; i < b; ++i) idx[i] = i;
    std::vector<int> bset(b);
    while (true) {
      for (int i = 0; i < b; ++i) bset[i] = a[idx[i]];
      if (consider(bset)) break;
      int i = b - 1;
      while (i >= 0 && idx[i] == asz - b + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < b; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    Rng rng(mix_seed(seed, 0x73707264ULL));
    std::vector<int> bset(b);
    for (long long t = 0; t < kSampleBudget; ++t) {
      std::vector<int> picks = sample_without_replacement(static_cast<int>(asz), b, rng);
      for (int i = 0; i < b; ++i) bset[i] = a[picks[i]];
      if (consider(bset)) break;
    }
  }

  best.exhaustive = exhaustive;
  best.checked = checked;
  if (cur.met) {
    cur.exhaustive = exhaustive;
    cur.checked = checked;
    return cur;
  }
  return best;
}

}  // namespace lsg
