#pragma once

// Spectral side: dense symmetric eigendecomposition (cyclic Jacobi), the
// normalized adjacency T = A/(2k) with mu = max(|lambda_1|, |lambda_{n-1}|),
// the same mu recomputed as the spectral norm of B = T - J/n, the entropy
// tail bound on Pr(mu >= eps), edge discrepancy, neighborhood expansion, and
// the spectral Hamiltonicity threshold.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "lsg/graph.hpp"
#include "lsg/rng.hpp"

namespace lsg {

// Eigenvalues of a dense symmetric matrix (row-major, n x n), descending.
// Cyclic-by-row Jacobi; stops when the off-diagonal Frobenius mass drops
// below 1e-12 of the total.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  if (n < 1) throw std::invalid_argument("symmetric_eigenvalues: empty matrix");
  if (a.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("symmetric_eigenvalues: size mismatch");
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  double norm = 0;
  for (double v : a) norm += v * v;
  norm = std::sqrt(norm);
  const double stop = 1e-12 * norm;
  const double skip = stop / n;  // n^2 entries this small cannot exceed stop

  if (norm > 0) {
    for (int sweep = 0; sweep < 64; ++sweep) {
      double off = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) off += 2 * at(i, j) * at(i, j);
      if (std::sqrt(off) <= stop) break;

      for (int p = 0; p < n - 1; ++p)
        for (int q = p + 1; q < n; ++q) {
          double apq = at(p, q);
          if (std::abs(apq) <= skip) continue;
          double theta = (at(q, q) - at(p, p)) / (2 * apq);
          double t;
          if (std::abs(theta) > 1e150)
            t = 1.0 / (2 * theta);  // avoid overflow in theta^2
          else
            t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
          double c = 1.0 / std::sqrt(t * t + 1);
          double s = t * c;
          at(p, p) -= t * apq;
          at(q, q) += t * apq;
          at(p, q) = at(q, p) = 0;
          for (int r = 0; r < n; ++r) {
            if (r == p || r == q) continue;
            double arp = at(r, p), arq = at(r, q);
            at(r, p) = at(p, r) = c * arp - s * arq;
            at(r, q) = at(q, r) = s * arp + c * arq;
          }
        }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

struct SpectralReport {
  int n = 0;
  long long degree = 0;  // normalization: 2k for multigraphs, d for regular graphs
  std::vector<double> eigenvalues;  // of T, descending
  double mu = 0;                    // max(|lambda_1|, |lambda_{n-1}|); 0 when n = 1
  double mu_via_norm = 0;           // largest |eigenvalue| of B = T - J/n
  double mu_residual = 0;           // |mu - mu_via_norm|
  double row_sum_residual = 0;      // max_i |sum_j T_ij - 1|
  double lambda0_residual = 0;      // |lambda_0 - 1|
};

namespace detail {

inline SpectralReport spectral_report_from_T(std::vector<double> T, int n, long long degree) {
  SpectralReport rep;
  rep.n = n;
  rep.degree = degree;
  auto at = [&](int i, int j) { return T[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += at(i, j);
    rep.row_sum_residual = std::max(rep.row_sum_residual, std::abs(s - 1.0));
  }
  std::vector<double> B(T);
  for (double& v : B) v -= 1.0 / n;
  rep.eigenvalues = symmetric_eigenvalues(std::move(T), n);
  rep.lambda0_residual = std::abs(rep.eigenvalues.front() - 1.0);
  rep.mu = n >= 2 ? std::max(std::abs(rep.eigenvalues[1]), std::abs(rep.eigenvalues.back())) : 0.0;
  std::vector<double> beig = symmetric_eigenvalues(std::move(B), n);
  rep.mu_via_norm = std::max(std::abs(beig.front()), std::abs(beig.back()));
  rep.mu_residual = std::abs(rep.mu - rep.mu_via_norm);
  return rep;
}

}  // namespace detail

inline SpectralReport spectrum(const MultiGraph& m) {
  if (m.k < 1)
    throw std::invalid_argument("spectrum: k = 0 leaves the normalized adjacency undefined");
  int n = m.n;
  std::vector<double> T(static_cast<std::size_t>(n) * n);
  double scale = 1.0 / (2.0 * static_cast<double>(m.k));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      T[static_cast<std::size_t>(i) * n + j] = static_cast<double>(m.at(i, j)) * scale;
  return detail::spectral_report_from_T(std::move(T), n, 2 * m.k);
}

// Normalized adjacency of a d-regular simple graph (T = adjacency / d).
// Irregular graphs have no such normalization; analyze them through the
// multigraph model instead.
inline SpectralReport spectrum_regular(const Graph& g) {
  DegreeProfile prof = degree_profile(g);
  if (!prof.regular || prof.min_degree < 1) {
    std::ostringstream os;
    os << "spectrum_regular: graph is " << (prof.regular ? "0-regular" : "irregular")
       << " (degrees " << prof.min_degree << ".." << prof.max_degree
       << "); use the multigraph model for irregular graphs";
    throw std::invalid_argument(os.str());
  }
  int n = g.order();
  std::vector<double> T(static_cast<std::size_t>(n) * n, 0.0);
  double scale = 1.0 / prof.min_degree;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.has_edge(i, j)) T[static_cast<std::size_t>(i) * n + j] = scale;
  return detail::spectral_report_from_T(std::move(T), n, prof.min_degree);
}

// H(x) = x ln(2x) + (1-x) ln(2(1-x)); H(1/2) = 0, symmetric about 1/2.
inline double entropy_H(double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("entropy_H: x must lie in (0,1)");
  return x * std::log(2 * x) + (1 - x) * std::log(2 * (1 - x));
}

struct TailBound {
  double exact = 1;  // min(1, 2n exp(-k H((1+eps)/2)))
  double weak = 1;   // min(1, 2n exp(-k eps^2 / 2))
};

inline TailBound tail_bound(long long n, long long k, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("tail_bound: eps must lie in (0,1)");
  if (k < 1) throw std::invalid_argument("tail_bound: k must be at least 1");
  if (n < 1) throw std::invalid_argument("tail_bound: n must be at least 1");
  TailBound tb;
  double two_n = 2.0 * static_cast<double>(n);
  tb.exact = std::min(1.0, two_n * std::exp(-static_cast<double>(k) * entropy_H((1 + eps) / 2)));
  tb.weak = std::min(1.0, two_n * std::exp(-static_cast<double>(k) * eps * eps / 2));
  return tb;
}

struct Discrepancy {
  double e_ab = 0;      // ordered-pair edge mass between A and B
  double expected = 0;  // (2k/n) |A| |B|
  double lhs = 0;       // |e_ab - expected|
  double rhs = 0;       // 2 k mu sqrt(|A| |B|)
  bool holds = true;
};

// e(A,B) counts ordered pairs, so edges inside the intersection weigh twice.
inline Discrepancy edge_discrepancy(const MultiGraph& m, const std::vector<int>& a_in,
                                    const std::vector<int>& b_in, double mu) {
  auto dedup = [&](std::vector<int> v, const char* who) {
    for (int x : v)
      if (x < 0 || x >= m.n) {
        std::ostringstream os;
        os << "edge_discrepancy: " << who << " vertex " << x << " out of range [0, " << m.n << ")";
        throw std::invalid_argument(os.str());
      }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  std::vector<int> a = dedup(a_in, "A");
  std::vector<int> b = dedup(b_in, "B");
  Discrepancy d;
  if (a.empty() || b.empty()) return d;
  double e = 0;
  for (int x : a)
    for (int y : b) e += static_cast<double>(m.at(x, y));
  double asz = static_cast<double>(a.size());
  double bsz = static_cast<double>(b.size());
  d.e_ab = e;
  d.expected = 2.0 * static_cast<double>(m.k) / m.n * asz * bsz;
  d.lhs = std::abs(e - d.expected);
  d.rhs = 2.0 * static_cast<double>(m.k) * mu * std::sqrt(asz * bsz);
  d.holds = d.lhs <= d.rhs + 1e-9;
  return d;
}

struct ExpansionResult {
  bool expander = false;
  bool exhaustive = false;        // false -> sampled mode
  long long subsets_checked = 0;
  double eps = 0;
  std::vector<int> witness;       // a failing W, empty if none found
};

// |N(W) \ W| >= eps |W| for all W with |W| <= n/2.  Exhaustive when n <= 24,
// otherwise 1e4 sampled subsets.
inline ExpansionResult expansion_check(const Graph& g, double eps, std::uint64_t seed = 0) {
  if (!(eps > 0)) throw std::invalid_argument("expansion_check: eps must be positive");
  int n = g.order();
  ExpansionResult res;
  res.eps = eps;
  res.exhaustive = n <= 24;

  auto outside_count = [&](const std::vector<int>& w) {
    std::vector<std::uint64_t> nb(g.row_words(), 0), wm(g.row_words(), 0);
    for (int v : w) {
      wm[v >> 6] |= 1ULL << (v & 63);
      const std::uint64_t* r = g.row(v);
      for (int t = 0; t < g.row_words(); ++t) nb[t] |= r[t];
    }
    long long c = 0;
    for (int t = 0; t < g.row_words(); ++t) c += std::popcount(nb[t] & ~wm[t]);
    return c;
  };
  auto fails = [&](const std::vector<int>& w) {
    return static_cast<double>(outside_count(w)) < eps * static_cast<double>(w.size()) - 1e-9;
  };

  if (res.exhaustive) {
    std::uint64_t full = n == 64 ? ~0ULL : (1ULL << n) - 1;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
      int size = std::popcount(mask);
      if (size == 0 || 2 * size > n) continue;
      ++res.subsets_checked;
      std::uint64_t nb = 0;
      for (std::uint64_t m2 = mask; m2; m2 &= m2 - 1) nb |= g.row(std::countr_zero(m2))[0];
      long long outside = std::popcount(nb & ~mask);
      if (static_cast<double>(outside) < eps * size - 1e-9) {
        for (std::uint64_t m2 = mask; m2; m2 &= m2 - 1) res.witness.push_back(std::countr_zero(m2));
        res.expander = false;
        return res;
      }
    }
    res.expander = true;
    return res;
  }

  Rng rng(mix_seed(seed, 0x65787061ULL));
  constexpr long long kDraws = 10000;
  for (long long t = 0; t < kDraws; ++t) {
    int size = 1 + rng.next_int(n / 2);
    std::vector<int> w = sample_without_replacement(n, size, rng);
    ++res.subsets_checked;
    if (fails(w)) {
      res.witness = w;
      res.expander = false;
      return res;
    }
  }
  res.expander = true;
  return res;
}

// (ln ln n)^2 / (1000 ln n ln ln ln n); needs ln ln ln n > 0, i.e. n >= 16.
inline std::optional<double> hamiltonicity_threshold(double n) {
  if (!(n >= 16)) return std::nullopt;
  double l1 = std::log(n);
  double l2 = std::log(l1);
  double l3 = std::log(l2);
  if (!(l3 > 0)) return std::nullopt;
  return l2 * l2 / (1000.0 * l1 * l3);
}

inline void to_json(nlohmann::json& j, const SpectralReport& r) {
  j = nlohmann::json{{"n", r.n},
                     {"degree", r.degree},
                     {"mu", r.mu},
                     {"mu_via_norm", r.mu_via_norm},
                     {"mu_residual", r.mu_residual},
                     {"row_sum_residual", r.row_sum_residual},
                     {"lambda0_residual", r.lambda0_residual}};
  if (r.n <= 128) {
    j["eigenvalues"] = r.eigenvalues;
  } else {
    j["eigenvalues_summary"] = {{"lambda0", r.eigenvalues.front()},
                                {"lambda1", r.eigenvalues[1]},
                                {"lambda_min", r.eigenvalues.back()},
                                {"count", r.n}};
  }
}

inline void to_json(nlohmann::json& j, const TailBound& t) {
  j = nlohmann::json{{"exact", t.exact}, {"weak", t.weak}};
}

inline void to_json(nlohmann::json& j, const Discrepancy& d) {
  j = nlohmann::json{{"e_ab", d.e_ab},
                     {"expected", d.expected},
                     {"lhs", d.lhs},
                     {"rhs", d.rhs},
                     {"holds", d.holds}};
}

inline void to_json(nlohmann::json& j, const ExpansionResult& e) {
  j = nlohmann::json{{"expander", e.expander},
                     {"exhaustive", e.exhaustive},
                     {"subsets_checked", e.subsets_checked},
                     {"eps", e.eps},
                     {"witness", e.witness}};
}

}  // namespace lsg
