#pragma once

// Latin squares of order n over symbols {0,...,n-1}: validation, structured
// families (cyclic difference table, group division/multiplication tables,
// a paired construction over Z_{2r}), uniform-ish random squares via the
// incidence-cube +-1 walk, and a plain text format.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsg/rng.hpp"

namespace lsg {

// Raised when input data breaks a structural invariant (as opposed to a
// caller passing nonsensical parameters, which gets std::invalid_argument).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kMaxOrder = 4096;  // dense n x n storage cap

enum class FamilyTag {
  user,
  cyclic,
  group_division,
  group_multiplication,
  paired,
  random_walk,
};

inline const char* family_tag_name(FamilyTag t) {
  switch (t) {
    case FamilyTag::user: return "user";
    case FamilyTag::cyclic: return "cyclic";
    case FamilyTag::group_division: return "group-division";
    case FamilyTag::group_multiplication: return "group-multiplication";
    case FamilyTag::paired: return "paired-example";
    case FamilyTag::random_walk: return "random";
  }
  return "user";
}

class LatinSquare {
 public:
  // Validates on construction; every square in the library went through here.
  LatinSquare(int n, std::vector<int> cells, FamilyTag tag = FamilyTag::user)
      : n_(n), cells_(std::move(cells)), tag_(tag) {
    validate();
  }

  explicit LatinSquare(const std::vector<std::vector<int>>& rows, FamilyTag tag = FamilyTag::user)
      : n_(static_cast<int>(rows.size())), tag_(tag) {
    cells_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      if (static_cast<int>(rows[i].size()) != n_) {
        std::ostringstream os;
        os << "latin square: row " << i << " has " << rows[i].size() << " entries, expected " << n_;
        throw validation_error(os.str());
      }
      cells_.insert(cells_.end(), rows[i].begin(), rows[i].end());
    }
    validate();
  }

  int order() const { return n_; }
  FamilyTag family() const { return tag_; }
  int at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * n_ + c]; }
  const std::vector<int>& cells() const { return cells_; }

  bool operator==(const LatinSquare& o) const { return n_ == o.n_ && cells_ == o.cells_; }

 private:
  void validate() const {
    if (n_ < 1) throw validation_error("latin square: order must be at least 1");
    if (n_ > kMaxOrder) {
      std::ostringstream os;
      os << "latin square: order " << n_ << " exceeds cap " << kMaxOrder;
      throw validation_error(os.str());
    }
    if (cells_.size() != static_cast<std::size_t>(n_) * n_) {
      std::ostringstream os;
      os << "latin square: " << cells_.size() << " cells for order " << n_;
      throw validation_error(os.str());
    }
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) {
        int v = at(r, c);
        if (v < 0 || v >= n_) {
          std::ostringstream os;
          os << "latin square: symbol " << v << " at row " << r << ", column " << c
             << " out of range [0, " << n_ << ")";
          throw validation_error(os.str());
        }
      }
    std::vector<int> seen(n_, -1);
    for (int r = 0; r < n_; ++r) {
      std::fill(seen.begin(), seen.end(), -1);
      for (int c = 0; c < n_; ++c) {
        int v = at(r, c);
        if (seen[v] >= 0) {
          std::ostringstream os;
          os << "latin square: row " << r << " repeats symbol " << v << " (columns " << seen[v]
             << " and " << c << ")";
          throw validation_error(os.str());
        }
        seen[v] = c;
      }
    }
    for (int c = 0; c < n_; ++c) {
      std::fill(seen.begin(), seen.end(), -1);
      for (int r = 0; r < n_; ++r) {
        int v = at(r, c);
        if (seen[v] >= 0) {
          std::ostringstream os;
          os << "latin square: column " << c << " repeats symbol " << v << " (rows " << seen[v]
             << " and " << r << ")";
          throw validation_error(os.str());
        }
        seen[v] = r;
      }
    }
  }

  int n_;
  std::vector<int> cells_;
  FamilyTag tag_;
};

// L[x][y] = x - y (mod n): the division table of Z_n.
inline LatinSquare cyclic_difference_table(int n) {
  if (n < 1 || n > kMaxOrder) throw std::invalid_argument("cyclic_difference_table: bad order");
  std::vector<int> cells(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) cells[static_cast<std::size_t>(x) * n + y] = ((x - y) % n + n) % n;
  return LatinSquare(n, std::move(cells), FamilyTag::cyclic);
}

// Finite groups assembled from cyclic, elementary-abelian and dihedral
// factors.  Elements are indexed 0..order-1 with the identity at 0; a direct
// product uses mixed-radix indexing, first factor most significant.
struct GroupSpec {
  enum class Kind { cyclic, elementary_abelian, dihedral };

  struct Factor {
    Kind kind = Kind::cyclic;
    int a = 1;  // cyclic order n | base b | dihedral m
    int e = 1;  // elementary-abelian exponent

    long long order() const {
      switch (kind) {
        case Kind::cyclic: return a;
        case Kind::elementary_abelian: {
          long long o = 1;
          for (int i = 0; i < e; ++i) o *= a;
          return o;
        }
        case Kind::dihedral: return 2LL * a;
      }
      return 1;
    }
  };

  std::vector<Factor> factors;

  static GroupSpec cyclic(int n) {
    check_positive(n, "cyclic order");
    return GroupSpec{{Factor{Kind::cyclic, n, 1}}};
  }
  static GroupSpec elementary_abelian(int base, int exponent) {
    check_positive(base, "elementary-abelian base");
    check_positive(exponent, "elementary-abelian exponent");
    if (!is_prime(base)) throw std::invalid_argument("elementary-abelian base must be prime");
    return GroupSpec{{Factor{Kind::elementary_abelian, base, exponent}}};
  }
  static GroupSpec dihedral(int m) {
    check_positive(m, "dihedral parameter");
    return GroupSpec{{Factor{Kind::dihedral, m, 1}}};
  }
  static GroupSpec product(std::vector<GroupSpec> parts) {
    GroupSpec g;
    for (auto& p : parts)
      g.factors.insert(g.factors.end(), p.factors.begin(), p.factors.end());
    if (g.factors.empty()) throw std::invalid_argument("group product: no factors");
    return g;
  }

  long long order() const {
    long long o = 1;
    for (const auto& f : factors) {
      o *= f.order();
      if (o > kMaxOrder) return o;  // caller checks the cap; avoid overflow spirals
    }
    return o;
  }

  // Group operation / inverse on element indices.
  int op(int x, int y) const {
    std::vector<int> xs = decompose(x), ys = decompose(y);
    for (std::size_t i = 0; i < factors.size(); ++i) xs[i] = factor_op(factors[i], xs[i], ys[i]);
    return compose(xs);
  }
  int inverse(int x) const {
    std::vector<int> xs = decompose(x);
    for (std::size_t i = 0; i < factors.size(); ++i) xs[i] = factor_inverse(factors[i], xs[i]);
    return compose(xs);
  }

 private:
  static void check_positive(int v, const char* what) {
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be positive");
  }
  static bool is_prime(int b) {
    if (b < 2) return false;
    for (int d = 2; d * d <= b; ++d)
      if (b % d == 0) return false;
    return true;
  }

  std::vector<int> decompose(int x) const {
    std::vector<int> parts(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      int o = static_cast<int>(factors[i].order());
      parts[i] = x % o;
      x /= o;
    }
    return parts;
  }
  int compose(const std::vector<int>& parts) const {
    long long x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) x = x * factors[i].order() + parts[i];
    return static_cast<int>(x);
  }

  // Dihedral of order 2m: element (a, i) = s^a r^i at index a*m + i, with
  // s r s = r^-1.  Then (a,i)(b,j) = (a xor b, j + (-1)^b i).
  static int factor_op(const Factor& f, int x, int y) {
    switch (f.kind) {
      case Kind::cyclic: return (x + y) % f.a;
      case Kind::elementary_abelian: {
        int r = 0, scale = 1;
        for (int i = 0; i < f.e; ++i) {
          r += scale * ((x % f.a + y % f.a) % f.a);
          x /= f.a;
          y /= f.a;
          scale *= f.a;
        }
        return r;
      }
      case Kind::dihedral: {
        int m = f.a;
        int ax = x / m, ix = x % m, ay = y / m, iy = y % m;
        int a = ax ^ ay;
        int i = ay == 0 ? (ix + iy) % m : (iy - ix + m) % m;
        return a * m + i;
      }
    }
    return 0;
  }
  static int factor_inverse(const Factor& f, int x) {
    switch (f.kind) {
      case Kind::cyclic: return (f.a - x) % f.a;
      case Kind::elementary_abelian: {
        int r = 0, scale = 1;
        for (int i = 0; i < f.e; ++i) {
          r += scale * ((f.a - x % f.a) % f.a);
          x /= f.a;
          scale *= f.a;
        }
        return r;
      }
      case Kind::dihedral: {
        int m = f.a;
        int ax = x / m, ix = x % m;
        return ax == 0 ? (m - ix) % m : x;  // reflections are involutions
      }
    }
    return 0;
  }
};

// Grammar: "cyclic(N)", "ea(B,E)" (elementary abelian), "dihedral(M)",
// factors joined with 'x', e.g. "cyclic(2)xdihedral(4)".  Whitespace ignored.
inline GroupSpec parse_group_spec(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("group spec: empty string");

  std::vector<GroupSpec> parts;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t open = s.find('(', pos);
    std::size_t close = s.find(')', pos);
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw std::invalid_argument("group spec: expected name(args) at '" + s.substr(pos) + "'");
    std::string name = s.substr(pos, open - pos);
    std::string args = s.substr(open + 1, close - open - 1);
    auto parse_int = [&](const std::string& t) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(t, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("group spec: bad integer '" + t + "'");
      }
      if (used != t.size()) throw std::invalid_argument("group spec: bad integer '" + t + "'");
      return v;
    };
    if (name == "cyclic") {
      parts.push_back(GroupSpec::cyclic(parse_int(args)));
    } else if (name == "ea" || name == "elementary_abelian") {
      std::size_t comma = args.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("group spec: ea needs two arguments, e.g. ea(2,3)");
      parts.push_back(GroupSpec::elementary_abelian(parse_int(args.substr(0, comma)),
                                                    parse_int(args.substr(comma + 1))));
    } else if (name == "dihedral") {
      parts.push_back(GroupSpec::dihedral(parse_int(args)));
    } else {
      throw std::invalid_argument("group spec: unknown factor '" + name +
                                  "' (expected cyclic, ea, dihedral)");
    }
    pos = close + 1;
    if (pos < s.size()) {
      if (s[pos] != 'x')
        throw std::invalid_argument("group spec: expected 'x' between factors");
      ++pos;
    }
  }
  GroupSpec g = GroupSpec::product(std::move(parts));
  if (g.order() > kMaxOrder) {
    std::ostringstream os;
    os << "group spec: order " << g.order() << " exceeds cap " << kMaxOrder;
    throw std::invalid_argument(os.str());
  }
  return g;
}

enum class TableMode { division, multiplication };

// division: L[x][y] = x * y^-1 (adjacency from a symbol set S means a Cayley
// graph on S united with S^-1).  multiplication: L[x][y] = x * y.
inline LatinSquare group_table(const GroupSpec& g, TableMode mode) {
  long long n = g.order();
  if (n < 1 || n > kMaxOrder) {
    std::ostringstream os;
    os << "group_table: order " << n << " outside [1, " << kMaxOrder << "]";
    throw std::invalid_argument(os.str());
  }
  int ni = static_cast<int>(n);
  std::vector<int> inv(ni);
  for (int y = 0; y < ni; ++y) inv[y] = g.inverse(y);
  std::vector<int> cells(static_cast<std::size_t>(ni) * ni);
  for (int x = 0; x < ni; ++x)
    for (int y = 0; y < ni; ++y)
      cells[static_cast<std::size_t>(x) * ni + y] =
          mode == TableMode::division ? g.op(x, inv[y]) : g.op(x, y);
  return LatinSquare(ni, std::move(cells),
                     mode == TableMode::division ? FamilyTag::group_division
                                                 : FamilyTag::group_multiplication);
}

// Order-2r square on pairs (x, s) in Z_r x Z_2, indexed x + s*r, built from
// addition mod 2r with an r-offset that depends on the strand bits and on
// whether x <= y.  Rows x and x+r agree outside columns {x, x+r}, which makes
// vertices x and x+r twins in any derived graph (see
// paired_neighborhood_check).
inline LatinSquare paired_square(int r) {
  if (r < 2 || 2 * r > kMaxOrder)
    throw std::invalid_argument("paired_square: r must be in [2, 2048]");
  int n = 2 * r;
  std::vector<int> cells(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    int x = a % r, s = a / r;
    for (int b = 0; b < n; ++b) {
      int y = b % r, t = b / r;
      int base = (x + y) % n;
      bool offset;
      if (s == t)
        offset = !(x <= y);  // same strand: plain sum on x <= y
      else
        offset = (x <= y);  // opposite strands: offset on x <= y
      cells[static_cast<std::size_t>(a) * n + b] = offset ? (base + r) % n : base;
    }
  }
  return LatinSquare(n, std::move(cells), FamilyTag::paired);
}

namespace detail {

// One +-1 move on the incidence cube.  Shared by the proper and improper
// cases; (x, y, z, zp) have already been chosen, with f(x,y,z) <= 0 going up
// and f(x,y,zp) = 1 going down.
struct PlusMinusWalk {
  int n;
  std::vector<int> sym;  // sym[x*n+y]; stale at the improper cell
  bool improper = false;
  int ix = -1, iy = -1;   // improper cell
  int pos1 = -1, pos2 = -1, neg = -1;

  explicit PlusMinusWalk(const LatinSquare& start)
      : n(start.order()), sym(start.cells()) {}

  int& cell(int x, int y) { return sym[static_cast<std::size_t>(x) * n + y]; }

  void step(Rng& rng) {
    int x, y, z, zp;
    if (!improper) {
      x = rng.next_int(n);
      y = rng.next_int(n);
      z = rng.next_int(n - 1);
      if (z >= cell(x, y)) ++z;  // uniform over symbols != current
      zp = cell(x, y);
    } else {
      x = ix;
      y = iy;
      z = neg;
      zp = rng.next_int(2) == 0 ? pos1 : pos2;
    }

    // Row x: columns carrying symbol z (excluding the chosen cell).  Proper
    // state has exactly one, improper exactly two.
    int yp = pick_line(rng, /*row=*/true, x, y, z);
    int xp = pick_line(rng, /*row=*/false, y, x, z);

    // Settle the chosen cell first: it keeps only z (proper pick) or, in the
    // improper case, the positive symbol that was not pushed down.
    if (!improper)
      cell(x, y) = z;
    else
      cell(x, y) = zp == pos1 ? pos2 : pos1;
    cell(x, yp) = zp;
    cell(xp, y) = zp;

    int w = cell(xp, yp);
    if (w == zp) {
      cell(xp, yp) = z;
      improper = false;
    } else {
      // f(xp,yp,zp) went to -1: two positives {w, z}, one negative zp.
      improper = true;
      ix = xp;
      iy = yp;
      pos1 = w;
      pos2 = z;
      neg = zp;
    }
  }

  // Scan a row (or column) for symbol z, skipping the pivot cell, and pick
  // uniformly among the hits.
  int pick_line(Rng& rng, bool row, int fixed, int skip, int z) {
    int hit1 = -1, hit2 = -1;
    for (int t = 0; t < n; ++t) {
      if (t == skip) continue;
      int v = row ? cell(fixed, t) : cell(t, fixed);
      if (v == z) {
        (hit1 < 0 ? hit1 : hit2) = t;
        if (hit2 >= 0) break;
      }
    }
    if (hit2 < 0) return hit1;
    return rng.next_int(2) == 0 ? hit1 : hit2;
  }
};

}  // namespace detail

// Random square by the +-1 incidence walk: start from the cyclic table, take
// 10*n^3 moves, then keep moving until the state is proper again.
inline LatinSquare random_latin_square(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxOrder) throw std::invalid_argument("random_latin_square: bad order");
  if (n == 1) return LatinSquare(1, {0}, FamilyTag::random_walk);
  detail::PlusMinusWalk walk(cyclic_difference_table(n));
  Rng rng(mix_seed(seed, 0x6a6d77616c6bULL));
  long long burn = 10LL * n * n * n;
  for (long long i = 0; i < burn; ++i) walk.step(rng);
  while (walk.improper) walk.step(rng);
  return LatinSquare(n, std::move(walk.sym), FamilyTag::random_walk);
}

// For symbol s: row_map[i] is the unique column j with L[i][j] = s, and
// col_map[j] the unique row i.  The two maps are mutually inverse.
struct SymbolPermutation {
  int symbol = 0;
  std::vector<int> row_map;
  std::vector<int> col_map;
};

inline SymbolPermutation symbol_permutation(const LatinSquare& sq, int s) {
  int n = sq.order();
  if (s < 0 || s >= n) throw std::invalid_argument("symbol_permutation: symbol out of range");
  SymbolPermutation perm;
  perm.symbol = s;
  perm.row_map.assign(n, -1);
  perm.col_map.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sq.at(i, j) == s) {
        perm.row_map[i] = j;
        perm.col_map[j] = i;
      }
  return perm;
}

// ---- text format ----------------------------------------------------------
// Line 1: order n.  Lines 2..n+1: n whitespace-separated symbols each.
// Readers accept any alphabet of n distinct integers and re-index it to
// 0..n-1 by rank before validating.

inline void write_square(std::ostream& out, const LatinSquare& sq) {
  int n = sq.order();
  out << n << '\n';
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out << sq.at(r, c) << (c + 1 == n ? '\n' : ' ');
  }
}

inline LatinSquare read_square(std::istream& in, FamilyTag tag = FamilyTag::user) {
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::string& target) {
    while (std::getline(in, target)) {
      ++lineno;
      if (target.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line(line)) throw validation_error("square file: empty input");
  int n = 0;
  {
    std::istringstream is(line);
    if (!(is >> n)) {
      std::ostringstream os;
      os << "square file: line " << lineno << ": expected square order";
      throw validation_error(os.str());
    }
    std::string extra;
    if (is >> extra) {
      std::ostringstream os;
      os << "square file: line " << lineno << ": unexpected token '" << extra
         << "' after order";
      throw validation_error(os.str());
    }
  }
  if (n < 1 || n > kMaxOrder) {
    std::ostringstream os;
    os << "square file: line " << lineno << ": order " << n << " outside [1, " << kMaxOrder << "]";
    throw validation_error(os.str());
  }

  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    if (!next_line(line)) {
      std::ostringstream os;
      os << "square file: line " << lineno + 1 << ": expected row " << r + 1 << " of " << n
         << ", found end of input";
      throw validation_error(os.str());
    }
    std::istringstream is(line);
    int v = 0, count = 0;
    while (is >> v) {
      ++count;
      if (count > n) break;
      cells.push_back(v);
    }
    if (count != n || !is.eof()) {
      std::ostringstream os;
      os << "square file: line " << lineno << ": expected " << n << " integers";
      if (count < n && is.eof())
        os << ", found " << count;
      throw validation_error(os.str());
    }
  }

  // Re-index foreign alphabets by rank.
  bool canonical = true;
  for (int v : cells)
    if (v < 0 || v >= n) {
      canonical = false;
      break;
    }
  if (!canonical) {
    std::vector<int> alphabet(cells);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    if (static_cast<int>(alphabet.size()) != n) {
      std::ostringstream os;
      os << "square file: " << alphabet.size() << " distinct symbols, expected " << n;
      throw validation_error(os.str());
    }
    for (int& v : cells)
      v = static_cast<int>(std::lower_bound(alphabet.begin(), alphabet.end(), v) -
                           alphabet.begin());
  }

  return LatinSquare(n, std::move(cells), tag);
}

inline void save_square(const std::string& path, const LatinSquare& sq) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_square(out, sq);
}

inline LatinSquare load_square(const std::string& path, FamilyTag tag = FamilyTag::user) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_square(in, tag);
}

}  // namespace lsg
