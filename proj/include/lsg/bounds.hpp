#pragma once

// Closed-form bound evaluation for the subset model at density p.  Each
// entry records its value, the log base d it was computed with, and a
// vacuity flag: a bound is vacuous when it is not a finite value in (0, n].
// The clique-cover robust size u_cc is emitted twice because the source
// formula's outer logarithm is ambiguous: once with log_d (primary, matching
// the independence bound) and once with a natural log.

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace lsg {

struct Bound {
  double value = std::numeric_limits<double>::quiet_NaN();
  double d = std::numeric_limits<double>::quiet_NaN();  // log base used
  bool vacuous = true;
};

struct BoundSheet {
  long long n = 0;
  double p = 0;

  Bound clique_upper;        // 27 (log_d n)^2, d = 1/(2p - p^2)
  Bound independence_upper;  // 27 (log_d n)^2, d = 1/(1-p)
  Bound cc_lower;            // n / clique_upper
  Bound chromatic_lower;     // n / independence_upper

  Bound u_list;                // 1/4 log_d n - 1/2 log_d log_d n - 2, d = 1/(1-p)
  Bound list_chromatic_upper;  // n / u_list

  Bound u_cc;      // 1/2 log_d n - log_d log_d n - 6, d = 1/p
  Bound cc_upper;  // n / u_cc
  Bound u_cc_ln;   // same with natural-log outer logarithm
  Bound cc_upper_ln;

  Bound independence_lower;  // 1/2 log_d n - log_d log_d n - 6, d = 1/(1-p)
  Bound clique_lower;        // 1/4 log_d n - 1/2 log_d log_d n - 2, d = 1/p
};

namespace detail {

inline Bound make_bound(double value, double d, long long n) {
  Bound b;
  b.value = value;
  b.d = d;
  b.vacuous = !(std::isfinite(value) && value > 0 && value <= static_cast<double>(n));
  return b;
}

}  // namespace detail

inline BoundSheet theory_bounds(long long n, double p) {
  if (n < 2) throw std::invalid_argument("theory_bounds: n must be at least 2");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("theory_bounds: p must lie in (0,1)");

  BoundSheet sheet;
  sheet.n = n;
  sheet.p = p;

  auto log_base = [](double d, double x) { return std::log(x) / std::log(d); };
  double nd = static_cast<double>(n);

  double d_clique = 1.0 / (2 * p - p * p);
  double d_comp = 1.0 / (1.0 - p);
  double d_inv = 1.0 / p;

  {
    double lg = log_base(d_clique, nd);
    sheet.clique_upper = detail::make_bound(27.0 * lg * lg, d_clique, n);
    sheet.cc_lower = detail::make_bound(nd / (27.0 * lg * lg), d_clique, n);
  }
  {
    double lg = log_base(d_comp, nd);
    sheet.independence_upper = detail::make_bound(27.0 * lg * lg, d_comp, n);
    sheet.chromatic_lower = detail::make_bound(nd / (27.0 * lg * lg), d_comp, n);
  }
  {
    double lg = log_base(d_comp, nd);
    double u = 0.25 * lg - 0.5 * log_base(d_comp, lg) - 2.0;
    sheet.u_list = detail::make_bound(u, d_comp, n);
    sheet.list_chromatic_upper = detail::make_bound(nd / u, d_comp, n);
  }
  {
    double lg = log_base(d_inv, nd);
    double u = 0.5 * lg - log_base(d_inv, lg) - 6.0;
    sheet.u_cc = detail::make_bound(u, d_inv, n);
    sheet.cc_upper = detail::make_bound(nd / u, d_inv, n);
    double u_ln = 0.5 * lg - std::log(lg) - 6.0;
    sheet.u_cc_ln = detail::make_bound(u_ln, d_inv, n);
    sheet.cc_upper_ln = detail::make_bound(nd / u_ln, d_inv, n);
    sheet.clique_lower = detail::make_bound(0.25 * lg - 0.5 * log_base(d_inv, lg) - 2.0, d_inv, n);
  }
  {
    double lg = log_base(d_comp, nd);
    sheet.independence_lower =
        detail::make_bound(0.5 * lg - log_base(d_comp, lg) - 6.0, d_comp, n);
  }
  return sheet;
}

inline void to_json(nlohmann::json& j, const Bound& b) {
  j = nlohmann::json{{"value", b.value}, {"d", b.d}, {"vacuous", b.vacuous}};
}

inline void to_json(nlohmann::json& j, const BoundSheet& s) {
  j = nlohmann::json{{"n", s.n},
                     {"p", s.p},
                     {"clique_upper", s.clique_upper},
                     {"independence_upper", s.independence_upper},
                     {"cc_lower", s.cc_lower},
                     {"chromatic_lower", s.chromatic_lower},
                     {"u_list", s.u_list},
                     {"list_chromatic_upper", s.list_chromatic_upper},
                     {"u_cc", s.u_cc},
                     {"cc_upper", s.cc_upper},
                     {"u_cc_ln", s.u_cc_ln},
                     {"cc_upper_ln", s.cc_upper_ln},
                     {"independence_lower", s.independence_lower},
                     {"clique_lower", s.clique_lower}};
}

}  // namespace lsg
