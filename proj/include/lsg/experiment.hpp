#pragma once

// Declarative Monte Carlo experiments: a config names a Latin square family,
// a sampling model, an (n, parameter) grid, one property, and a trial count.
// Every trial derives its seed as mix_seed(master_seed, flat_index), so the
// result is identical no matter how many worker threads run.  Reports
// persist as a CSV of trials plus a JSON summary carrying aggregates and an
// FNV-1a checksum of the CSV (computed with the wall-time column stripped,
// since timing is the one non-reproducible field).

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lsg/cliques.hpp"
#include "lsg/connectivity.hpp"
#include "lsg/graph.hpp"
#include "lsg/latin.hpp"
#include "lsg/patterns.hpp"
#include "lsg/rng.hpp"
#include "lsg/spectral.hpp"

namespace lsg {

// ---- probability estimation -------------------------------------------------

struct ProbabilityEstimate {
  double point = 0;
  double low = 0;
  double high = 0;
  long long samples = 0;
};

// Wilson score interval at 95% (z = 1.96).
inline ProbabilityEstimate estimate_probability(long long successes, long long total) {
  if (total < 1) throw std::invalid_argument("estimate_probability: need at least one sample");
  if (successes < 0 || successes > total)
    throw std::invalid_argument("estimate_probability: successes outside [0, total]");
  const double z = 1.96;
  double n = static_cast<double>(total);
  double ph = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (ph + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
  return {ph, std::max(0.0, center - half), std::min(1.0, center + half), total};
}

inline ProbabilityEstimate estimate_probability(const std::vector<bool>& samples) {
  long long succ = 0;
  for (bool b : samples) succ += b ? 1 : 0;
  return estimate_probability(succ, static_cast<long long>(samples.size()));
}

// ---- configuration ----------------------------------------------------------

enum class Model { subset_p, multiset_k, multigraph_k, complement_p };

inline Model parse_model(const std::string& s) {
  if (s == "subset_p") return Model::subset_p;
  if (s == "multiset_k") return Model::multiset_k;
  if (s == "multigraph_k") return Model::multigraph_k;
  if (s == "complement_p") return Model::complement_p;
  throw std::invalid_argument(
      "config field 'model': expected subset_p, multiset_k, multigraph_k or complement_p, got '" +
      s + "'");
}

inline bool model_uses_p(Model m) { return m == Model::subset_p || m == Model::complement_p; }

enum class PropertyKind {
  connected,
  mu_geq,
  omega,
  alpha,
  chi_greedy,
  theta_greedy,
  kappa,
  lambda,
  hamiltonian,
  girth,
  diameter,
  triangle_at_0,
  degree_bounds,
  edge_discrepancy_holds,
  pattern_identity,
};

struct PropertySpec {
  PropertyKind kind = PropertyKind::connected;
  double arg = 0;        // eps for mu_geq
  std::string text;      // canonical form, echoed in the CSV
  bool indicator = false;
};

inline PropertySpec parse_property(const std::string& s) {
  std::string name = s;
  double arg = 0;
  bool has_arg = false;
  std::size_t open = s.find('(');
  if (open != std::string::npos) {
    if (s.back() != ')')
      throw std::invalid_argument("config field 'property': missing ')' in '" + s + "'");
    name = s.substr(0, open);
    std::string a = s.substr(open + 1, s.size() - open - 2);
    try {
      std::size_t used = 0;
      arg = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("config field 'property': bad argument '" + a + "'");
    }
    has_arg = true;
  }

  PropertySpec p;
  p.text = s;
  auto want_arg = [&](bool needed) {
    if (needed && !has_arg)
      throw std::invalid_argument("config field 'property': '" + name + "' needs an argument");
    if (!needed && has_arg)
      throw std::invalid_argument("config field 'property': '" + name + "' takes no argument");
  };
  if (name == "connected") p.kind = PropertyKind::connected, p.indicator = true, want_arg(false);
  else if (name == "mu_geq") {
    p.kind = PropertyKind::mu_geq;
    p.indicator = true;
    want_arg(true);
    if (!(arg > 0 && arg < 1))
      throw std::invalid_argument("config field 'property': mu_geq needs eps in (0,1)");
    p.arg = arg;
  } else if (name == "omega") p.kind = PropertyKind::omega, want_arg(false);
  else if (name == "alpha") p.kind = PropertyKind::alpha, want_arg(false);
  else if (name == "chi_greedy") p.kind = PropertyKind::chi_greedy, want_arg(false);
  else if (name == "theta_greedy") p.kind = PropertyKind::theta_greedy, want_arg(false);
  else if (name == "kappa") p.kind = PropertyKind::kappa, want_arg(false);
  else if (name == "lambda") p.kind = PropertyKind::lambda, want_arg(false);
  else if (name == "hamiltonian") p.kind = PropertyKind::hamiltonian, p.indicator = true, want_arg(false);
  else if (name == "girth") p.kind = PropertyKind::girth, want_arg(false);
  else if (name == "diameter") p.kind = PropertyKind::diameter, want_arg(false);
  else if (name == "triangle_at_0") p.kind = PropertyKind::triangle_at_0, p.indicator = true, want_arg(false);
  else if (name == "degree_bounds") p.kind = PropertyKind::degree_bounds, p.indicator = true, want_arg(false);
  else if (name == "edge_discrepancy_holds") p.kind = PropertyKind::edge_discrepancy_holds, p.indicator = true, want_arg(false);
  else if (name == "pattern_identity") p.kind = PropertyKind::pattern_identity, p.indicator = true, want_arg(false);
  else throw std::invalid_argument("config field 'property': unknown property '" + name + "'");
  return p;
}

struct ExperimentConfig {
  std::string name = "experiment";
  std::string latin_family;   // cyclic | group-division | group-multiplication | paired | random | file
  std::string group;          // group spec string for the group families
  std::string square_file;    // for latin_family = file
  std::vector<int> n_grid;
  std::string model;          // subset_p | multiset_k | multigraph_k | complement_p
  std::vector<double> p_grid;
  std::vector<long long> k_grid;
  std::string property;
  long long trials = 0;
  std::uint64_t master_seed = 0;
  int threads = 1;
};

inline void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  auto need = [&](const char* field) {
    if (!j.contains(field))
      throw std::invalid_argument(std::string("config: missing field '") + field + "'");
  };
  c.name = j.value("name", std::string("experiment"));
  need("latin_family");
  j.at("latin_family").get_to(c.latin_family);
  c.group = j.value("group", std::string());
  c.square_file = j.value("square_file", std::string());
  if (j.contains("n_grid")) j.at("n_grid").get_to(c.n_grid);
  need("model");
  j.at("model").get_to(c.model);
  if (j.contains("p_grid")) j.at("p_grid").get_to(c.p_grid);
  if (j.contains("k_grid")) j.at("k_grid").get_to(c.k_grid);
  need("property");
  j.at("property").get_to(c.property);
  need("trials");
  j.at("trials").get_to(c.trials);
  need("master_seed");
  j.at("master_seed").get_to(c.master_seed);
  c.threads = j.value("threads", 1);
}

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"name", c.name},
                     {"latin_family", c.latin_family},
                     {"model", c.model},
                     {"property", c.property},
                     {"trials", c.trials},
                     {"master_seed", c.master_seed},
                     {"threads", c.threads}};
  if (!c.group.empty()) j["group"] = c.group;
  if (!c.square_file.empty()) j["square_file"] = c.square_file;
  if (!c.n_grid.empty()) j["n_grid"] = c.n_grid;
  if (!c.p_grid.empty()) j["p_grid"] = c.p_grid;
  if (!c.k_grid.empty()) j["k_grid"] = c.k_grid;
}

// ---- records and reports ----------------------------------------------------

struct TrialRecord {
  long long trial = 0;  // index within its (n, param) grid cell
  std::uint64_t seed = 0;
  int n = 0;
  double param = 0;  // p or k
  double value = 0;
  long long micros = 0;
  int sample_size = 0;  // |S| (subset) or k (multiset)
};

struct Aggregate {
  int n = 0;
  double param = 0;
  long long trials = 0;
  double mean = 0;
  double min = 0;
  double max = 0;
  bool indicator = false;
  double wilson_low = 0;
  double wilson_high = 0;
  std::optional<TailBound> tail;  // for mu_geq: the theorem bound at (n, k, eps)
};

struct ExperimentReport {
  ExperimentConfig config;
  PropertySpec property;
  std::vector<int> orders;  // resolved n grid
  std::vector<TrialRecord> records;
  std::vector<Aggregate> aggregates;
  std::vector<std::string> violations;  // theorem-backed checks that failed
};

namespace detail {

struct ExperimentPlan {
  Model model = Model::subset_p;
  PropertySpec property;
  std::vector<int> orders;
  std::vector<double> params;  // p or k values as doubles
  std::vector<LatinSquare> squares;  // parallel to orders
};

inline ExperimentPlan resolve_plan(const ExperimentConfig& c) {
  ExperimentPlan plan;
  plan.model = parse_model(c.model);
  plan.property = parse_property(c.property);
  if (c.trials < 1) throw std::invalid_argument("config field 'trials': must be at least 1");
  if (c.threads < 1) throw std::invalid_argument("config field 'threads': must be at least 1");

  if (model_uses_p(plan.model)) {
    if (c.p_grid.empty())
      throw std::invalid_argument("config field 'p_grid': required for model " + c.model);
    for (double p : c.p_grid)
      if (!(p >= 0 && p <= 1))
        throw std::invalid_argument("config field 'p_grid': p outside [0,1]");
    plan.params = c.p_grid;
  } else {
    if (c.k_grid.empty())
      throw std::invalid_argument("config field 'k_grid': required for model " + c.model);
    for (long long k : c.k_grid) {
      if (k < 0) throw std::invalid_argument("config field 'k_grid': k must be nonnegative");
      plan.params.push_back(static_cast<double>(k));
    }
  }

  // Property/model compatibility.
  switch (plan.property.kind) {
    case PropertyKind::mu_geq:
    case PropertyKind::edge_discrepancy_holds:
      if (model_uses_p(plan.model))
        throw std::invalid_argument("config: property '" + c.property +
                                    "' needs a multiset model (multiset_k or multigraph_k)");
      for (long long k : c.k_grid)
        if (k < 1)
          throw std::invalid_argument("config: property '" + c.property +
                                      "' needs k >= 1 (normalized adjacency undefined at k=0)");
      break;
    case PropertyKind::degree_bounds:
    case PropertyKind::pattern_identity:
      if (plan.model != Model::subset_p)
        throw std::invalid_argument("config: property '" + c.property +
                                    "' is defined for the subset_p model");
      break;
    default:
      break;
  }

  // Family resolution; group/file families pin n themselves.
  if (c.latin_family == "cyclic" || c.latin_family == "random") {
    if (c.n_grid.empty()) throw std::invalid_argument("config field 'n_grid': required");
    for (int n : c.n_grid) {
      if (n < 1 || n > kMaxOrder)
        throw std::invalid_argument("config field 'n_grid': order outside [1, 4096]");
      plan.orders.push_back(n);
      if (c.latin_family == "cyclic")
        plan.squares.push_back(cyclic_difference_table(n));
      else
        plan.squares.push_back(
            random_latin_square(n, mix_seed(mix_seed(c.master_seed, 0x5155ULL), n)));
    }
  } else if (c.latin_family == "paired") {
    if (c.n_grid.empty()) throw std::invalid_argument("config field 'n_grid': required");
    for (int n : c.n_grid) {
      if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("config field 'n_grid': paired family needs even n >= 4");
      plan.orders.push_back(n);
      plan.squares.push_back(paired_square(n / 2));
    }
  } else if (c.latin_family == "group-division" || c.latin_family == "group-multiplication") {
    if (c.group.empty()) throw std::invalid_argument("config field 'group': required");
    GroupSpec spec = parse_group_spec(c.group);
    TableMode mode = c.latin_family == "group-division" ? TableMode::division
                                                        : TableMode::multiplication;
    LatinSquare sq = group_table(spec, mode);
    if (!c.n_grid.empty() && !(c.n_grid.size() == 1 && c.n_grid[0] == sq.order()))
      throw std::invalid_argument("config field 'n_grid': must match the group order " +
                                  std::to_string(sq.order()));
    plan.orders.push_back(sq.order());
    plan.squares.push_back(std::move(sq));
  } else if (c.latin_family == "file") {
    if (c.square_file.empty()) throw std::invalid_argument("config field 'square_file': required");
    LatinSquare sq = load_square(c.square_file);
    if (!c.n_grid.empty() && !(c.n_grid.size() == 1 && c.n_grid[0] == sq.order()))
      throw std::invalid_argument("config field 'n_grid': must match the loaded order " +
                                  std::to_string(sq.order()));
    plan.orders.push_back(sq.order());
    plan.squares.push_back(std::move(sq));
  } else {
    throw std::invalid_argument("config field 'latin_family': unknown family '" + c.latin_family +
                                "'");
  }

  // Caps for the chosen property.
  int max_n = *std::max_element(plan.orders.begin(), plan.orders.end());
  switch (plan.property.kind) {
    case PropertyKind::omega:
    case PropertyKind::alpha:
      if (max_n > kCliqueExactCap)
        throw std::invalid_argument("config: exact clique/independence capped at n = 64");
      break;
    case PropertyKind::kappa:
    case PropertyKind::lambda:
      if (max_n > kConnectivityCap)
        throw std::invalid_argument("config: exact connectivity capped at n = 256");
      break;
    case PropertyKind::hamiltonian:
      if (max_n > kHamiltonCap)
        throw std::invalid_argument("config: exact Hamiltonicity capped at n = 20");
      for (int n : plan.orders)
        if (n < 3) throw std::invalid_argument("config: Hamiltonicity needs n >= 3");
      break;
    default:
      break;
  }
  return plan;
}

inline double infinity_or(std::optional<int> v) {
  return v ? static_cast<double>(*v) : std::numeric_limits<double>::infinity();
}

inline TrialRecord evaluate_trial(const LatinSquare& sq, Model model, const PropertySpec& prop,
                                  double param, long long trial, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = seed;
  rec.n = sq.order();
  rec.param = param;

  int n = sq.order();
  double value = 0;

  if (prop.kind == PropertyKind::pattern_identity) {
    // Vertex-subset property: p plays its usual role but over [n] as vertices.
    SymbolSample s = sample_symbols_p(n, param, seed);
    rec.sample_size = static_cast<int>(s.symbols.size());
    value = pattern_counts(sq, s.symbols).identity_holds() ? 1 : 0;
  } else if (prop.kind == PropertyKind::degree_bounds) {
    // Conditioned on S nonempty: redraw deterministically until it is.
    SymbolSample s = sample_symbols_p(n, param, seed);
    for (std::uint64_t attempt = 1; s.symbols.empty(); ++attempt)
      s = sample_symbols_p(n, param, mix_seed(seed, attempt));
    rec.sample_size = static_cast<int>(s.symbols.size());
    DegreeProfile prof = degree_profile(build_graph(sq, s.symbols));
    long long sz = static_cast<long long>(s.symbols.size());
    value = (sz - 1 <= prof.min_degree && prof.max_degree <= 2 * sz) ? 1 : 0;
  } else if (model_uses_p(model)) {
    SymbolSample s = sample_symbols_p(n, param, seed);
    rec.sample_size = static_cast<int>(s.symbols.size());
    Graph g = build_graph(sq, s.symbols);
    if (model == Model::complement_p) g = complement_graph(g);
    switch (prop.kind) {
      case PropertyKind::connected: value = is_connected(g) ? 1 : 0; break;
      case PropertyKind::omega: value = clique_number_exact(g); break;
      case PropertyKind::alpha: value = independence_number_exact(g); break;
      case PropertyKind::chi_greedy: value = color_count(greedy_coloring(g)); break;
      case PropertyKind::theta_greedy: value = static_cast<double>(clique_cover_greedy(g).size()); break;
      case PropertyKind::kappa: value = vertex_connectivity(g); break;
      case PropertyKind::lambda: value = edge_connectivity(g); break;
      case PropertyKind::hamiltonian: value = hamiltonian_cycle_exact(g).has_value() ? 1 : 0; break;
      case PropertyKind::girth: value = infinity_or(distance_metrics(g).girth); break;
      case PropertyKind::diameter: value = infinity_or(distance_metrics(g).diameter); break;
      case PropertyKind::triangle_at_0:
        value = distance_metrics(g).triangles_at_vertex_0 > 0 ? 1 : 0;
        break;
      default:
        throw std::invalid_argument("config: property incompatible with a p-model");
    }
  } else {
    SymbolSample s = sample_symbols_k(n, static_cast<long long>(param), seed);
    rec.sample_size = static_cast<int>(s.symbols.size());
    MultiGraph m = build_multigraph(sq, s.symbols);
    switch (prop.kind) {
      case PropertyKind::mu_geq:
        value = spectrum(m).mu >= prop.arg ? 1 : 0;
        break;
      case PropertyKind::edge_discrepancy_holds: {
        SpectralReport rep = spectrum(m);
        Rng aux(mix_seed(seed, 0xABCDULL));
        std::vector<int> a = sample_without_replacement(n, 1 + aux.next_int(n), aux);
        std::vector<int> b = sample_without_replacement(n, 1 + aux.next_int(n), aux);
        value = edge_discrepancy(m, a, b, rep.mu).holds ? 1 : 0;
        break;
      }
      default: {
        Graph g = simple_graph(m);
        switch (prop.kind) {
          case PropertyKind::connected: value = is_connected(g) ? 1 : 0; break;
          case PropertyKind::omega: value = clique_number_exact(g); break;
          case PropertyKind::alpha: value = independence_number_exact(g); break;
          case PropertyKind::chi_greedy: value = color_count(greedy_coloring(g)); break;
          case PropertyKind::theta_greedy:
            value = static_cast<double>(clique_cover_greedy(g).size());
            break;
          case PropertyKind::kappa: value = vertex_connectivity(g); break;
          case PropertyKind::lambda: value = edge_connectivity(g); break;
          case PropertyKind::hamiltonian:
            value = hamiltonian_cycle_exact(g).has_value() ? 1 : 0;
            break;
          case PropertyKind::girth: value = infinity_or(distance_metrics(g).girth); break;
          case PropertyKind::diameter: value = infinity_or(distance_metrics(g).diameter); break;
          case PropertyKind::triangle_at_0:
            value = distance_metrics(g).triangles_at_vertex_0 > 0 ? 1 : 0;
            break;
          default:
            throw std::invalid_argument("config: property incompatible with a k-model");
        }
      }
    }
  }

  rec.value = value;
  rec.micros = std::chrono::duration_cast<std::chrono::microseconds>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
  return rec;
}

}  // namespace detail

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
  detail::ExperimentPlan plan = detail::resolve_plan(config);

  ExperimentReport report;
  report.config = config;
  report.property = plan.property;
  report.orders = plan.orders;

  const long long cells = static_cast<long long>(plan.orders.size()) * plan.params.size();
  const long long total = cells * config.trials;
  report.records.resize(total);

  std::atomic<long long> cursor{0};
  auto worker = [&]() {
    while (true) {
      long long idx = cursor.fetch_add(1);
      if (idx >= total) break;
      long long cell = idx / config.trials;
      long long trial = idx % config.trials;
      std::size_t ni = static_cast<std::size_t>(cell) / plan.params.size();
      std::size_t pi = static_cast<std::size_t>(cell) % plan.params.size();
      std::uint64_t seed = mix_seed(config.master_seed, static_cast<std::uint64_t>(idx));
      report.records[idx] = detail::evaluate_trial(plan.squares[ni], plan.model, plan.property,
                                                   plan.params[pi], trial, seed);
    }
  };

  int workers = std::min<long long>(config.threads, total);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Aggregate per grid cell, in canonical order.
  for (long long cell = 0; cell < cells; ++cell) {
    std::size_t ni = static_cast<std::size_t>(cell) / plan.params.size();
    std::size_t pi = static_cast<std::size_t>(cell) % plan.params.size();
    Aggregate agg;
    agg.n = plan.orders[ni];
    agg.param = plan.params[pi];
    agg.trials = config.trials;
    double sum = 0;
    bool indicator = true;
    long long successes = 0;
    agg.min = std::numeric_limits<double>::infinity();
    agg.max = -std::numeric_limits<double>::infinity();
    for (long long t = 0; t < config.trials; ++t) {
      double v = report.records[cell * config.trials + t].value;
      sum += v;
      agg.min = std::min(agg.min, v);
      agg.max = std::max(agg.max, v);
      if (v == 1.0) ++successes;
      else if (v != 0.0) indicator = false;
    }
    agg.mean = sum / static_cast<double>(config.trials);
    agg.indicator = indicator && plan.property.indicator;
    if (agg.indicator) {
      ProbabilityEstimate est = estimate_probability(successes, config.trials);
      agg.wilson_low = est.low;
      agg.wilson_high = est.high;
    }
    if (plan.property.kind == PropertyKind::mu_geq)
      agg.tail = tail_bound(agg.n, static_cast<long long>(agg.param), plan.property.arg);
    report.aggregates.push_back(agg);
  }

  // Theorem-backed one-sided checks; failures mark the report as violating.
  for (const Aggregate& agg : report.aggregates) {
    std::ostringstream cellname;
    cellname << "n=" << agg.n << " param=" << agg.param;
    switch (plan.property.kind) {
      case PropertyKind::mu_geq: {
        double bound = agg.tail->exact;
        double sigma = std::sqrt(bound * (1 - bound) / static_cast<double>(agg.trials));
        if (agg.mean > bound + 3 * sigma) {
          std::ostringstream os;
          os << "mu_geq frequency " << agg.mean << " exceeds tail bound " << bound
             << " + 3*sigma at " << cellname.str();
          report.violations.push_back(os.str());
        }
        break;
      }
      case PropertyKind::degree_bounds:
      case PropertyKind::edge_discrepancy_holds:
      case PropertyKind::pattern_identity:
        if (agg.mean < 1.0) {
          std::ostringstream os;
          os << plan.property.text << " failed in " << (1.0 - agg.mean) * 100 << "% of trials at "
             << cellname.str();
          report.violations.push_back(os.str());
        }
        break;
      default:
        break;
    }
  }
  return report;
}

// ---- persistence ------------------------------------------------------------

inline std::uint64_t fnv1a_64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// One CSV row; `stable` omits the trailing wall-time column (checksum view).
inline std::string csv_row(const TrialRecord& r, const std::string& property, bool stable) {
  std::ostringstream os;
  os << r.trial << ',' << r.seed << ',' << r.n << ',' << format_double(r.param) << ','
     << property << ',' << format_double(r.value);
  if (!stable) os << ',' << r.micros;
  return os.str();
}

}  // namespace detail

inline void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << "trial,seed,n,param,property,value,micros\n";
  for (const TrialRecord& r : report.records)
    out << detail::csv_row(r, report.property.text, false) << '\n';
}

// Checksum of the timing-stripped CSV: stable across reruns of the same config.
inline std::uint64_t report_checksum(const ExperimentReport& report) {
  std::string data = "trial,seed,n,param,property,value\n";
  for (const TrialRecord& r : report.records)
    data += detail::csv_row(r, report.property.text, true) + '\n';
  return fnv1a_64(data);
}

inline nlohmann::json summary_json(const ExperimentReport& report, const std::string& csv_name) {
  nlohmann::json j;
  j["config"] = report.config;
  j["property"] = report.property.text;
  j["orders"] = report.orders;
  j["csv_file"] = csv_name;
  {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(report_checksum(report)));
    j["csv_fnv1a"] = buf;
  }
  j["violations"] = report.violations;
  nlohmann::json aggs = nlohmann::json::array();
  for (const Aggregate& a : report.aggregates) {
    nlohmann::json ja{{"n", a.n},     {"param", a.param}, {"trials", a.trials},
                      {"mean", a.mean}, {"min", a.min},     {"max", a.max}};
    if (a.indicator) {
      ja["wilson_low"] = a.wilson_low;
      ja["wilson_high"] = a.wilson_high;
    }
    if (a.tail) {
      ja["tail_bound_exact"] = a.tail->exact;
      ja["tail_bound_weak"] = a.tail->weak;
    }
    aggs.push_back(ja);
  }
  j["aggregates"] = aggs;
  return j;
}

// Writes <name>.csv and <name>.json into dir; returns the summary.
inline nlohmann::json write_report(const std::string& dir, const ExperimentReport& report) {
  std::string base = dir.empty() ? report.config.name : dir + "/" + report.config.name;
  std::string csv_path = base + ".csv";
  {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
    write_csv(out, report);
  }
  nlohmann::json summary = summary_json(report, report.config.name + ".csv");
  {
    std::ofstream out(base + ".json");
    if (!out) throw std::runtime_error("cannot open for writing: " + base + ".json");
    out << summary.dump(2) << '\n';
  }
  return summary;
}

struct CsvContents {
  std::vector<TrialRecord> records;
  std::string property;
};

inline CsvContents read_csv(std::istream& in) {
  CsvContents out;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    std::ostringstream os;
    os << "report csv: line " << lineno << ": " << msg;
    throw validation_error(os.str());
  };
  if (!std::getline(in, line)) throw validation_error("report csv: empty file");
  ++lineno;
  if (line != "trial,seed,n,param,property,value,micros") fail("bad header");
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 7) fail("expected 7 columns");
    TrialRecord r;
    try {
      r.trial = std::stoll(fields[0]);
      r.seed = std::stoull(fields[1]);
      r.n = std::stoi(fields[2]);
      r.param = std::stod(fields[3]);
      r.value = std::stod(fields[5]);
      r.micros = std::stoll(fields[6]);
    } catch (const std::exception&) {
      fail("bad numeric field");
    }
    if (out.property.empty())
      out.property = fields[4];
    else if (out.property != fields[4])
      fail("property column is not constant");
    out.records.push_back(r);
  }
  return out;
}

// Recomputes the stable checksum of a CSV file against its summary JSON.
inline void verify_report(const std::string& csv_path, const std::string& summary_path) {
  std::ifstream cin_(csv_path);
  if (!cin_) throw std::runtime_error("cannot open: " + csv_path);
  CsvContents contents = read_csv(cin_);
  std::string data = "trial,seed,n,param,property,value\n";
  for (const TrialRecord& r : contents.records)
    data += detail::csv_row(r, contents.property, true) + '\n';
  std::uint64_t actual = fnv1a_64(data);

  std::ifstream sin(summary_path);
  if (!sin) throw std::runtime_error("cannot open: " + summary_path);
  nlohmann::json summary = nlohmann::json::parse(sin);
  std::string expected = summary.at("csv_fnv1a").get<std::string>();
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(actual));
  if (expected != buf) {
    std::ostringstream os;
    os << "checksum mismatch on report: " << csv_path << " has " << buf << ", summary expects "
       << expected;
    throw validation_error(os.str());
  }
}

}  // namespace lsg
