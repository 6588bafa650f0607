// Command-line front end: generate squares, analyze one sampled graph,
// run batch experiments, print theory bound sheets.
//
// Exit codes: 0 success, 1 usage/parameter problems, 2 invariant violation
// (a validation error or a theorem-backed check failing).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <lsg/lsg.hpp>

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer in list: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

lsg::LatinSquare generate(const std::string& family, int n, int r, const std::string& group,
                          std::uint64_t seed) {
  if (family == "cyclic") {
    if (n < 1) throw std::invalid_argument("gen: --n is required for --family cyclic");
    return lsg::cyclic_difference_table(n);
  }
  if (family == "paired") {
    if (r < 1) throw std::invalid_argument("gen: --r is required for --family paired");
    return lsg::paired_square(r);
  }
  if (family == "random") {
    if (n < 1) throw std::invalid_argument("gen: --n is required for --family random");
    return lsg::random_latin_square(n, seed);
  }
  if (family == "group-division" || family == "group-multiplication") {
    if (group.empty())
      throw std::invalid_argument("gen: --group is required for the group families");
    lsg::GroupSpec spec = lsg::parse_group_spec(group);
    return lsg::group_table(spec, family == "group-division"
                                      ? lsg::TableMode::division
                                      : lsg::TableMode::multiplication);
  }
  throw std::invalid_argument("gen: unknown family '" + family + "'");
}

struct AnalyzeInputs {
  lsg::LatinSquare square;
  std::vector<int> subset;                 // symbols of the simple-graph model
  std::optional<std::vector<int>> multiset;  // set when the multigraph model applies
  nlohmann::json sample_info;
};

AnalyzeInputs resolve_sample(const std::string& square_file, const std::string& subset_text,
                             const std::string& multiset_text, double p, long long k,
                             std::uint64_t seed) {
  AnalyzeInputs in{lsg::load_square(square_file), {}, std::nullopt, {}};
  int n = in.square.order();
  int modes = (!subset_text.empty()) + (!multiset_text.empty()) + (p >= 0) + (k >= 0);
  if (modes != 1)
    throw std::invalid_argument(
        "analyze: choose exactly one of --subset, --multiset, --p, --k");
  if (!subset_text.empty()) {
    in.subset = parse_int_list(subset_text);
    lsg::check_symbols(in.square, in.subset, "analyze");
    in.sample_info = {{"mode", "subset"}, {"symbols", in.subset}};
  } else if (!multiset_text.empty()) {
    std::vector<int> ms = parse_int_list(multiset_text);
    lsg::check_symbols(in.square, ms, "analyze");
    std::sort(ms.begin(), ms.end());
    in.multiset = ms;
    in.sample_info = {{"mode", "multiset"}, {"symbols", ms}};
  } else if (p >= 0) {
    lsg::SymbolSample s = lsg::sample_symbols_p(n, p, seed);
    in.subset = s.symbols;
    in.sample_info = {{"mode", "subset_p"}, {"p", p}, {"seed", seed}, {"symbols", s.symbols}};
  } else {
    lsg::SymbolSample s = lsg::sample_symbols_k(n, k, seed);
    in.multiset = s.symbols;
    in.sample_info = {{"mode", "multiset_k"}, {"k", k}, {"seed", seed}, {"symbols", s.symbols}};
  }
  if (in.multiset) {
    lsg::SymbolSample tmp;
    tmp.mode = lsg::SymbolSample::Mode::multiset;
    tmp.symbols = *in.multiset;
    in.subset = tmp.support();
  }
  return in;
}

nlohmann::json analyze_graph(const AnalyzeInputs& in, const std::vector<std::string>& props) {
  const lsg::LatinSquare& sq = in.square;
  lsg::Graph g = lsg::build_graph(sq, in.subset);
  std::optional<lsg::MultiGraph> mg;
  if (in.multiset) mg = lsg::build_multigraph(sq, *in.multiset);

  nlohmann::json out;
  out["n"] = sq.order();
  out["family"] = lsg::family_tag_name(sq.family());
  out["sample"] = in.sample_info;
  out["edges"] = g.edge_count();

  for (const std::string& prop : props) {
    if (prop == "degrees") {
      lsg::DegreeProfile prof = lsg::degree_profile(g);
      out["degrees"] = {{"min", prof.min_degree},
                        {"max", prof.max_degree},
                        {"regular", prof.regular}};
    } else if (prop == "structure") {
      lsg::StructureReport r = lsg::structure_report(g);
      nlohmann::json j{{"chi_greedy", r.chi_greedy}, {"theta_greedy", r.theta_greedy}};
      if (r.omega) j["omega"] = *r.omega;
      if (r.alpha) j["alpha"] = *r.alpha;
      out["structure"] = j;
    } else if (prop == "connectivity") {
      out["connectivity"] = lsg::connectivity_report(g);
    } else if (prop == "distance") {
      out["distance"] = lsg::distance_metrics(g);
    } else if (prop == "spectral") {
      if (mg)
        out["spectral"] = lsg::spectrum(*mg);
      else if (lsg::degree_profile(g).regular && lsg::degree_profile(g).min_degree >= 1)
        out["spectral"] = lsg::spectrum_regular(g);
      else
        out["spectral"] = {{"error",
                            "irregular simple graph: normalized adjacency undefined; "
                            "use --multiset or --k for the multigraph model"}};
    } else if (prop == "expansion") {
      out["expansion"] = lsg::expansion_check(g, 1.0);
    } else {
      throw std::invalid_argument("analyze: unknown property '" + prop +
                                  "' (expected degrees, structure, connectivity, distance, "
                                  "spectral, expansion)");
    }
  }
  return out;
}

void print_human(const nlohmann::json& j, int indent = 0) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (it->is_object()) {
      std::printf("%s%s:\n", pad.c_str(), it.key().c_str());
      print_human(*it, indent + 1);
    } else {
      std::printf("%s%s: %s\n", pad.c_str(), it.key().c_str(), it->dump().c_str());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latin square graph toolkit"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "Generate a Latin square");
  std::string gen_family = "cyclic", gen_group, gen_out;
  int gen_n = 0, gen_r = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--family", gen_family,
                  "cyclic | group-division | group-multiplication | paired | random");
  gen->add_option("--n", gen_n, "order (cyclic, random)");
  gen->add_option("--r", gen_r, "half-order of the paired family");
  gen->add_option("--group", gen_group, "group spec, e.g. 'cyclic(12)' or 'ea(2,3) x dihedral(4)'");
  gen->add_option("--seed", gen_seed, "random family seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "Analyze one graph sampled from a square");
  std::string an_square, an_subset, an_multiset, an_props = "degrees,connectivity,distance";
  double an_p = -1;
  long long an_k = -1;
  std::uint64_t an_seed = 0;
  bool an_json = false;
  analyze->add_option("--square", an_square, "Latin square file")->required();
  analyze->add_option("--subset", an_subset, "explicit symbol subset, e.g. 0,3,7");
  analyze->add_option("--multiset", an_multiset, "explicit symbol multiset, e.g. 1,1,4");
  analyze->add_option("--p", an_p, "sample each symbol independently with probability p");
  analyze->add_option("--k", an_k, "sample k symbols uniformly with replacement");
  analyze->add_option("--seed", an_seed, "sampling seed");
  analyze->add_option("--props", an_props,
                      "comma list: degrees,structure,connectivity,distance,spectral,expansion");
  analyze->add_flag("--json", an_json, "emit JSON instead of plain text");

  // ---- experiment ----
  auto* experiment = app.add_subcommand("experiment", "Run a config-driven experiment batch");
  std::string ex_config, ex_outdir = ".";
  int ex_threads = 0;
  experiment->add_option("--config", ex_config, "JSON config file")->required();
  experiment->add_option("--out-dir", ex_outdir, "directory for the CSV and summary");
  experiment->add_option("--threads", ex_threads, "worker threads (overrides config)");

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "Print the theory bound sheet as JSON");
  long long bd_n = 0;
  double bd_p = 0;
  bounds->add_option("--n", bd_n, "number of vertices")->required();
  bounds->add_option("--p", bd_p, "edge-symbol probability")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);     // prints the message / help text
    return code == 0 ? 0 : 1;  // fold CLI11's error-code zoo into "usage"
  }

  try {
    if (*gen) {
      lsg::LatinSquare sq = generate(gen_family, gen_n, gen_r, gen_group, gen_seed);
      if (gen_out.empty()) {
        lsg::write_square(std::cout, sq);
      } else {
        lsg::save_square(gen_out, sq);
        std::fprintf(stderr, "wrote order-%d %s square to %s\n", sq.order(),
                     lsg::family_tag_name(sq.family()), gen_out.c_str());
      }
      return 0;
    }

    if (*analyze) {
      AnalyzeInputs in =
          resolve_sample(an_square, an_subset, an_multiset, an_p, an_k, an_seed);
      std::vector<std::string> props;
      std::istringstream is(an_props);
      std::string item;
      while (std::getline(is, item, ','))
        if (!item.empty()) props.push_back(item);
      nlohmann::json report = analyze_graph(in, props);
      if (an_json)
        std::printf("%s\n", report.dump(2).c_str());
      else
        print_human(report);
      return 0;
    }

    if (*experiment) {
      std::ifstream in(ex_config);
      if (!in) throw std::invalid_argument("experiment: cannot open config " + ex_config);
      lsg::ExperimentConfig config = nlohmann::json::parse(in).get<lsg::ExperimentConfig>();
      if (ex_threads > 0) config.threads = ex_threads;
      std::filesystem::create_directories(ex_outdir);
      lsg::ExperimentReport report = lsg::run_experiment(config);
      nlohmann::json summary = lsg::write_report(ex_outdir, report);
      std::printf("%s\n", summary.dump(2).c_str());
      if (!report.violations.empty()) {
        for (const std::string& v : report.violations)
          std::fprintf(stderr, "violation: %s\n", v.c_str());
        return 2;
      }
      return 0;
    }

    if (*bounds) {
      nlohmann::json j = lsg::theory_bounds(bd_n, bd_p);
      std::printf("%s\n", j.dump(2).c_str());
      return 0;
    }
  } catch (const lsg::validation_error& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
