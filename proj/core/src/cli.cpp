#include "domove/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "domove/biobjective.hpp"
#include "domove/compare.hpp"
#include "domove/csv.hpp"
#include "domove/geometry.hpp"
#include "domove/indicators.hpp"
#include "domove/lp_format.hpp"
#include "domove/mip_model.hpp"
#include "domove/solver.hpp"

namespace domove {

namespace {

using njson = nlohmann::ordered_json;

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<PointSet> load_sets(const std::vector<std::string>& paths) {
  std::vector<PointSet> sets;
  sets.reserve(paths.size());
  for (const std::string& p : paths) sets.push_back(read_pointset_csv(p));
  return sets;
}

Point min_envelope(const std::vector<PointSet>& sets) {
  Point lo(sets[0].dim(), std::numeric_limits<double>::infinity());
  for (const PointSet& s : sets) {
    for (const Point& p : s.points()) {
      for (std::size_t m = 0; m < lo.size(); ++m) lo[m] = std::min(lo[m], p[m]);
    }
  }
  return lo;
}

Point max_envelope(const std::vector<PointSet>& sets) {
  Point hi(sets[0].dim(), -std::numeric_limits<double>::infinity());
  for (const PointSet& s : sets) {
    for (const Point& p : s.points()) {
      for (std::size_t m = 0; m < hi.size(); ++m) hi[m] = std::max(hi[m], p[m]);
    }
  }
  return hi;
}

bool any_negative(const std::vector<PointSet>& sets) {
  for (const PointSet& s : sets) {
    for (const Point& p : s.points()) {
      for (double v : p) {
        if (v < 0.0) return true;
      }
    }
  }
  return false;
}

PointSet translate(const PointSet& s, const Point& delta) {
  std::vector<Point> pts = s.points();
  for (Point& p : pts) {
    for (std::size_t m = 0; m < p.size(); ++m) p[m] += delta[m];
  }
  return PointSet(s.label(), s.dim(), std::move(pts));
}

std::string point_text(const Point& p) {
  std::string out = "(";
  for (std::size_t m = 0; m < p.size(); ++m) {
    if (m) out += ", ";
    out += fixed3(p[m]);
  }
  out += ')';
  return out;
}

// Translates every set so the global componentwise minimum becomes 0 and
// logs the applied vector. Returns the delta so certificates can be mapped
// back into the original coordinates.
std::optional<Point> shift_to_nonnegative(std::vector<PointSet>& sets,
                                          bool force) {
  if (!force && !any_negative(sets)) return std::nullopt;
  Point lo = min_envelope(sets);
  Point delta(lo.size());
  for (std::size_t m = 0; m < lo.size(); ++m) delta[m] = -lo[m];
  for (PointSet& s : sets) s = translate(s, delta);
  std::cerr << "note: inputs translated by " << point_text(delta)
            << "; the dominance move is translation invariant\n";
  return delta;
}

void unshift_certificate(DomCertificate& cert, const Point& delta) {
  for (auto& [pi, moved] : cert.moved_points) {
    for (std::size_t m = 0; m < moved.size(); ++m) moved[m] -= delta[m];
  }
}

njson certificate_json(const DomCertificate& c) {
  njson j;
  j["value"] = c.value;
  njson assign = njson::object();
  for (std::size_t qi = 0; qi < c.assignment.size(); ++qi) {
    assign[std::to_string(qi)] = c.assignment[qi];
  }
  j["assignment"] = std::move(assign);
  njson moved = njson::object();
  for (const auto& [pi, pt] : c.moved_points) {
    moved[std::to_string(pi)] = pt;
  }
  j["moved_points"] = std::move(moved);
  njson costs = njson::object();
  for (const auto& [pi, cost] : c.per_group_cost) {
    costs[std::to_string(pi)] = cost;
  }
  j["per_group_cost"] = std::move(costs);
  return j;
}

int write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 2;
  }
  return 0;
}

bool parse_ref_list(const std::string& text, Point& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t cut = text.find(',', pos);
    const std::string cell = text.substr(
        pos, cut == std::string::npos ? text.size() - pos : cut - pos);
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last || cell.empty()) return false;
    out.push_back(v);
    if (cut == std::string::npos) break;
    pos = cut + 1;
  }
  return !out.empty();
}

// ---------------------------------------------------------------------------
// Subcommand state

struct FilterArgs {
  std::string input;
  std::string output;
};

struct DomArgs {
  std::string p_file, q_file;
  std::string format = "json";
  std::string method = "bb";
  bool no_preprocess = false;
  std::uint64_t node_cap = SolveOptions{}.node_cap;
  double time_cap = SolveOptions{}.time_cap_seconds;
};

struct CompareArgs {
  std::vector<std::string> files;
  std::string format = "text";
  unsigned jobs = 1;
  bool no_preprocess = false;
  bool crosscheck = false;
  std::uint64_t node_cap = SolveOptions{}.node_cap;
  double time_cap = SolveOptions{}.time_cap_seconds;
};

struct IndicatorArgs {
  std::vector<std::string> files;
  std::string ref;
  bool auto_ref = false;
  std::string format = "text";
};

struct ExportArgs {
  std::string p_file, q_file;
  std::string output;
  bool no_preprocess = false;
  bool shift = false;
};

int run_filter(const FilterArgs& a) {
  const PointSet filtered = pareto_filter(read_pointset_csv(a.input));
  return write_output(a.output, pointset_to_csv(filtered));
}

int run_dom(const DomArgs& a) {
  std::vector<PointSet> sets;
  sets.push_back(read_pointset_csv(a.p_file));
  sets.push_back(read_pointset_csv(a.q_file));
  if (sets[0].dim() != sets[1].dim()) {
    std::cerr << "error: dimension mismatch: '" << sets[0].label() << "' is "
              << sets[0].dim() << "-dimensional, '" << sets[1].label()
              << "' is " << sets[1].dim() << "-dimensional\n";
    return 2;
  }
  const std::optional<Point> delta = shift_to_nonnegative(sets, false);

  SolveOptions opts;
  opts.preprocess = !a.no_preprocess;
  opts.node_cap = a.node_cap;
  opts.time_cap_seconds = a.time_cap;

  DomCertificate cert;
  bool optimal = true;
  std::optional<SolveStats> stats;
  if (a.method == "bb") {
    SolveResult r = solve_bb(sets[0], sets[1], opts);
    cert = std::move(r.certificate);
    optimal = r.optimal;
    stats = r.stats;
  } else if (a.method == "biobjective") {
    cert = dom_biobjective(sets[0], sets[1]);
  } else {
    cert = solve_bruteforce(sets[0], sets[1], opts);
  }
  if (delta) unshift_certificate(cert, *delta);

  if (a.format == "json") {
    njson j;
    j["p"] = sets[0].label();
    j["q"] = sets[1].label();
    j["method"] = a.method;
    j["optimal"] = optimal;
    j.update(certificate_json(cert));
    if (stats) {
      j["stats"] = {{"nodes_explored", stats->nodes_explored},
                    {"incumbent_updates", stats->incumbent_updates},
                    {"pruned", stats->pruned}};
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "dominance move: " << fixed3(cert.value) << '\n';
    std::cout << "method: " << a.method
              << (optimal ? "" : " (cap hit, value not proven optimal)")
              << '\n';
    for (const auto& [pi, moved] : cert.moved_points) {
      std::cout << "group p" << pi << " <-";
      for (std::size_t qi = 0; qi < cert.assignment.size(); ++qi) {
        if (cert.assignment[qi] == pi) std::cout << " q" << qi;
      }
      std::cout << "\n  moved to " << point_text(moved) << ", cost "
                << fixed3(cert.per_group_cost.at(pi)) << '\n';
    }
  }
  return optimal ? 0 : 3;
}

int run_compare(const CompareArgs& a, bool stats_csv) {
  std::vector<PointSet> sets = load_sets(a.files);
  const std::optional<Point> delta = shift_to_nonnegative(sets, false);

  RunConfig cfg;
  cfg.solve.preprocess = !a.no_preprocess;
  cfg.solve.node_cap = a.node_cap;
  cfg.solve.time_cap_seconds = a.time_cap;
  cfg.crosscheck_biobjective = a.crosscheck;
  cfg.jobs = a.jobs;

  ComparisonMatrix mat = compare_matrix(sets, cfg);
  if (delta) {
    for (auto& row : mat.cells) {
      for (PairOutcome& cell : row) unshift_certificate(cell.certificate, *delta);
    }
  }
  const std::size_t n = mat.labels.size();
  bool all_proven = true;
  for (const auto& row : mat.cells) {
    for (const PairOutcome& cell : row) all_proven = all_proven && cell.optimal;
  }

  if (stats_csv) {
    std::string out =
        "p,q,np,nq,m,value,optimal,nodes_explored,incumbent_updates,pruned,"
        "wall_time_s\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const PairOutcome& cell = mat.cells[i][j];
        out += mat.labels[i] + ',' + mat.labels[j] + ',';
        out += std::to_string(sets[i].size()) + ',' +
               std::to_string(sets[j].size()) + ',' +
               std::to_string(sets[i].dim()) + ',';
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.12g,%s,", cell.certificate.value,
                      cell.optimal ? "true" : "false");
        out += buf;
        std::snprintf(buf, sizeof buf, "%llu,%llu,%llu,%.6f",
                      static_cast<unsigned long long>(cell.stats.nodes_explored),
                      static_cast<unsigned long long>(
                          cell.stats.incumbent_updates),
                      static_cast<unsigned long long>(cell.stats.pruned),
                      cell.stats.wall_time_seconds);
        out += buf;
        out += '\n';
      }
    }
    std::cout << out;
    return all_proven ? 0 : 3;
  }

  const std::vector<RankEntry> ranking = rank_summary(mat);
  if (a.format == "json") {
    njson j;
    j["labels"] = mat.labels;
    njson values = njson::array();
    njson cells = njson::array();
    for (std::size_t i = 0; i < n; ++i) {
      njson vrow = njson::array();
      njson crow = njson::array();
      for (std::size_t j2 = 0; j2 < n; ++j2) {
        const PairOutcome& cell = mat.cells[i][j2];
        vrow.push_back(cell.certificate.value);
        njson c = certificate_json(cell.certificate);
        c["optimal"] = cell.optimal;
        c["stats"] = {{"nodes_explored", cell.stats.nodes_explored},
                      {"incumbent_updates", cell.stats.incumbent_updates},
                      {"pruned", cell.stats.pruned}};
        crow.push_back(std::move(c));
      }
      values.push_back(std::move(vrow));
      cells.push_back(std::move(crow));
    }
    j["values"] = std::move(values);
    j["cells"] = std::move(cells);
    njson rank = njson::array();
    for (const RankEntry& e : ranking) {
      rank.push_back({{"label", e.label},
                      {"total", e.total},
                      {"all_proven", e.all_proven}});
    }
    j["ranking"] = std::move(rank);
    std::cout << j.dump(2) << '\n';
  } else if (a.format == "csv") {
    std::string out = "p\\q";
    for (const std::string& l : mat.labels) out += ',' + l;
    out += '\n';
    for (std::size_t i = 0; i < n; ++i) {
      out += mat.labels[i];
      for (std::size_t j2 = 0; j2 < n; ++j2) {
        out += ',' + fixed3(mat.value(i, j2));
        if (!mat.cells[i][j2].optimal) out += '*';
      }
      out += '\n';
    }
    std::cout << out;
  } else {
    std::size_t w = 8;
    for (const std::string& l : mat.labels) w = std::max(w, l.size() + 2);
    std::string out(w, ' ');
    for (const std::string& l : mat.labels) {
      out += std::string(w - l.size(), ' ') + l;
    }
    out += '\n';
    for (std::size_t i = 0; i < n; ++i) {
      out += mat.labels[i] +
             std::string(w - mat.labels[i].size(), ' ');
      for (std::size_t j2 = 0; j2 < n; ++j2) {
        std::string cell = fixed3(mat.value(i, j2));
        if (!mat.cells[i][j2].optimal) cell += '*';
        out += std::string(w - cell.size(), ' ') + cell;
      }
      out += '\n';
    }
    out += "\nranking (smaller total move is better):\n";
    std::size_t place = 1;
    for (const RankEntry& e : ranking) {
      out += "  " + std::to_string(place++) + ". " + e.label + "  total " +
             fixed3(e.total);
      if (!e.all_proven) out += " *";
      out += '\n';
    }
    if (!all_proven) {
      out += "* contains values that hit a solver cap; totals use the best "
             "found value, the true total can only be smaller\n";
    }
    std::cout << out;
  }
  return all_proven ? 0 : 3;
}

int run_hv(const IndicatorArgs& a) {
  if (a.auto_ref == !a.ref.empty()) {
    std::cerr << "error: hv requires exactly one of --ref or --auto-ref\n";
    return 1;
  }
  const std::vector<PointSet> sets = load_sets(a.files);
  Point ref;
  if (a.auto_ref) {
    ref = max_envelope(sets);
  } else if (!parse_ref_list(a.ref, ref)) {
    std::cerr << "error: --ref expects comma-separated numbers\n";
    return 1;
  }
  njson values = njson::object();
  std::string text;
  for (const PointSet& s : sets) {
    const double v = hypervolume(s, ref);
    values[s.label()] = v;
    text += s.label() + ": " + fixed3(v) + '\n';
  }
  if (a.format == "json") {
    njson j;
    j["ref"] = ref;
    j["values"] = std::move(values);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
  return 0;
}

int run_igd(const IndicatorArgs& a) {
  if (a.auto_ref == !a.ref.empty()) {
    std::cerr << "error: igd requires exactly one of --ref or --auto-ref\n";
    return 1;
  }
  const std::vector<PointSet> sets = load_sets(a.files);
  std::optional<PointSet> ref;
  if (a.auto_ref) {
    // Ideal-point reference: the componentwise minimum over all inputs.
    ref = PointSet("auto-ref", sets[0].dim(), {min_envelope(sets)});
  } else {
    ref = read_pointset_csv(a.ref);
  }
  njson values = njson::object();
  std::string text;
  for (const PointSet& s : sets) {
    const double v = igd(s, *ref);
    values[s.label()] = v;
    text += s.label() + ": " + fixed3(v) + '\n';
  }
  if (a.format == "json") {
    njson j;
    j["ref"] = ref->label();
    j["values"] = std::move(values);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
  return 0;
}

int run_export(const ExportArgs& a) {
  std::vector<PointSet> sets;
  sets.push_back(read_pointset_csv(a.p_file));
  sets.push_back(read_pointset_csv(a.q_file));
  if (a.shift) shift_to_nonnegative(sets, true);
  const MipModel model = build_model(sets[0], sets[1], !a.no_preprocess);
  return write_output(a.output, export_lp(model));
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"dominance move toolkit for multiobjective solution sets"};
  app.require_subcommand(1);

  FilterArgs filter_args;
  CLI::App* cmd_filter =
      app.add_subcommand("filter", "Pareto-filter a point set CSV");
  cmd_filter->add_option("input", filter_args.input, "input CSV")->required();
  cmd_filter->add_option("-o,--output", filter_args.output,
                         "output file (default stdout)");

  DomArgs dom_args;
  CLI::App* cmd_dom = app.add_subcommand(
      "dom", "compute the dominance move of one set toward another");
  cmd_dom->add_option("p", dom_args.p_file, "moving set CSV")->required();
  cmd_dom->add_option("q", dom_args.q_file, "target set CSV")->required();
  cmd_dom->add_option("--format", dom_args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_dom->add_option("--method", dom_args.method, "solver selection")
      ->check(CLI::IsMember({"bb", "biobjective", "bruteforce"}));
  cmd_dom->add_flag("--no-preprocess", dom_args.no_preprocess,
                    "skip the dominated-point reduction");
  cmd_dom->add_option("--node-cap", dom_args.node_cap, "search node limit")
      ->check(CLI::PositiveNumber);
  cmd_dom->add_option("--time-cap", dom_args.time_cap, "time limit, seconds")
      ->check(CLI::PositiveNumber);

  CompareArgs compare_args;
  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "pairwise dominance-move matrix and ranking");
  cmd_compare->add_option("files", compare_args.files, "point set CSVs")
      ->expected(-2);
  cmd_compare->add_option("--format", compare_args.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd_compare->add_option("--jobs", compare_args.jobs, "parallel solves")
      ->check(CLI::PositiveNumber);
  cmd_compare->add_flag("--crosscheck", compare_args.crosscheck,
                        "verify biobjective pairs with the direct algorithm");
  cmd_compare->add_flag("--no-preprocess", compare_args.no_preprocess,
                        "skip the dominated-point reduction");
  cmd_compare->add_option("--node-cap", compare_args.node_cap,
                          "search node limit")
      ->check(CLI::PositiveNumber);
  cmd_compare->add_option("--time-cap", compare_args.time_cap,
                          "time limit per pair, seconds")
      ->check(CLI::PositiveNumber);

  IndicatorArgs hv_args;
  CLI::App* cmd_hv =
      app.add_subcommand("hv", "hypervolume of each set against a reference");
  cmd_hv->add_option("files", hv_args.files, "point set CSVs")->expected(-1);
  cmd_hv->add_option("--ref", hv_args.ref,
                     "reference point, comma-separated coordinates");
  cmd_hv->add_flag("--auto-ref", hv_args.auto_ref,
                   "use the componentwise maximum over all inputs");
  cmd_hv->add_option("--format", hv_args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  IndicatorArgs igd_args;
  CLI::App* cmd_igd = app.add_subcommand(
      "igd", "inverted generational distance of each set from a reference");
  cmd_igd->add_option("files", igd_args.files, "point set CSVs")
      ->expected(-1);
  cmd_igd->add_option("--ref", igd_args.ref, "reference set CSV");
  cmd_igd->add_flag("--auto-ref", igd_args.auto_ref,
                    "use the componentwise minimum over all inputs");
  cmd_igd->add_option("--format", igd_args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  ExportArgs export_args;
  CLI::App* cmd_export = app.add_subcommand(
      "export-mip", "write the assignment MIP in LP format");
  cmd_export->add_option("p", export_args.p_file, "moving set CSV")
      ->required();
  cmd_export->add_option("q", export_args.q_file, "target set CSV")
      ->required();
  cmd_export->add_option("-o,--output", export_args.output,
                         "output file (default stdout)");
  cmd_export->add_flag("--no-preprocess", export_args.no_preprocess,
                       "skip the dominated-point reduction");
  cmd_export->add_flag(
      "--shift", export_args.shift,
      "translate inputs so the componentwise minimum is zero");

  CompareArgs stats_args;
  CLI::App* cmd_stats = app.add_subcommand(
      "stats", "per-pair solve statistics as CSV (includes wall time)");
  cmd_stats->add_option("files", stats_args.files, "point set CSVs")
      ->expected(-2);
  cmd_stats->add_option("--jobs", stats_args.jobs, "parallel solves")
      ->check(CLI::PositiveNumber);
  cmd_stats->add_flag("--no-preprocess", stats_args.no_preprocess,
                      "skip the dominated-point reduction");
  cmd_stats->add_option("--node-cap", stats_args.node_cap,
                        "search node limit")
      ->check(CLI::PositiveNumber);
  cmd_stats->add_option("--time-cap", stats_args.time_cap,
                        "time limit per pair, seconds")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cmd_filter) return run_filter(filter_args);
    if (*cmd_dom) return run_dom(dom_args);
    if (*cmd_compare) return run_compare(compare_args, false);
    if (*cmd_hv) return run_hv(hv_args);
    if (*cmd_igd) return run_igd(igd_args);
    if (*cmd_export) return run_export(export_args);
    if (*cmd_stats) return run_compare(stats_args, true);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace domove
