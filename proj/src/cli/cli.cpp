#include "polytess/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "polytess/analytic.hpp"
#include "polytess/arrangement.hpp"
#include "polytess/directional.hpp"
#include "polytess/format.hpp"
#include "polytess/line_process.hpp"
#include "polytess/manifest.hpp"
#include "polytess/svg.hpp"
#include "polytess/typical_cell.hpp"
#include "polytess/window.hpp"

#ifndef POLYTESS_VERSION
#define POLYTESS_VERSION "unknown"
#endif

namespace polytess::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalyticArgs {
  std::string dist;
  int k_min = 0;
  int k_max = 0;
  std::string format = "pretty";
};

struct SimulateArgs {
  std::string dist;
  double radius = 0.0;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  int reps = 1;
  std::string out;
};

struct TypicalArgs {
  std::string dist;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string mode = "weight";
  double gamma = 1.0;
  std::string audit;
};

struct RenderArgs {
  std::string dist;
  double radius = 0.0;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct QuadratureArgs {
  std::string which;
  int grid = 256;
};

unsigned default_threads() {
  const char* env = std::getenv("POLYTESS_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  unsigned v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto res = std::from_chars(env, end, v);
  if (res.ec != std::errc() || res.ptr != end || v == 0) {
    throw UsageError("POLYTESS_THREADS must be a positive integer: '" +
                     std::string(env) + "'");
  }
  return v;
}

DirectionalDistribution parse_dist(const std::string& spec) {
  try {
    return parse_distribution(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "polytess";
  for (const auto& a : args) s += " " + a;
  return s;
}

Manifest base_manifest(const std::vector<std::string>& args,
                       const std::string& command) {
  return {{"command", command},
          {"command_line", join_args(args)},
          {"version", POLYTESS_VERSION},
          {"compiler", __VERSION__},
          {"timestamp", utc_timestamp()}};
}

void open_output(std::ofstream& f, const std::string& path) {
  f.open(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
}

void finish_output(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void emit_manifest(const std::string& path, const Manifest& m) {
  if (!write_manifest(path, m)) {
    throw IoError("cannot write manifest '" + path + ".manifest'");
  }
}

// ---------------------------------------------------------------------------

struct NamedValue {
  std::string quantity;
  AnalyticValue value;
};

std::vector<NamedValue> analytic_values(const std::string& spec) {
  const DirectionalDistribution g = parse_dist(spec);
  const std::string head = spec.substr(0, spec.find(':'));
  try {
    if (head == "unif") {
      return {{"p3", p3_uniform()}, {"p4", p4_uniform()}};
    }
    if (head == "gk") {
      return {{"p3", p3_gk(static_cast<int>(g.atom_count()))}};
    }
    if (head == "g3") {
      return {{"p3", p3_g3(g.weights()[0], g.weights()[1])}};
    }
    if (head == "g4") {
      const auto& w = g.weights();
      return {{"p3", p3_g4(w[0], w[1], w[2])}};
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("no closed form available for '" + spec + "'");
}

int cmd_analytic(const AnalyticArgs& a, std::ostream& out) {
  const bool by_dist = !a.dist.empty();
  const bool by_range = a.k_min != 0 || a.k_max != 0;
  if (by_dist == by_range) {
    throw UsageError("give either --dist or --k-min/--k-max");
  }
  const char sep = a.format == "tsv" ? '\t' : ',';

  if (by_dist) {
    const auto values = analytic_values(a.dist);
    if (a.format == "pretty") {
      for (const auto& v : values) {
        out << v.quantity << '(' << a.dist << ") = "
            << format_number(v.value.value) << "  [" << to_string(v.value.form);
        if (v.value.error_bound > 0.0) {
          out << ", error <= " << format_number(v.value.error_bound, 3);
        }
        out << "]\n";
      }
      return kExitOk;
    }
    out << "dist" << sep << "quantity" << sep << "value" << sep << "form"
        << sep << "error_bound\n";
    for (const auto& v : values) {
      out << a.dist << sep << v.quantity << sep << format_number(v.value.value)
          << sep << to_string(v.value.form) << sep
          << format_number(v.value.error_bound, 3) << '\n';
    }
    return kExitOk;
  }

  if (a.k_min < 3 || a.k_max < a.k_min) {
    throw UsageError("k range must satisfy 3 <= k-min <= k-max");
  }
  const auto rows = gk_table(a.k_min, a.k_max);
  if (a.format == "csv") {
    write_gk_table_csv(out, rows);
    return kExitOk;
  }
  if (a.format == "tsv") {
    out << "k\tp3_exact\tp3_formula_closed\n";
    for (const auto& r : rows) {
      out << r.k << '\t' << format_number(r.p3) << '\t';
      if (!std::isnan(r.closed_form)) out << format_number(r.closed_form);
      out << '\n';
    }
    return kExitOk;
  }
  out << std::left << std::setw(6) << "k" << std::setw(18) << "p3"
      << "closed form\n";
  for (const auto& r : rows) {
    out << std::setw(6) << r.k << std::setw(18) << format_number(r.p3)
        << (std::isnan(r.closed_form) ? "-" : format_number(r.closed_form))
        << '\n';
  }
  return kExitOk;
}

SimulationConfig make_config(double radius, double gamma, std::uint64_t seed,
                             int reps) {
  SimulationConfig cfg;
  cfg.window_radius = radius;
  cfg.gamma = gamma;
  cfg.seed = seed;
  cfg.replicates = reps;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int cmd_simulate(const SimulateArgs& a, unsigned threads,
                 const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  const DirectionalDistribution g = parse_dist(a.dist);
  const SimulationConfig cfg = make_config(a.radius, a.gamma, a.seed, a.reps);
  const auto results = simulate_windows(g, cfg, threads);
  const WindowSummary s = summarize(results);

  std::ostringstream summary;
  summary << "pooled_proportion=" << format_number(s.proportion)
          << " stderr=" << format_number(s.standard_error)
          << " replicates=" << s.replicates << " cells=" << s.n_cells
          << " triangles=" << s.n_triangles
          << " euler_ok=" << (s.all_euler_ok ? 1 : 0)
          << " max_area_rel_error=" << format_number(s.max_area_rel_error, 3)
          << '\n';

  if (a.out.empty()) {
    write_replicate_csv(out, results);
    err << summary.str();
    return kExitOk;
  }
  std::ofstream f;
  open_output(f, a.out);
  write_replicate_csv(f, results);
  finish_output(f, a.out);
  Manifest m = base_manifest(args, "simulate");
  m.insert(m.end(), {{"dist", g.label()},
                     {"radius", format_number(a.radius, 17)},
                     {"gamma", format_number(a.gamma, 17)},
                     {"seed", std::to_string(a.seed)},
                     {"replicates", std::to_string(a.reps)},
                     {"output", a.out}});
  emit_manifest(a.out, m);
  out << summary.str();
  return kExitOk;
}

int cmd_typical(const TypicalArgs& a, unsigned threads,
                const std::vector<std::string>& args, std::ostream& out) {
  const DirectionalDistribution g = parse_dist(a.dist);
  if (a.samples < 1) throw UsageError("--samples must be at least 1");
  if (!(a.gamma > 0.0) || !std::isfinite(a.gamma)) {
    throw UsageError("--gamma must be positive");
  }

  if (a.mode == "weight") {
    std::vector<AuditRow> rows;
    const EstimateResult r = estimate_p3_by_weighting(
        g, a.samples, a.seed, threads, a.audit.empty() ? nullptr : &rows);
    out << "mode=weight dist=" << g.label() << " samples=" << r.n_samples
        << " seed=" << r.seed << '\n'
        << "p3=" << format_number(r.estimate)
        << " stderr=" << format_number(r.standard_error) << '\n';
    if (!a.audit.empty()) {
      std::ofstream f;
      open_output(f, a.audit);
      write_audit_csv(f, rows);
      finish_output(f, a.audit);
      Manifest m = base_manifest(args, "typical");
      m.insert(m.end(), {{"dist", g.label()},
                         {"mode", a.mode},
                         {"samples", std::to_string(a.samples)},
                         {"seed", std::to_string(a.seed)},
                         {"output", a.audit}});
      emit_manifest(a.audit, m);
    }
    return kExitOk;
  }

  if (!a.audit.empty()) throw UsageError("--audit applies to --mode weight");
  const VertexDistribution d =
      typical_cell_vertex_distribution(g, a.gamma, a.samples, a.seed, threads);
  out << "mode=full-cell dist=" << g.label() << " samples=" << d.n_samples
      << " seed=" << a.seed << " gamma=" << format_number(a.gamma)
      << " box_overflows=" << d.box_overflows << '\n'
      << "mean_vertices=" << format_number(d.mean_vertices.estimate)
      << " stderr=" << format_number(d.mean_vertices.standard_error) << '\n'
      << "vertices,count,share,stderr\n";
  for (const auto& [v, count] : d.histogram) {
    const EstimateResult& s = d.share.at(v);
    out << v << ',' << count << ',' << format_number(s.estimate) << ','
        << format_number(s.standard_error) << '\n';
  }
  return kExitOk;
}

int cmd_render(const RenderArgs& a, const std::vector<std::string>& args,
               std::ostream& out) {
  const DirectionalDistribution g = parse_dist(a.dist);
  const SimulationConfig cfg = make_config(a.radius, a.gamma, a.seed, 1);
  const auto lines = replicate_lines(g, cfg, 0);
  const CellComplex cx = build_arrangement(lines, cfg.window_radius);
  std::vector<ConvexPolygon> triangles;
  for (auto& cell : interior_cells(cx)) {
    if (cell.size() == 3) triangles.push_back(std::move(cell));
  }
  const std::string svg = render_svg(lines, triangles, cfg.window_radius);

  std::ofstream f;
  open_output(f, a.out);
  f << svg;
  finish_output(f, a.out);
  Manifest m = base_manifest(args, "render");
  m.insert(m.end(), {{"dist", g.label()},
                     {"radius", format_number(a.radius, 17)},
                     {"gamma", format_number(a.gamma, 17)},
                     {"seed", std::to_string(a.seed)},
                     {"replicates", "1"},
                     {"output", a.out}});
  emit_manifest(a.out, m);
  out << "wrote " << a.out << " lines=" << lines.size()
      << " triangles=" << triangles.size() << '\n';
  return kExitOk;
}

int cmd_quadrature(const QuadratureArgs& a, std::ostream& out) {
  if (a.grid < 16) throw UsageError("--grid must be at least 16");
  AnalyticValue v;
  if (a.which == "limit") {
    v = limit_integral(a.grid);
  } else if (a.which == "iso-double") {
    v = iso_double_integral(a.grid);
  } else {
    v = iso_single_integral(a.grid);
  }
  out << "which=" << a.which << " grid=" << a.grid << '\n'
      << "value=" << format_number(v.value, 15)
      << " error_bound=" << format_number(v.error_bound, 3) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Poisson line tessellations: triangle probabilities", "polytess"};
  app.set_version_flag("--version", POLYTESS_VERSION);
  app.require_subcommand(1);

  AnalyticArgs an;
  auto* analytic = app.add_subcommand("analytic", "exact and series values");
  analytic->add_option("--dist", an.dist, "distribution spec");
  analytic->add_option("--k-min", an.k_min, "first k of a G_k table");
  analytic->add_option("--k-max", an.k_max, "last k of a G_k table");
  analytic->add_option("--format", an.format, "csv, tsv or pretty")
      ->check(CLI::IsMember({"csv", "tsv", "pretty"}));

  unsigned threads = 0;
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads,
                    "worker threads (default: POLYTESS_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  };

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "window estimator");
  simulate->add_option("--dist", sim.dist)->required();
  simulate->add_option("--radius", sim.radius)->required();
  simulate->add_option("--gamma", sim.gamma);
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--reps", sim.reps);
  simulate->add_option("--out", sim.out, "per-replicate CSV path");
  add_threads(simulate);

  TypicalArgs typ;
  auto* typical = app.add_subcommand("typical", "typical-cell estimators");
  typical->add_option("--dist", typ.dist)->required();
  typical->add_option("--samples", typ.samples)->required();
  typical->add_option("--seed", typ.seed);
  typical->add_option("--mode", typ.mode)
      ->check(CLI::IsMember({"weight", "full-cell"}));
  typical->add_option("--gamma", typ.gamma);
  typical->add_option("--audit", typ.audit, "CSV of construction draws");
  add_threads(typical);

  RenderArgs ren;
  auto* render = app.add_subcommand("render", "SVG of one window");
  render->add_option("--dist", ren.dist)->required();
  render->add_option("--radius", ren.radius)->required();
  render->add_option("--gamma", ren.gamma);
  render->add_option("--seed", ren.seed);
  render->add_option("--out", ren.out)->required();

  QuadratureArgs quad;
  auto* quadrature = app.add_subcommand("quadrature", "numerical integrals");
  quadrature->add_option("--which", quad.which)
      ->required()
      ->check(CLI::IsMember({"limit", "iso-double", "iso-single"}));
  quadrature->add_option("--grid", quad.grid);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << POLYTESS_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (threads == 0) threads = default_threads();
    if (*analytic) return cmd_analytic(an, out);
    if (*simulate) return cmd_simulate(sim, threads, args, out, err);
    if (*typical) return cmd_typical(typ, threads, args, out);
    if (*render) return cmd_render(ren, args, out);
    if (*quadrature) return cmd_quadrature(quad, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace polytess::cli
