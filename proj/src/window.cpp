#include "polytess/window.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "polytess/format.hpp"
#include "polytess/parallel.hpp"

namespace polytess {

std::string format_number(double x, int digits) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

ReplicateResult run_window_replicate(const DirectionalDistribution& g,
                                     const SimulationConfig& cfg,
                                     std::uint64_t replicate) {
  const auto lines = replicate_lines(g, cfg, replicate);
  const CellComplex cx = build_arrangement(lines, cfg.window_radius);
  const auto cells = interior_cells(cx);
  const CellStats stats = cell_statistics(cells);

  ReplicateResult r;
  r.replicate = replicate;
  r.seed = derive_seed(cfg.seed, replicate);
  r.radius = cfg.window_radius;
  r.gamma = cfg.gamma;
  r.n_lines = lines.size();
  r.n_cells = stats.n_cells_interior;
  r.n_triangles = stats.n_triangles;
  r.proportion = stats.triangle_proportion;
  r.mean_vertices = stats.mean_vertex_count;
  r.euler_ok = euler_check(cx);
  const double disk = kPi * cfg.window_radius * cfg.window_radius;
  r.area_rel_error = std::abs(total_window_area(cx) - disk) / disk;
  return r;
}

std::vector<ReplicateResult> simulate_windows(const DirectionalDistribution& g,
                                              const SimulationConfig& cfg,
                                              unsigned threads) {
  cfg.validate();
  std::vector<ReplicateResult> results(static_cast<std::size_t>(cfg.replicates));
  parallel_for(results.size(), threads, [&](std::size_t i) {
    results[i] = run_window_replicate(g, cfg, i);
  });
  return results;
}

WindowSummary summarize(const std::vector<ReplicateResult>& results) {
  WindowSummary s;
  s.replicates = results.size();
  for (const auto& r : results) {
    s.n_cells += r.n_cells;
    s.n_triangles += r.n_triangles;
    s.all_euler_ok = s.all_euler_ok && r.euler_ok;
    s.max_area_rel_error = std::max(s.max_area_rel_error, r.area_rel_error);
  }
  if (s.n_cells == 0) return s;
  const double cells = static_cast<double>(s.n_cells);
  s.proportion = static_cast<double>(s.n_triangles) / cells;
  const double n = static_cast<double>(results.size());
  if (results.size() < 2) {
    s.standard_error = std::sqrt(s.proportion * (1.0 - s.proportion) / cells);
    return s;
  }
  double ss = 0.0;
  for (const auto& r : results) {
    const double resid = static_cast<double>(r.n_triangles) -
                         s.proportion * static_cast<double>(r.n_cells);
    ss += resid * resid;
  }
  s.standard_error = std::sqrt(n / (n - 1.0) * ss) / cells;
  return s;
}

void write_replicate_csv(std::ostream& out,
                         const std::vector<ReplicateResult>& results) {
  out << "replicate,seed,R,gamma,n_lines,n_cells,n_triangles,proportion,"
         "mean_vertices\n";
  for (const auto& r : results) {
    out << r.replicate << ',' << r.seed << ',' << format_number(r.radius) << ','
        << format_number(r.gamma) << ',' << r.n_lines << ',' << r.n_cells << ','
        << r.n_triangles << ',' << format_number(r.proportion) << ','
        << format_number(r.mean_vertices) << '\n';
  }
}

}  // namespace polytess
