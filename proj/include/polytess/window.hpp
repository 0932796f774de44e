// Window estimator of the triangle proportion: simulate the line process in
// B_R, build the arrangement and count the cells lying inside the window.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "polytess/arrangement.hpp"
#include "polytess/directional.hpp"
#include "polytess/line_process.hpp"

namespace polytess {

struct ReplicateResult {
  std::uint64_t replicate = 0;
  std::uint64_t seed = 0;  ///< seed of the replicate's child stream
  double radius = 0.0;
  double gamma = 0.0;
  std::size_t n_lines = 0;
  std::size_t n_cells = 0;
  std::size_t n_triangles = 0;
  double proportion = 0.0;
  double mean_vertices = 0.0;
  bool euler_ok = false;
  double area_rel_error = 0.0;  ///< |sum of face areas - pi R^2| / (pi R^2)
};

/// One replicate, drawn from child stream `replicate` of cfg.seed.
ReplicateResult run_window_replicate(const DirectionalDistribution& g,
                                     const SimulationConfig& cfg,
                                     std::uint64_t replicate);

/// cfg.replicates independent replicates in replicate order. The result does
/// not depend on `threads`.
std::vector<ReplicateResult> simulate_windows(const DirectionalDistribution& g,
                                              const SimulationConfig& cfg,
                                              unsigned threads = 1);

struct WindowSummary {
  std::size_t replicates = 0;
  std::size_t n_cells = 0;
  std::size_t n_triangles = 0;
  /// Total triangles over total interior cells.
  double proportion = 0.0;
  /// Delta-method standard error of the pooled ratio across replicates;
  /// binomial when there is a single replicate.
  double standard_error = 0.0;
  bool all_euler_ok = true;
  double max_area_rel_error = 0.0;
};

WindowSummary summarize(const std::vector<ReplicateResult>& results);

/// Header `replicate,seed,R,gamma,n_lines,n_cells,n_triangles,proportion,mean_vertices`
/// followed by one row per replicate.
void write_replicate_csv(std::ostream& out,
                         const std::vector<ReplicateResult>& results);

}  // namespace polytess
