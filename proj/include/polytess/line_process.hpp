// Stationary Poisson line processes restricted to bounded regions.
//
// The process X(gamma, G) has intensity measure gamma * dd x G(dtheta) on
// line parameters (theta, d). A disk of radius r is hit exactly by lines with
// |d - <n(theta), center>| < r, a set of measure 2 gamma r for every G, so the
// restriction to the disk is a Poisson(2 gamma r) number of i.i.d. lines.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polytess/directional.hpp"
#include "polytess/geometry.hpp"
#include "polytess/rng.hpp"

namespace polytess {

struct SimulationConfig {
  double gamma = 1.0;          ///< lines per unit length of d
  double window_radius = 1.0;  ///< radius R of the disk window B_R
  std::uint64_t seed = 0;
  int replicates = 1;

  /// Throws std::invalid_argument unless gamma > 0, R > 0, replicates >= 1.
  void validate() const;
};

class DegenerateTriangle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lines of X(gamma, G) hitting the disk B(center, radius).
std::vector<Line> sample_lines_hitting_disk(const DirectionalDistribution& g,
                                            double gamma, Point center,
                                            double radius, Rng& rng);

/// Lines of X(gamma, G) hitting B_R centred at the origin.
std::vector<Line> sample_lines_hitting_disk(const DirectionalDistribution& g,
                                            const SimulationConfig& cfg,
                                            Rng& rng);

/// Lines hitting B(center, outer) but not B(center, inner); together with an
/// independent sample for B(center, inner) this is a sample for the larger
/// disk.
std::vector<Line> sample_lines_in_annulus(const DirectionalDistribution& g,
                                          double gamma, Point center,
                                          double inner, double outer, Rng& rng);

/// The line set of replicate `replicate`, drawn from its own child stream.
std::vector<Line> replicate_lines(const DirectionalDistribution& g,
                                  const SimulationConfig& cfg,
                                  std::uint64_t replicate);

/// Lines of X(gamma, G) that hit the triangle but miss its edge
/// `edge_index` (1-based; edge e joins vertex e-1 and vertex e mod 3 in the
/// polygon's vertex order). Sampled by thinning the lines of the
/// circumscribed disk. Throws DegenerateTriangle for near-zero area.
std::vector<Line> sample_lines_hitting_triangle_excluding_edge(
    const DirectionalDistribution& g, double gamma, const ConvexPolygon& tri,
    int edge_index, Rng& rng);

struct HitMean {
  double mean = 0.0;
  /// False when the excluded edge outweighs the other two, which no
  /// genuine triangle allows.
  bool valid = true;
};

/// (gamma/2) (sum over kept edges of t_i lambda(theta_i)
///            - t_e lambda(theta_e)).
HitMean mean_hits_excluding_edge(const DirectionalDistribution& g, double gamma,
                                 const ConvexPolygon& tri, int edge_index);

/// Circumcentre and circumradius of a triangle.
std::pair<Point, double> circumscribed_disk(const ConvexPolygon& tri);

}  // namespace polytess
