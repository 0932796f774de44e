// The typical cell of a stationary Poisson line tessellation.
//
// The cell is anchored at its lowest vertex v1 = (0, 0). Two edges leave v1
// at angles phi0 < phi1 in [0, pi); the edge along phi1 has length z1 and
// ends at v2, where the boundary turns clockwise onto direction phi2 in
// [phi1 - pi, phi1). When phi2 < phi0 the three lines close a triangle
// Delta = (v1, v2, v3); otherwise they bound an unbounded region. Further
// lines that miss the edge v1 v2 cut the region down to the cell.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <variant>
#include <vector>

#include "polytess/directional.hpp"
#include "polytess/geometry.hpp"
#include "polytess/rng.hpp"

namespace polytess {

/// The construction variables (Phi0, Phi1, Z1, Phi2).
struct ConstructionDraw {
  Direction phi0;
  Direction phi1;
  double z1 = 0.0;
  Direction phi2;
  /// (i*k + j)*k + l for the atoms (i, j, l) of (phi0, phi1, phi2) of a
  /// discrete law; -1 for the uniform law.
  int config_case = -1;
  bool closes_triangle = false;
};

struct TypicalTriangleVars {
  Direction phi0, phi1, phi2, phi3;  ///< phi3 = phi0 - pi
  double z1 = 0.0, z2 = 0.0, z3 = 0.0;
  Point v1, v2, v3;
  int config_case = -1;
};

/// A draw whose three lines do not close a triangle (the cell has at least
/// four vertices).
struct NotTriangleConfig {
  ConstructionDraw draw;
};

class NegativeExponentGuard : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BoxOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lower end of the range of Phi2: phi1 - pi, whatever z1.
double phi2_lower_bound(double phi1);

/// Draws (Phi0, Phi1, Z1, Phi2) for intensity gamma. For pseudo-isotropic
/// laws the picture is rotated so that phi0 = 0.
ConstructionDraw draw_construction(const DirectionalDistribution& g,
                                   double gamma, Rng& rng);

/// Completes a triangle draw (z2, z3, phi3 and the vertices).
TypicalTriangleVars complete_triangle(const ConstructionDraw& d);

/// draw_construction with gamma = 1, completed when it closes a triangle.
std::variant<TypicalTriangleVars, NotTriangleConfig>
sample_typical_triangle_vars(const DirectionalDistribution& g, Rng& rng);

/// Probability that no further line hits the edges v2 v3 and v3 v1:
/// exp(-gamma/2 (lambda(phi2) z2 + lambda(phi3) z3 - lambda(phi1) z1)).
double triangle_weight(const DirectionalDistribution& g,
                       const TypicalTriangleVars& t, double gamma = 1.0);

struct EstimateResult {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct AuditRow {
  std::uint64_t sample = 0;
  int config_case = -1;
  double phi0 = 0.0, phi1 = 0.0, z1 = 0.0, phi2 = 0.0;
  double weight = 0.0;
  bool is_triangle = false;
};

/// Mean of triangle_weight over n construction draws (0 for non-triangle
/// draws). Samples are split into fixed chunks with their own streams, so
/// the result does not depend on `threads`.
EstimateResult estimate_p3_by_weighting(const DirectionalDistribution& g,
                                        std::uint64_t n, std::uint64_t seed,
                                        unsigned threads = 1,
                                        std::vector<AuditRow>* audit = nullptr);

/// Header `sample,config_case,phi0,phi1,z1,phi2,weight,is_triangle` and rows.
void write_audit_csv(std::ostream& out, const std::vector<AuditRow>& rows);

/// One realisation of the typical cell, anchored at the origin. Throws
/// BoxOverflow if an unbounded start region still touches its bounding box
/// after 8 doublings.
ConvexPolygon sample_typical_cell(const DirectionalDistribution& g,
                                  double gamma, Rng& rng);

/// Full cell for a given construction draw.
ConvexPolygon typical_cell_from_draw(const DirectionalDistribution& g,
                                     double gamma, const ConstructionDraw& d,
                                     Rng& rng);

struct VertexDistribution {
  std::map<std::size_t, std::uint64_t> histogram;  ///< vertex count -> cells
  std::uint64_t n_samples = 0;   ///< cells tabulated
  std::uint64_t box_overflows = 0;  ///< draws excluded by BoxOverflow
  EstimateResult mean_vertices;
  std::map<std::size_t, EstimateResult> share;  ///< per vertex count
};

VertexDistribution typical_cell_vertex_distribution(
    const DirectionalDistribution& g, double gamma, std::uint64_t n,
    std::uint64_t seed, unsigned threads = 1);

}  // namespace polytess
