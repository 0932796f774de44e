// Planar subdivision of a disk window by a finite set of lines.
//
// Vertices are pairwise line intersections inside the disk plus the chord
// endpoints on the circle. Edges are chord pieces between consecutive
// vertices along each line and circular arcs between consecutive boundary
// vertices. Faces are traced on a half-edge structure; the face outside the
// disk is kept so that Euler's formula V - E + F = 2 can be checked.

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "polytess/geometry.hpp"

namespace polytess {

class CellComplex {
 public:
  struct Vertex {
    Point p;
    bool on_boundary = false;
  };
  struct HalfEdge {
    int from = -1;
    int to = -1;
    int twin = -1;
    int next = -1;
    int face = -1;
    int line = -1;          ///< index into the input lines, -1 for arcs
    double arc_span = 0.0;  ///< signed angle swept by an arc half-edge
  };
  struct Face {
    int first = -1;  ///< one half-edge of the boundary cycle
    std::size_t size = 0;
    double area = 0.0;  ///< signed; negative only for the outer face
    bool touches_boundary = false;
    bool outer = false;
  };

  double radius() const { return radius_; }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const HalfEdge> half_edges() const { return half_edges_; }
  std::span<const Face> faces() const { return faces_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return half_edges_.size() / 2; }
  /// Number of faces including the unbounded one.
  std::size_t face_count() const { return faces_.size(); }

  /// Half-edge indices of face `f` in traversal (counter-clockwise) order.
  std::vector<int> face_cycle(std::size_t f) const;

  /// Corner points of a face without arcs, merging consecutive edges that
  /// lie on the same input line.
  std::vector<Point> face_corners(std::size_t f) const;

 private:
  friend CellComplex build_arrangement(std::span<const Line> lines,
                                       double radius);
  double radius_ = 0.0;
  std::vector<Vertex> vertices_;
  std::vector<HalfEdge> half_edges_;
  std::vector<Face> faces_;
};

/// Subdivision of the disk of radius `radius` about the origin. Lines that
/// miss the open disk are ignored; intersection points closer than
/// 1e-9 * radius are merged into one vertex.
CellComplex build_arrangement(std::span<const Line> lines, double radius);

/// Faces whose closure stays at least 1e-9 * R inside the window.
std::vector<ConvexPolygon> interior_cells(const CellComplex& c);

/// V - E + F == 2, counting the outer face.
bool euler_check(const CellComplex& c);

/// Sum of the areas of all faces inside the window.
double total_window_area(const CellComplex& c);

struct CellStats {
  std::size_t n_cells_interior = 0;
  std::size_t n_triangles = 0;
  std::map<std::size_t, std::size_t> vertex_count_histogram;
  double triangle_proportion = 0.0;
  double mean_vertex_count = 0.0;
  std::vector<double> areas;
};

CellStats cell_statistics(std::span<const ConvexPolygon> cells);

}  // namespace polytess
