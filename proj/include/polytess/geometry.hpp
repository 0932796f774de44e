// Planar primitives: points, lines in (theta, d) form and convex polygons.
//
// A line with orientation theta in [0, pi) and offset d is the point set
//
//     { (x, y) : -x sin(theta) + y cos(theta) = d },
//
// so d is the signed coordinate of the line along its left normal
// n(theta) = (-sin theta, cos theta).

#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace polytess {

inline constexpr double kPi = std::numbers::pi;

/// Parallel tolerance for lines with continuous directions, in radians.
inline constexpr double kParallelEps = 1e-12;

/// Relative tolerance for collinear-vertex cleanup.
inline constexpr double kCollinearEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);

/// Unit vector pointing in direction `angle` (radians from the eastern axis).
Point unit_vector(double angle);

/// Reduces an angle modulo pi into [0, pi).
double normalize_direction(double angle);

struct Line {
  double theta = 0.0;  ///< orientation in [0, pi)
  double d = 0.0;      ///< signed offset along the left normal
  /// Index of the direction atom the line was drawn from, -1 for continuous
  /// directions. Lines sharing an atom are parallel by construction.
  int atom = -1;

  Point direction() const;
  Point normal() const;
  /// Signed distance of `p` to the line (positive on the normal side).
  double signed_distance(Point p) const;
};

/// Builds a canonical line. `theta` is reduced to [0, pi); when that
/// reduction flips the orientation the sign of `d` flips with it.
Line make_line(double theta, double d, int atom = -1);

/// Line through `p` with the given direction angle.
Line line_through(Point p, double angle, int atom = -1);

/// True when the two lines are parallel: identical atoms for discrete
/// directions, |sin(dtheta)| < kParallelEps otherwise.
bool are_parallel(const Line& a, const Line& b);

/// Intersection point of two lines; std::nullopt signals parallel lines.
std::optional<Point> intersect_lines(const Line& a, const Line& b);

class ConvexPolygon {
 public:
  /// Validates and stores `vertices`: at least three, counter-clockwise,
  /// strictly convex (collinear runs are removed first), positive area.
  /// Throws std::invalid_argument otherwise.
  explicit ConvexPolygon(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }

  double area() const;
  double perimeter() const;
  Point centroid() const;
  /// Largest distance between the centroid and a vertex.
  double radius_about(Point c) const;

 private:
  struct Unchecked {};
  ConvexPolygon(Unchecked, std::vector<Point> vertices)
      : vertices_(std::move(vertices)) {}

  friend std::optional<ConvexPolygon> clip_by_side(const ConvexPolygon&,
                                                   const Line&, int);

  std::vector<Point> vertices_;
};

/// Axis-aligned square [cx-h, cx+h] x [cy-h, cy+h].
ConvexPolygon make_square(Point center, double half_side);

/// Removes repeated points and vertices whose turn is below the collinear
/// tolerance. Returns the cleaned ring (possibly with fewer than 3 points).
std::vector<Point> remove_collinear(std::vector<Point> ring,
                                    double rel_eps = kCollinearEps);

/// Vertex minimal in (x, then y) order.
Point lex_min_vertex(const ConvexPolygon& p);

/// Vertex minimal in (y, then x) order: the anchor vertex of a cell whose
/// two incident edges both leave it at angles in [0, pi).
Point lowest_vertex(const ConvexPolygon& p);

class AnchorOnLine : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Intersection of `p` with the closed half-plane bounded by `l` on the side
/// `side` (+1: signed_distance >= 0, -1: <= 0). std::nullopt when the
/// intersection has zero area.
std::optional<ConvexPolygon> clip_by_side(const ConvexPolygon& p, const Line& l,
                                          int side);

/// p intersected with the closed half-plane bounded by `l` that contains
/// `anchor`. Throws AnchorOnLine if |signed distance of anchor| <= eps_on.
std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& p,
                                            const Line& l, Point anchor,
                                            double eps_on = 1e-9);

/// Length of { -x sin(theta) + y cos(theta) : (x, y) in p }.
double projection_width(const ConvexPolygon& p, double theta);

/// Whether the closed segment [a, b] meets the line.
bool segment_hits_line(Point a, Point b, const Line& l);

}  // namespace polytess
