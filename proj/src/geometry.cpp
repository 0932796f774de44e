#include "polytess/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace polytess {

double norm(Point a) { return std::hypot(a.x, a.y); }

Point unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

double normalize_direction(double angle) {
  double r = std::fmod(angle, kPi);
  if (r < 0.0) r += kPi;
  // fmod of a value just below a multiple of pi can round up to pi itself
  if (r >= kPi) r = 0.0;
  return r;
}

Point Line::direction() const { return unit_vector(theta); }

Point Line::normal() const { return {-std::sin(theta), std::cos(theta)}; }

double Line::signed_distance(Point p) const {
  return -p.x * std::sin(theta) + p.y * std::cos(theta) - d;
}

Line make_line(double theta, double d, int atom) {
  const double t = normalize_direction(theta);
  // theta and theta + pi share the line but have opposite normals
  const double turns = std::round((theta - t) / kPi);
  const bool flipped = std::fmod(std::abs(turns), 2.0) == 1.0;
  return Line{t, flipped ? -d : d, atom};
}

Line line_through(Point p, double angle, int atom) {
  const double t = normalize_direction(angle);
  return Line{t, -p.x * std::sin(t) + p.y * std::cos(t), atom};
}

bool are_parallel(const Line& a, const Line& b) {
  if (a.atom >= 0 && b.atom >= 0) return a.atom == b.atom;
  return std::abs(std::sin(a.theta - b.theta)) < kParallelEps;
}

std::optional<Point> intersect_lines(const Line& a, const Line& b) {
  if (are_parallel(a, b)) return std::nullopt;
  // Solve n_a . p = d_a, n_b . p = d_b with n = (-sin t, cos t).
  const double sa = std::sin(a.theta), ca = std::cos(a.theta);
  const double sb = std::sin(b.theta), cb = std::cos(b.theta);
  const double det = -sa * cb + ca * sb;  // = sin(b.theta - a.theta)
  const double x = (a.d * cb - ca * b.d) / det;
  const double y = (-sa * b.d + sb * a.d) / det;
  return Point{x, y};
}

namespace {

double ring_area(std::span<const Point> v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    twice += cross(v[i], v[(i + 1) % v.size()]);
  }
  return 0.5 * twice;
}

double ring_scale(std::span<const Point> v) {
  double s = 0.0;
  for (const Point& p : v) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

}  // namespace

std::vector<Point> remove_collinear(std::vector<Point> ring, double rel_eps) {
  const double dup_eps = 1e-13 * std::max(ring_scale(ring), 1e-300);
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
      const std::size_t n = ring.size();
      const Point a = ring[(i + n - 1) % n];
      const Point b = ring[i];
      const Point c = ring[(i + 1) % n];
      const Point ab = b - a;
      const Point bc = c - b;
      const double lab = norm(ab);
      const double lbc = norm(bc);
      if (lab <= dup_eps || std::abs(cross(ab, bc)) <= rel_eps * lab * lbc) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  if (ring.size() == 2 && norm(ring[1] - ring[0]) <= dup_eps) ring.pop_back();
  return ring;
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices)
    : vertices_(remove_collinear(std::move(vertices))) {
  const auto& v = vertices_;
  if (v.size() < 3) {
    throw std::invalid_argument("convex polygon needs at least 3 vertices");
  }
  double turning = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point e0 = v[(i + 1) % v.size()] - v[i];
    const Point e1 = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
    const double c = cross(e0, e1);
    if (!(c > 0.0)) {
      throw std::invalid_argument(
          "polygon is not strictly convex and counter-clockwise");
    }
    turning += std::atan2(c, dot(e0, e1));
  }
  if (std::abs(turning - 2.0 * kPi) > 1e-6) {
    throw std::invalid_argument("polygon boundary winds more than once");
  }
  if (!(ring_area(v) > 0.0)) {
    throw std::invalid_argument("polygon has no area");
  }
}

double ConvexPolygon::area() const { return ring_area(vertices_); }

double ConvexPolygon::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    s += norm(vertices_[(i + 1) % size()] - vertices_[i]);
  }
  return s;
}

Point ConvexPolygon::centroid() const {
  double cx = 0.0, cy = 0.0, a2 = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const Point p = vertices_[i];
    const Point q = vertices_[(i + 1) % size()];
    const double w = cross(p, q);
    a2 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (3.0 * a2), cy / (3.0 * a2)};
}

double ConvexPolygon::radius_about(Point c) const {
  double r = 0.0;
  for (const Point& p : vertices_) r = std::max(r, norm(p - c));
  return r;
}

ConvexPolygon make_square(Point center, double half_side) {
  const double h = half_side;
  return ConvexPolygon({{center.x - h, center.y - h},
                        {center.x + h, center.y - h},
                        {center.x + h, center.y + h},
                        {center.x - h, center.y + h}});
}

Point lex_min_vertex(const ConvexPolygon& p) {
  const auto v = p.vertices();
  return *std::min_element(v.begin(), v.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
}

Point lowest_vertex(const ConvexPolygon& p) {
  const auto v = p.vertices();
  return *std::min_element(v.begin(), v.end(), [](Point a, Point b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  });
}

std::optional<ConvexPolygon> clip_by_side(const ConvexPolygon& p, const Line& l,
                                          int side) {
  const auto v = p.vertices();
  const std::size_t n = v.size();
  std::vector<double> s(n);
  bool any_out = false;
  bool any_in = false;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = side * l.signed_distance(v[i]);
    any_out = any_out || s[i] < 0.0;
    any_in = any_in || s[i] > 0.0;
  }
  if (!any_out) return p;
  if (!any_in) return std::nullopt;

  std::vector<Point> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (s[i] >= 0.0) out.push_back(v[i]);
    if ((s[i] > 0.0 && s[j] < 0.0) || (s[i] < 0.0 && s[j] > 0.0)) {
      const double t = s[i] / (s[i] - s[j]);
      out.push_back(v[i] + t * (v[j] - v[i]));
    }
  }
  out = remove_collinear(std::move(out));
  if (out.size() < 3) return std::nullopt;
  const double a = ring_area(out);
  if (!(a > 1e-14 * p.area())) return std::nullopt;
  return ConvexPolygon(ConvexPolygon::Unchecked{}, std::move(out));
}

std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& p,
                                            const Line& l, Point anchor,
                                            double eps_on) {
  const double s = l.signed_distance(anchor);
  if (std::abs(s) <= eps_on) {
    throw AnchorOnLine("clip anchor lies on the clipping line");
  }
  return clip_by_side(p, l, s > 0.0 ? 1 : -1);
}

double projection_width(const ConvexPolygon& p, double theta) {
  const double t = normalize_direction(theta);
  const double sn = std::sin(t), cs = std::cos(t);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const Point& q : p.vertices()) {
    const double d = -q.x * sn + q.y * cs;
    if (first) {
      lo = hi = d;
      first = false;
    } else {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  return hi - lo;
}

bool segment_hits_line(Point a, Point b, const Line& l) {
  const double sa = l.signed_distance(a);
  const double sb = l.signed_distance(b);
  return (sa <= 0.0 && sb >= 0.0) || (sa >= 0.0 && sb <= 0.0);
}

}  // namespace polytess
