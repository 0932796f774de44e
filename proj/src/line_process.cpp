#include "polytess/line_process.hpp"

#include <cmath>
#include <random>

namespace polytess {

void SimulationConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be positive");
  }
  if (!(window_radius > 0.0) || !std::isfinite(window_radius)) {
    throw std::invalid_argument("window radius must be positive");
  }
  if (replicates < 1) {
    throw std::invalid_argument("replicates must be at least 1");
  }
}

namespace {

long poisson_count(double mean, Rng& rng) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<long> dist(mean);
  return dist(rng);
}

Line line_at_offset(const Direction& dir, Point center, double offset) {
  const double t = dir.angle;
  const double base = -center.x * std::sin(t) + center.y * std::cos(t);
  return Line{t, base + offset, dir.atom};
}

void check_edge_index(int edge_index) {
  if (edge_index < 1 || edge_index > 3) {
    throw std::invalid_argument("edge index must be 1, 2 or 3");
  }
}

void check_triangle(const ConvexPolygon& tri) {
  if (tri.size() != 3) {
    throw DegenerateTriangle("polygon is not a triangle");
  }
  double longest = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    longest = std::max(longest, norm(tri[(i + 1) % 3] - tri[i]));
  }
  if (!(tri.area() > 1e-12 * longest * longest)) {
    throw DegenerateTriangle("triangle has near-zero area");
  }
}

}  // namespace

std::vector<Line> sample_lines_hitting_disk(const DirectionalDistribution& g,
                                            double gamma, Point center,
                                            double radius, Rng& rng) {
  const long n = poisson_count(2.0 * gamma * radius, rng);
  std::vector<Line> lines;
  lines.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const Direction dir = sample_direction(g, rng);
    const double offset = radius * (2.0 * uniform01(rng) - 1.0);
    lines.push_back(line_at_offset(dir, center, offset));
  }
  return lines;
}

std::vector<Line> sample_lines_hitting_disk(const DirectionalDistribution& g,
                                            const SimulationConfig& cfg,
                                            Rng& rng) {
  return sample_lines_hitting_disk(g, cfg.gamma, Point{0.0, 0.0},
                                   cfg.window_radius, rng);
}

std::vector<Line> sample_lines_in_annulus(const DirectionalDistribution& g,
                                          double gamma, Point center,
                                          double inner, double outer,
                                          Rng& rng) {
  const long n = poisson_count(2.0 * gamma * (outer - inner), rng);
  std::vector<Line> lines;
  lines.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const Direction dir = sample_direction(g, rng);
    double offset = inner + (outer - inner) * uniform01(rng);
    if (uniform01(rng) < 0.5) offset = -offset;
    lines.push_back(line_at_offset(dir, center, offset));
  }
  return lines;
}

std::vector<Line> replicate_lines(const DirectionalDistribution& g,
                                  const SimulationConfig& cfg,
                                  std::uint64_t replicate) {
  Rng rng = make_stream(cfg.seed, replicate);
  return sample_lines_hitting_disk(g, cfg, rng);
}

std::pair<Point, double> circumscribed_disk(const ConvexPolygon& tri) {
  const Point a = tri[0];
  const Point b = tri[1] - a;
  const Point c = tri[2] - a;
  const double den = 2.0 * cross(b, c);
  const double bb = dot(b, b);
  const double cc = dot(c, c);
  const Point rel{(c.y * bb - b.y * cc) / den, (b.x * cc - c.x * bb) / den};
  return {a + rel, norm(rel)};
}

std::vector<Line> sample_lines_hitting_triangle_excluding_edge(
    const DirectionalDistribution& g, double gamma, const ConvexPolygon& tri,
    int edge_index, Rng& rng) {
  check_edge_index(edge_index);
  check_triangle(tri);
  const auto [center, radius] = circumscribed_disk(tri);
  // slightly enlarged so rounding never drops a line that grazes a vertex
  const double r = radius * (1.0 + 1e-12);
  const Point e0 = tri[static_cast<std::size_t>(edge_index - 1)];
  const Point e1 = tri[static_cast<std::size_t>(edge_index % 3)];

  std::vector<Line> kept;
  for (const Line& l : sample_lines_hitting_disk(g, gamma, center, r, rng)) {
    const double s0 = l.signed_distance(tri[0]);
    const double s1 = l.signed_distance(tri[1]);
    const double s2 = l.signed_distance(tri[2]);
    const bool misses = (s0 > 0.0 && s1 > 0.0 && s2 > 0.0) ||
                        (s0 < 0.0 && s1 < 0.0 && s2 < 0.0);
    if (misses || segment_hits_line(e0, e1, l)) continue;
    kept.push_back(l);
  }
  return kept;
}

HitMean mean_hits_excluding_edge(const DirectionalDistribution& g, double gamma,
                                 const ConvexPolygon& tri, int edge_index) {
  check_edge_index(edge_index);
  check_triangle(tri);
  double kept = 0.0;
  double excluded = 0.0;
  for (int e = 1; e <= 3; ++e) {
    const Point a = tri[static_cast<std::size_t>(e - 1)];
    const Point b = tri[static_cast<std::size_t>(e % 3)];
    const Point v = b - a;
    const double weighted = norm(v) * lambda_theta(g, std::atan2(v.y, v.x));
    if (e == edge_index) {
      excluded = weighted;
    } else {
      kept += weighted;
    }
  }
  double mean = 0.5 * gamma * (kept - excluded);
  // an edge can shadow the whole triangle for every atom; keep rounding
  // from turning that exact zero negative
  if (mean < 0.0 && mean > -1e-12 * gamma * (kept + excluded)) mean = 0.0;
  return {mean, mean >= 0.0};
}

}  // namespace polytess
