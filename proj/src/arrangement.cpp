#include "polytess/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace polytess {

namespace {

constexpr double kSnapRel = 1e-9;
constexpr double kBoundaryRel = 1e-9;

struct PoolPoint {
  Point p;
  int line_a = -1;
  double t_a = 0.0;
  int line_b = -1;  // -1: chord endpoint on the circle
  double t_b = 0.0;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

double wrap_angle(double a) {
  // into [-pi, pi)
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

}  // namespace

std::vector<int> CellComplex::face_cycle(std::size_t f) const {
  std::vector<int> cycle;
  const int start = faces_[f].first;
  int h = start;
  do {
    cycle.push_back(h);
    h = half_edges_[static_cast<std::size_t>(h)].next;
  } while (h != start);
  return cycle;
}

std::vector<Point> CellComplex::face_corners(std::size_t f) const {
  const auto cycle = face_cycle(f);
  const std::size_t n = cycle.size();
  std::vector<Point> corners;
  corners.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& h = half_edges_[static_cast<std::size_t>(cycle[i])];
    const auto& prev = half_edges_[static_cast<std::size_t>(cycle[(i + n - 1) % n])];
    if (h.line >= 0 && h.line == prev.line) continue;
    corners.push_back(vertices_[static_cast<std::size_t>(h.from)].p);
  }
  return corners;
}

CellComplex build_arrangement(std::span<const Line> lines, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  CellComplex cx;
  cx.radius_ = radius;
  const double snap = kSnapRel * radius;
  const double boundary_eps = kBoundaryRel * radius;

  // Lines that cross the open disk, with their chord half-lengths.
  std::vector<int> active;
  std::vector<double> half_chord(lines.size(), 0.0);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const double d = lines[i].d;
    if (std::abs(d) < radius * (1.0 - 1e-12)) {
      active.push_back(static_cast<int>(i));
      half_chord[i] = std::sqrt(radius * radius - d * d);
    }
  }

  std::vector<PoolPoint> pool;
  for (int i : active) {
    const Line& l = lines[static_cast<std::size_t>(i)];
    const Point base = l.d * l.normal();
    const Point u = l.direction();
    const double h = half_chord[static_cast<std::size_t>(i)];
    pool.push_back({base + (-h) * u, i, -h, -1, 0.0});
    pool.push_back({base + h * u, i, h, -1, 0.0});
  }
  const std::size_t n_endpoints = pool.size();
  for (std::size_t a = 0; a < active.size(); ++a) {
    const Line& la = lines[static_cast<std::size_t>(active[a])];
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      const Line& lb = lines[static_cast<std::size_t>(active[b])];
      const auto p = intersect_lines(la, lb);
      if (!p || norm(*p) >= radius - 0.5 * snap) continue;
      pool.push_back({*p, active[a], dot(*p, la.direction()), active[b],
                      dot(*p, lb.direction())});
    }
  }

  // Merge points closer than the snap tolerance.
  DisjointSets sets(pool.size());
  {
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return pool[x].p.x < pool[y].p.x;
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Point pi = pool[order[i]].p;
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        const Point pj = pool[order[j]].p;
        if (pj.x - pi.x > snap) break;
        if (norm(pj - pi) <= snap) sets.unite(order[i], order[j]);
      }
    }
  }
  std::vector<int> vertex_of(pool.size(), -1);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const std::size_t root = sets.find(i);
    if (vertex_of[root] < 0) {
      vertex_of[root] = static_cast<int>(cx.vertices_.size());
      cx.vertices_.push_back({pool[root].p, false});
    }
    vertex_of[i] = vertex_of[root];
    if (i < n_endpoints) {
      // boundary vertices sit exactly on the circle
      auto& v = cx.vertices_[static_cast<std::size_t>(vertex_of[i])];
      v.p = pool[i].p;
      v.on_boundary = true;
    }
  }
  for (auto& v : cx.vertices_) {
    if (norm(v.p) >= radius - boundary_eps) v.on_boundary = true;
  }

  struct EdgeSpec {
    int from, to, line;
    double span;
  };
  std::vector<EdgeSpec> edges;

  // Chord pieces.
  std::vector<std::vector<std::pair<double, int>>> along(lines.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const PoolPoint& pp = pool[i];
    along[static_cast<std::size_t>(pp.line_a)].emplace_back(pp.t_a, vertex_of[i]);
    if (pp.line_b >= 0) {
      along[static_cast<std::size_t>(pp.line_b)].emplace_back(pp.t_b, vertex_of[i]);
    }
  }
  for (int i : active) {
    auto& stops = along[static_cast<std::size_t>(i)];
    std::sort(stops.begin(), stops.end());
    int prev = -1;
    for (const auto& [t, v] : stops) {
      if (prev >= 0 && v != prev) edges.push_back({prev, v, i, 0.0});
      prev = v;
    }
  }

  // Circle arcs between consecutive boundary vertices.
  std::vector<std::pair<double, int>> ring;
  for (std::size_t v = 0; v < cx.vertices_.size(); ++v) {
    const Point p = cx.vertices_[v].p;
    if (cx.vertices_[v].on_boundary) {
      ring.emplace_back(std::atan2(p.y, p.x), static_cast<int>(v));
    }
  }
  if (ring.empty()) {
    cx.vertices_.push_back({{radius, 0.0}, true});
    ring.emplace_back(0.0, static_cast<int>(cx.vertices_.size() - 1));
  }
  std::sort(ring.begin(), ring.end());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto [a0, v0] = ring[i];
    const auto [a1, v1] = ring[(i + 1) % ring.size()];
    double span = a1 - a0;
    if (span <= 0.0) span += 2.0 * kPi;
    edges.push_back({v0, v1, -1, span});
  }

  // Half-edges with their outgoing directions.
  const std::size_t n_half = 2 * edges.size();
  cx.half_edges_.resize(n_half);
  std::vector<double> heading(n_half);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const EdgeSpec& spec = edges[e];
    auto& fwd = cx.half_edges_[2 * e];
    auto& bwd = cx.half_edges_[2 * e + 1];
    fwd = {spec.from, spec.to, static_cast<int>(2 * e + 1), -1, -1, spec.line,
           spec.span};
    bwd = {spec.to, spec.from, static_cast<int>(2 * e), -1, -1, spec.line,
           -spec.span};
    const Point pf = cx.vertices_[static_cast<std::size_t>(spec.from)].p;
    const Point pt = cx.vertices_[static_cast<std::size_t>(spec.to)].p;
    if (spec.line >= 0) {
      heading[2 * e] = std::atan2(pt.y - pf.y, pt.x - pf.x);
      heading[2 * e + 1] = std::atan2(pf.y - pt.y, pf.x - pt.x);
    } else {
      // arc tangents: counter-clockwise leaving `from`, clockwise leaving `to`
      heading[2 * e] = wrap_angle(std::atan2(pf.y, pf.x) + 0.5 * kPi);
      heading[2 * e + 1] = wrap_angle(std::atan2(pt.y, pt.x) - 0.5 * kPi);
    }
  }

  // Outgoing half-edges of each vertex sorted counter-clockwise.
  std::vector<int> order(n_half);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int va = cx.half_edges_[static_cast<std::size_t>(a)].from;
    const int vb = cx.half_edges_[static_cast<std::size_t>(b)].from;
    if (va != vb) return va < vb;
    return heading[static_cast<std::size_t>(a)] < heading[static_cast<std::size_t>(b)];
  });
  std::vector<std::size_t> slot(n_half);
  std::vector<std::size_t> first(cx.vertices_.size() + 1, 0);
  for (std::size_t i = 0; i < n_half; ++i) {
    slot[static_cast<std::size_t>(order[i])] = i;
    ++first[static_cast<std::size_t>(cx.half_edges_[static_cast<std::size_t>(order[i])].from) + 1];
  }
  std::partial_sum(first.begin(), first.end(), first.begin());

  // next(h) = outgoing edge at h.to just clockwise of twin(h): faces keep
  // their interior on the left.
  for (std::size_t h = 0; h < n_half; ++h) {
    auto& he = cx.half_edges_[h];
    const auto v = static_cast<std::size_t>(he.to);
    const std::size_t lo = first[v];
    const std::size_t cnt = first[v + 1] - lo;
    const std::size_t pos = slot[static_cast<std::size_t>(he.twin)] - lo;
    he.next = order[lo + (pos + cnt - 1) % cnt];
  }

  for (std::size_t h = 0; h < n_half; ++h) {
    if (cx.half_edges_[h].face >= 0) continue;
    CellComplex::Face face;
    face.first = static_cast<int>(h);
    const int fid = static_cast<int>(cx.faces_.size());
    bool all_cw_arcs = true;
    double twice_area = 0.0;
    std::size_t cur = h;
    do {
      auto& he = cx.half_edges_[cur];
      he.face = fid;
      ++face.size;
      const auto& vf = cx.vertices_[static_cast<std::size_t>(he.from)];
      const auto& vt = cx.vertices_[static_cast<std::size_t>(he.to)];
      if (he.line >= 0) {
        twice_area += cross(vf.p, vt.p);
        all_cw_arcs = false;
      } else {
        twice_area += radius * radius * he.arc_span;
        face.touches_boundary = true;
        if (he.arc_span > 0.0) all_cw_arcs = false;
      }
      if (vf.on_boundary) face.touches_boundary = true;
      cur = static_cast<std::size_t>(he.next);
      if (face.size > n_half) throw std::logic_error("face cycle does not close");
    } while (cur != h);
    face.area = 0.5 * twice_area;
    face.outer = all_cw_arcs;
    cx.faces_.push_back(face);
  }
  return cx;
}

std::vector<ConvexPolygon> interior_cells(const CellComplex& c) {
  std::vector<ConvexPolygon> cells;
  const auto faces = c.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (faces[f].outer || faces[f].touches_boundary) continue;
    cells.emplace_back(c.face_corners(f));
  }
  return cells;
}

bool euler_check(const CellComplex& c) {
  const auto v = static_cast<long>(c.vertex_count());
  const auto e = static_cast<long>(c.edge_count());
  const auto f = static_cast<long>(c.face_count());
  return v - e + f == 2;
}

double total_window_area(const CellComplex& c) {
  double a = 0.0;
  for (const auto& f : c.faces()) {
    if (!f.outer) a += f.area;
  }
  return a;
}

CellStats cell_statistics(std::span<const ConvexPolygon> cells) {
  CellStats s;
  s.n_cells_interior = cells.size();
  double vertex_sum = 0.0;
  s.areas.reserve(cells.size());
  for (const auto& cell : cells) {
    ++s.vertex_count_histogram[cell.size()];
    if (cell.size() == 3) ++s.n_triangles;
    vertex_sum += static_cast<double>(cell.size());
    s.areas.push_back(cell.area());
  }
  if (!cells.empty()) {
    s.triangle_proportion =
        static_cast<double>(s.n_triangles) / static_cast<double>(cells.size());
    s.mean_vertex_count = vertex_sum / static_cast<double>(cells.size());
  }
  return s;
}

}  // namespace polytess
