#include "polytess/typical_cell.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "polytess/format.hpp"
#include "polytess/line_process.hpp"
#include "polytess/parallel.hpp"

namespace polytess {

namespace {

// Fixed work unit of the batch estimators; chunk c always uses stream c.
constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
constexpr int kMaxDoublings = 8;

double exponential(double rate, Rng& rng) {
  return -std::log(uniform_open_closed(rng)) / rate;
}

int line_side_of_origin(const Line& l) {
  return l.signed_distance(Point{0.0, 0.0}) > 0.0 ? 1 : -1;
}

ConvexPolygon clip_to_origin_side(ConvexPolygon cell,
                                  const std::vector<Line>& lines) {
  for (const Line& l : lines) {
    if (l.d == 0.0) continue;
    auto clipped = clip_by_side(cell, l, line_side_of_origin(l));
    if (!clipped) throw std::logic_error("clipping removed the anchor vertex");
    cell = std::move(*clipped);
  }
  return cell;
}

bool touches_box(const ConvexPolygon& p, double half_side) {
  const double limit = half_side * (1.0 - 1e-9);
  for (const Point& v : p.vertices()) {
    if (std::max(std::abs(v.x), std::abs(v.y)) >= limit) return true;
  }
  return false;
}

void drop_edge_hitters(std::vector<Line>& lines, Point a, Point b) {
  std::erase_if(lines,
                [&](const Line& l) { return segment_hits_line(a, b, l); });
}

ConvexPolygon wedge_cell(const DirectionalDistribution& g, double gamma,
                         const ConstructionDraw& d, Rng& rng) {
  const Point origin{0.0, 0.0};
  const Point v2 = d.z1 * unit_vector(d.phi1.angle);
  const Line l0 = make_line(d.phi0.angle, 0.0, d.phi0.atom);
  const Line l1 = make_line(d.phi1.angle, 0.0, d.phi1.atom);
  const Line l2 = line_through(v2, d.phi2.angle, d.phi2.atom);

  double rho = 4.0 * std::max(d.z1, 1.0 / (gamma * lambda_bar(g)));
  std::vector<Line> lines =
      sample_lines_hitting_disk(g, gamma, origin, rho * std::sqrt(2.0), rng);
  drop_edge_hitters(lines, origin, v2);

  for (int doubling = 0;; ++doubling) {
    std::optional<ConvexPolygon> region = make_square(origin, rho);
    region = clip_by_side(*region, l0, 1);
    if (region) region = clip_by_side(*region, l1, -1);
    if (region) region = clip_by_side(*region, l2, line_side_of_origin(l2));
    if (!region) throw std::logic_error("empty construction region");
    ConvexPolygon cell = clip_to_origin_side(std::move(*region), lines);
    if (!touches_box(cell, rho)) return cell;
    if (doubling == kMaxDoublings) {
      throw BoxOverflow("typical cell still touches its box after 8 doublings");
    }
    auto more = sample_lines_in_annulus(g, gamma, origin, rho * std::sqrt(2.0),
                                        2.0 * rho * std::sqrt(2.0), rng);
    drop_edge_hitters(more, origin, v2);
    lines.insert(lines.end(), more.begin(), more.end());
    rho *= 2.0;
  }
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

EstimateResult mean_and_error(double sum, double sum_sq, std::uint64_t n,
                              std::uint64_t seed) {
  EstimateResult r;
  r.n_samples = n;
  r.seed = seed;
  if (n == 0) return r;
  const double nn = static_cast<double>(n);
  r.estimate = sum / nn;
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - sum * r.estimate) / (nn - 1.0));
    r.standard_error = std::sqrt(var / nn);
  }
  return r;
}

}  // namespace

double phi2_lower_bound(double phi1) { return phi1 - kPi; }

ConstructionDraw draw_construction(const DirectionalDistribution& g,
                                   double gamma, Rng& rng) {
  ConstructionDraw d;
  if (g.is_uniform()) {
    d.phi0 = {0.0, -1};
    double u = uniform01(rng);
    while (u == 0.0) u = uniform01(rng);
    d.phi1 = {uniform_gap_quantile(u), -1};
  } else {
    auto [a, b] = sample_angle_pair(g, rng);
    if (b.atom < a.atom) std::swap(a, b);
    if (g.is_pseudo_isotropic()) {
      // rotate by -phi0; atoms are l*pi/k, so the rotation is exact
      const int m = b.atom - a.atom;
      d.phi0 = {0.0, 0};
      d.phi1 = {g.angles()[static_cast<std::size_t>(m)], m};
    } else {
      d.phi0 = a;
      d.phi1 = b;
    }
  }
  d.z1 = exponential(gamma * lambda_at(g, d.phi1), rng);
  d.phi2 = sample_phi2(g, d.phi1, rng);
  if (g.is_uniform()) {
    d.closes_triangle = d.phi2.angle < d.phi0.angle;
  } else {
    // a phi2 on the atom of phi0 is parallel to the first edge
    d.closes_triangle =
        d.phi2.atom != d.phi0.atom && d.phi2.angle < d.phi0.angle;
    const int k = static_cast<int>(g.atom_count());
    d.config_case = (d.phi0.atom * k + d.phi1.atom) * k + d.phi2.atom;
  }
  return d;
}

TypicalTriangleVars complete_triangle(const ConstructionDraw& d) {
  if (!d.closes_triangle) {
    throw std::invalid_argument("construction does not close a triangle");
  }
  TypicalTriangleVars t;
  t.phi0 = d.phi0;
  t.phi1 = d.phi1;
  t.phi2 = d.phi2;
  t.phi3 = {d.phi0.angle - kPi, d.phi0.atom};
  t.config_case = d.config_case;
  const double s = std::sin(d.phi0.angle - d.phi2.angle);
  t.z1 = d.z1;
  t.z2 = d.z1 * std::sin(d.phi1.angle - d.phi0.angle) / s;
  t.z3 = d.z1 * std::sin(d.phi1.angle - d.phi2.angle) / s;
  t.v1 = {0.0, 0.0};
  t.v2 = d.z1 * unit_vector(d.phi1.angle);
  t.v3 = t.z3 * unit_vector(d.phi0.angle);
  return t;
}

std::variant<TypicalTriangleVars, NotTriangleConfig>
sample_typical_triangle_vars(const DirectionalDistribution& g, Rng& rng) {
  const ConstructionDraw d = draw_construction(g, 1.0, rng);
  if (!d.closes_triangle) return NotTriangleConfig{d};
  return complete_triangle(d);
}

double triangle_weight(const DirectionalDistribution& g,
                       const TypicalTriangleVars& t, double gamma) {
  const double e =
      0.5 * gamma *
      (lambda_at(g, t.phi2) * t.z2 + lambda_at(g, t.phi3) * t.z3 -
       lambda_at(g, t.phi1) * t.z1);
  if (e < -1e-9) {
    throw NegativeExponentGuard("negative survival exponent " +
                                format_number(e));
  }
  return std::exp(-std::max(e, 0.0));
}

EstimateResult estimate_p3_by_weighting(const DirectionalDistribution& g,
                                        std::uint64_t n, std::uint64_t seed,
                                        unsigned threads,
                                        std::vector<AuditRow>* audit) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Moments> moments(chunks);
  std::vector<std::vector<AuditRow>> rows(audit ? chunks : 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng = make_stream(seed, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    Moments m;
    for (std::uint64_t s = begin; s < end; ++s) {
      const ConstructionDraw d = draw_construction(g, 1.0, rng);
      double w = 0.0;
      if (d.closes_triangle) w = triangle_weight(g, complete_triangle(d));
      m.sum += w;
      m.sum_sq += w * w;
      if (audit) {
        rows[c].push_back({s, d.config_case, d.phi0.angle, d.phi1.angle, d.z1,
                           d.phi2.angle, w, d.closes_triangle});
      }
    }
    moments[c] = m;
  });
  double sum = 0.0, sum_sq = 0.0;
  for (const Moments& m : moments) {
    sum += m.sum;
    sum_sq += m.sum_sq;
  }
  if (audit) {
    for (auto& r : rows) audit->insert(audit->end(), r.begin(), r.end());
  }
  return mean_and_error(sum, sum_sq, n, seed);
}

void write_audit_csv(std::ostream& out, const std::vector<AuditRow>& rows) {
  out << "sample,config_case,phi0,phi1,z1,phi2,weight,is_triangle\n";
  for (const auto& r : rows) {
    out << r.sample << ',' << r.config_case << ',' << format_number(r.phi0)
        << ',' << format_number(r.phi1) << ',' << format_number(r.z1) << ','
        << format_number(r.phi2) << ',' << format_number(r.weight) << ','
        << (r.is_triangle ? 1 : 0) << '\n';
  }
}

ConvexPolygon typical_cell_from_draw(const DirectionalDistribution& g,
                                     double gamma, const ConstructionDraw& d,
                                     Rng& rng) {
  if (!d.closes_triangle) return wedge_cell(g, gamma, d, rng);
  const TypicalTriangleVars t = complete_triangle(d);
  ConvexPolygon tri({t.v1, t.v3, t.v2});
  // edge 3 of (v1, v3, v2) is the first constructed edge v2 v1
  const auto lines =
      sample_lines_hitting_triangle_excluding_edge(g, gamma, tri, 3, rng);
  return clip_to_origin_side(std::move(tri), lines);
}

ConvexPolygon sample_typical_cell(const DirectionalDistribution& g,
                                  double gamma, Rng& rng) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const ConstructionDraw d = draw_construction(g, gamma, rng);
  return typical_cell_from_draw(g, gamma, d, rng);
}

VertexDistribution typical_cell_vertex_distribution(
    const DirectionalDistribution& g, double gamma, std::uint64_t n,
    std::uint64_t seed, unsigned threads) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  struct ChunkTally {
    std::map<std::size_t, std::uint64_t> histogram;
    std::uint64_t overflows = 0;
  };
  std::vector<ChunkTally> tallies(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng = make_stream(seed, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      try {
        ++tallies[c].histogram[sample_typical_cell(g, gamma, rng).size()];
      } catch (const BoxOverflow&) {
        ++tallies[c].overflows;
      }
    }
  });

  VertexDistribution out;
  for (const auto& t : tallies) {
    for (const auto& [v, count] : t.histogram) out.histogram[v] += count;
    out.box_overflows += t.overflows;
  }
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& [v, count] : out.histogram) {
    out.n_samples += count;
    const double x = static_cast<double>(v);
    sum += x * static_cast<double>(count);
    sum_sq += x * x * static_cast<double>(count);
  }
  out.mean_vertices = mean_and_error(sum, sum_sq, out.n_samples, seed);
  for (const auto& [v, count] : out.histogram) {
    const double c = static_cast<double>(count);
    out.share[v] = mean_and_error(c, c, out.n_samples, seed);
  }
  return out;
}

}  // namespace polytess
