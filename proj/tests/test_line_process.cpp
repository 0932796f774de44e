#include <doctest.h>

#include <cmath>
#include <vector>

#include "polytess/line_process.hpp"

using namespace polytess;

namespace {

struct Tally {
  double sum = 0.0;
  double sum_sq = 0.0;
  int n = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return sum / n; }
  double var() const { return (sum_sq - sum * mean()) / (n - 1); }
  double se() const { return std::sqrt(var() / n); }
};

// Mean number of lines hitting the triangle but not edge e, computed from
// projection widths: gamma * integral of (width_tri - width_edge) dG.
double hit_mean_by_widths(const DirectionalDistribution& g, double gamma,
                          const ConvexPolygon& tri, int e) {
  const Point a = tri[static_cast<std::size_t>(e - 1)];
  const Point b = tri[static_cast<std::size_t>(e % 3)];
  auto excess = [&](double theta) {
    const Point v = b - a;
    const double edge = std::abs(-v.x * std::sin(theta) + v.y * std::cos(theta));
    return projection_width(tri, theta) - edge;
  };
  if (g.is_uniform()) {
    const int n = 200000;  // midpoint rule on [0, pi)
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += excess((i + 0.5) * kPi / n);
    return gamma * s / n;
  }
  double s = 0.0;
  for (std::size_t j = 0; j < g.atom_count(); ++j) {
    s += g.weights()[j] * excess(g.angles()[j]);
  }
  return gamma * s;
}

}  // namespace

TEST_CASE("SimulationConfig validation") {
  SimulationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.gamma = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.gamma = 1.0;
  cfg.window_radius = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.window_radius = 1.0;
  cfg.replicates = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("disk hits: Poisson count with mean 2 gamma R") {
  const auto g = DirectionalDistribution::g3(0.2, 0.5);
  for (double gamma : {1.0, 2.0}) {
    SimulationConfig cfg;
    cfg.gamma = gamma;
    cfg.window_radius = 50.0;
    Rng rng = make_stream(20, static_cast<std::uint64_t>(gamma));
    Tally t;
    for (int r = 0; r < 10000; ++r) {
      const auto lines = sample_lines_hitting_disk(g, cfg, rng);
      for (const Line& l : lines) REQUIRE(std::abs(l.d) < 50.0);
      t.add(static_cast<double>(lines.size()));
    }
    const double mean = 2.0 * gamma * 50.0;
    CHECK(std::abs(t.mean() - mean) < 4.0 * std::sqrt(mean / t.n));
    CHECK(t.var() == doctest::Approx(mean).epsilon(0.05));
  }
}

TEST_CASE("disk hits: direction histogram matches G") {
  const auto g = DirectionalDistribution::g4(0.1, 0.2, 0.3);
  SimulationConfig cfg;
  cfg.window_radius = 100.0;
  Rng rng = make_stream(21, 0);
  std::vector<int> counts(4, 0);
  int total = 0;
  for (int r = 0; r < 500; ++r) {
    for (const Line& l : sample_lines_hitting_disk(g, cfg, rng)) {
      REQUIRE(l.atom >= 0);
      CHECK(l.theta == g.angles()[static_cast<std::size_t>(l.atom)]);
      ++counts[static_cast<std::size_t>(l.atom)];
      ++total;
    }
  }
  for (std::size_t j = 0; j < 4; ++j) {
    const double p = g.weights()[j];
    CHECK(std::abs(counts[j] - total * p) < 4 * std::sqrt(total * p * (1 - p)));
  }
}

TEST_CASE("disk hits: crossings of a diameter have rate gamma lambda(theta)") {
  const auto g = DirectionalDistribution::g3(0.2, 0.5);
  const double theta = 0.3;
  const double gamma = 1.5;
  const double radius = 20.0;
  // lambda from its definition
  double lambda = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    lambda += g.weights()[j] * std::abs(std::sin(theta - g.angles()[j]));
  }
  const Line diameter = make_line(theta, 0.0);
  Rng rng = make_stream(22, 0);
  Tally t;
  for (int r = 0; r < 20000; ++r) {
    int hits = 0;
    for (const Line& l : sample_lines_hitting_disk(g, gamma, {0, 0}, radius, rng)) {
      const auto p = intersect_lines(l, diameter);
      if (p && norm(*p) < radius) ++hits;
    }
    t.add(hits);
  }
  const double mean = gamma * lambda * 2.0 * radius;
  CHECK(std::abs(t.mean() - mean) < 4.0 * std::sqrt(mean / t.n));
  CHECK(t.var() == doctest::Approx(mean).epsilon(0.05));
}

TEST_CASE("annulus and disk samples combine to the larger disk") {
  const auto g = DirectionalDistribution::uniform();
  Rng rng = make_stream(23, 0);
  Tally t;
  for (int r = 0; r < 20000; ++r) {
    const auto lines = sample_lines_in_annulus(g, 1.0, {1, 2}, 3.0, 5.0, rng);
    for (const Line& l : lines) {
      const double off = std::abs(l.d - (-1.0 * std::sin(l.theta) + 2.0 * std::cos(l.theta)));
      REQUIRE(off >= 3.0);
      REQUIRE(off < 5.0);
    }
    t.add(static_cast<double>(lines.size()));
  }
  CHECK(std::abs(t.mean() - 4.0) < 4.0 * std::sqrt(4.0 / t.n));
}

TEST_CASE("mean_hits_excluding_edge") {
  const double s = 2.0;
  const double h = s * std::sqrt(3.0) / 2;
  const ConvexPolygon equi({{0, 0}, {s, 0}, {s / 2, h}});
  const auto g3 = DirectionalDistribution::g3(1.0 / 3, 1.0 / 3);
  for (int e = 1; e <= 3; ++e) {
    const HitMean m = mean_hits_excluding_edge(g3, 1.5, equi, e);
    CHECK(m.valid);
    CHECK(m.mean == doctest::Approx(0.75 * s * std::sqrt(3.0) / 3).epsilon(1e-12));
  }

  // isosceles with apex on the axis: t2 = t3
  const auto g4 = DirectionalDistribution::g4(0.1, 0.2, 0.3);
  const ConvexPolygon iso({{-1, 0}, {1, 0}, {0, 3}});
  // the legs have equal length but, under an anisotropic law, unequal lambda
  const double leg = std::sqrt(10.0);
  const double l2 = lambda_theta(g4, std::atan2(3.0, -1.0));
  const double l3 = lambda_theta(g4, std::atan2(3.0, 1.0));
  CHECK(std::abs(l2 - l3) > 1e-3);
  const double expect = 0.5 * (leg * l2 + leg * l3 - 2.0 * lambda_theta(g4, 0.0));
  CHECK(mean_hits_excluding_edge(g4, 1.0, iso, 1).mean == doctest::Approx(expect).epsilon(1e-12));

  Rng rng = make_stream(24, 0);
  const auto unif = DirectionalDistribution::uniform();
  for (int i = 0; i < 50; ++i) {
    std::vector<Point> pts;
    for (int k = 0; k < 3; ++k) pts.push_back({4 * uniform01(rng), 4 * uniform01(rng)});
    if (cross(pts[1] - pts[0], pts[2] - pts[0]) < 0) std::swap(pts[1], pts[2]);
    if (std::abs(cross(pts[1] - pts[0], pts[2] - pts[0])) < 1e-3) continue;
    const ConvexPolygon tri(pts);
    for (const auto* g : {&g4, &unif}) {
      for (int e = 1; e <= 3; ++e) {
        const HitMean m = mean_hits_excluding_edge(*g, 0.7, tri, e);
        CHECK(m.valid);
        CHECK(m.mean >= 0.0);
        CHECK(m.mean == doctest::Approx(hit_mean_by_widths(*g, 0.7, tri, e)).epsilon(1e-6));
      }
    }
  }

  CHECK_THROWS_AS(mean_hits_excluding_edge(g4, 1.0, equi, 0), std::invalid_argument);
  CHECK_THROWS_AS(mean_hits_excluding_edge(g4, 1.0, equi, 4), std::invalid_argument);
  CHECK_THROWS_AS(mean_hits_excluding_edge(g4, 1.0, ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 1),
                  DegenerateTriangle);
  CHECK_THROWS(mean_hits_excluding_edge(g4, 1.0, ConvexPolygon({{0, 0}, {1, 0}, {1 + 1e-4, 1e-12}}), 1));
}

TEST_CASE("triangle sampler: count law matches the closed-form mean") {
  const double s = 2.0;
  const ConvexPolygon equi({{0, 0}, {s, 0}, {s / 2, s * std::sqrt(3.0) / 2}});
  const ConvexPolygon skew({{0, 0}, {3, 0.5}, {0.4, 1.7}});
  const auto g3 = DirectionalDistribution::g3(1.0 / 3, 1.0 / 3);
  const auto unif = DirectionalDistribution::uniform();
  struct Case {
    const DirectionalDistribution* g;
    const ConvexPolygon* tri;
    int edge;
    double gamma;
  };
  int seed = 0;
  for (const Case c : {Case{&g3, &equi, 1, 1.5}, Case{&unif, &skew, 2, 1.0},
                       Case{&unif, &skew, 3, 2.0}}) {
    const double mean = mean_hits_excluding_edge(*c.g, c.gamma, *c.tri, c.edge).mean;
    Rng rng = make_stream(25, static_cast<std::uint64_t>(seed++));
    const Point a = (*c.tri)[static_cast<std::size_t>(c.edge - 1)];
    const Point b = (*c.tri)[static_cast<std::size_t>(c.edge % 3)];
    Tally t;
    for (int r = 0; r < 100000; ++r) {
      const auto lines =
          sample_lines_hitting_triangle_excluding_edge(*c.g, c.gamma, *c.tri, c.edge, rng);
      for (const Line& l : lines) {
        REQUIRE_FALSE(segment_hits_line(a, b, l));
        const double s0 = l.signed_distance((*c.tri)[0]);
        const double s1 = l.signed_distance((*c.tri)[1]);
        const double s2 = l.signed_distance((*c.tri)[2]);
        REQUIRE((std::min({s0, s1, s2}) < 0.0 && std::max({s0, s1, s2}) > 0.0));
      }
      t.add(static_cast<double>(lines.size()));
    }
    CHECK(std::abs(t.mean() - mean) < 4.0 * std::sqrt(mean / t.n));
    CHECK(t.var() == doctest::Approx(mean).epsilon(0.05));
  }

  Rng rng = make_stream(26, 0);
  int nonempty = 0;
  for (int r = 0; r < 1000; ++r) {
    nonempty += !sample_lines_hitting_triangle_excluding_edge(g3, 1e-6, equi, 1, rng).empty();
  }
  CHECK(nonempty <= 2);
}

TEST_CASE("replicate streams are deterministic") {
  const auto g = DirectionalDistribution::uniform();
  SimulationConfig cfg;
  cfg.window_radius = 30.0;
  cfg.seed = 99;
  const auto a = replicate_lines(g, cfg, 3);
  const auto b = replicate_lines(g, cfg, 3);
  const auto c = replicate_lines(g, cfg, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].theta == b[i].theta);
    CHECK(a[i].d == b[i].d);
  }
  CHECK((a.size() != c.size() || a.front().theta != c.front().theta));
}
