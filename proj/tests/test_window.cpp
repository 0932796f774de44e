#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polytess/window.hpp"

using namespace polytess;

namespace {

SimulationConfig config(double radius, double gamma, std::uint64_t seed, int reps) {
  SimulationConfig cfg;
  cfg.window_radius = radius;
  cfg.gamma = gamma;
  cfg.seed = seed;
  cfg.replicates = reps;
  return cfg;
}

bool within_combined(const WindowSummary& a, const WindowSummary& b, double k) {
  return std::abs(a.proportion - b.proportion) <=
         k * std::hypot(a.standard_error, b.standard_error);
}

}  // namespace

TEST_CASE("replicates do not depend on the thread count") {
  const auto g = DirectionalDistribution::gk(3);
  const auto cfg = config(25.0, 1.0, 5, 12);
  const auto one = simulate_windows(g, cfg, 1);
  const auto three = simulate_windows(g, cfg, 3);
  REQUIRE(one.size() == three.size());
  std::ostringstream a, b;
  write_replicate_csv(a, one);
  write_replicate_csv(b, three);
  CHECK(a.str() == b.str());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].replicate == i);
    CHECK(one[i].seed == derive_seed(5, i));
    CHECK(one[i].euler_ok);
    CHECK(one[i].area_rel_error < 1e-6);
  }
}

TEST_CASE("CSV layout") {
  const auto g = DirectionalDistribution::uniform();
  const auto results = simulate_windows(g, config(10.0, 1.0, 1, 3));
  std::ostringstream out;
  write_replicate_csv(out, results);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "replicate,seed,R,gamma,n_lines,n_cells,n_triangles,proportion,mean_vertices");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
    CHECK(line.find(',' + std::to_string(derive_seed(1, rows - 1)) + ",10,1,") !=
          std::string::npos);
  }
  CHECK(rows == 3);
}

TEST_CASE("pooled ratio and its standard error") {
  std::vector<ReplicateResult> rs(3);
  const std::size_t cells[] = {100, 80, 120};
  const std::size_t tris[] = {20, 22, 26};
  for (int i = 0; i < 3; ++i) {
    rs[i].n_cells = cells[i];
    rs[i].n_triangles = tris[i];
    rs[i].euler_ok = true;
  }
  const WindowSummary s = summarize(rs);
  const double p = 68.0 / 300.0;
  CHECK(s.proportion == doctest::Approx(p));
  double ss = 0.0;
  for (int i = 0; i < 3; ++i) ss += std::pow(tris[i] - p * cells[i], 2);
  CHECK(s.standard_error == doctest::Approx(std::sqrt(1.5 * ss) / 300.0));
  CHECK(s.all_euler_ok);

  const WindowSummary single = summarize({rs[0]});
  CHECK(single.standard_error == doctest::Approx(std::sqrt(0.2 * 0.8 / 100)));
}

TEST_CASE("two directions give parallelograms only") {
  const auto g = DirectionalDistribution::discrete({0.0, 1.5707963268}, {0.5, 0.5});
  const auto results = simulate_windows(g, config(30.0, 1.0, 3, 5));
  for (const auto& r : results) {
    CHECK(r.n_triangles == 0);
    CHECK(r.n_cells > 0);
    CHECK(r.mean_vertices == 4.0);
  }
}

TEST_CASE("G3(1/3,1/3) window proportion is near 2/9") {
  const auto g = DirectionalDistribution::g3(1.0 / 3, 1.0 / 3);
  const WindowSummary s = summarize(simulate_windows(g, config(80.0, 1.0, 17, 20)));
  CHECK(s.all_euler_ok);
  CHECK(std::abs(s.proportion - 2.0 / 9) < 0.02);
}

TEST_CASE("intensity only sets the scale") {
  const auto g = DirectionalDistribution::uniform();
  const WindowSummary a = summarize(simulate_windows(g, config(60.0, 1.0, 21, 20)));
  const WindowSummary b = summarize(simulate_windows(g, config(30.0, 2.0, 22, 20)));
  CHECK(within_combined(a, b, 4.0));
}

TEST_CASE("rotating G_k leaves the proportion unchanged") {
  const int k = 4;
  std::vector<double> angles, weights(k, 1.0 / k);
  for (int l = 0; l < k; ++l) angles.push_back(l * kPi / k + kPi / (2 * k));
  const auto rotated = DirectionalDistribution::discrete(angles, weights);
  const auto g = DirectionalDistribution::gk(k);
  const WindowSummary a = summarize(simulate_windows(g, config(60.0, 1.0, 31, 20)));
  const WindowSummary b = summarize(simulate_windows(rotated, config(60.0, 1.0, 32, 20)));
  CHECK(within_combined(a, b, 4.0));
}
