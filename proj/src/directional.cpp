#include "polytess/directional.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polytess/geometry.hpp"

namespace polytess {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kAtomMatchTol = 1e-12;

std::vector<double> cumulative(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  std::partial_sum(w.begin(), w.end(), c.begin());
  return c;
}

std::size_t pick(const std::vector<double>& cdf, double u) {
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) {
    --it;
    // skip zero-probability cells that share the final value
    while (it != cdf.begin() && *it == *(it - 1)) --it;
  }
  return static_cast<std::size_t>(it - cdf.begin());
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

DirectionalDistribution DirectionalDistribution::discrete(
    std::vector<double> angles, std::vector<double> weights) {
  if (angles.size() != weights.size()) {
    throw std::invalid_argument("angles and weights differ in length");
  }
  if (angles.size() < 2) {
    throw std::invalid_argument(
        "directional distribution needs at least two atoms");
  }
  std::vector<std::pair<double, double>> atoms;
  double total = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!std::isfinite(angles[i])) {
      throw std::invalid_argument("atom angle is not finite");
    }
    if (!(weights[i] > 0.0)) {
      throw std::invalid_argument("atom weights must be positive");
    }
    double a = normalize_direction(angles[i]);
    if (kPi - a < kAtomMatchTol) a = 0.0;
    atoms.emplace_back(a, weights[i]);
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw std::invalid_argument("atom weights must sum to 1");
  }
  std::sort(atoms.begin(), atoms.end());
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].first - atoms[i - 1].first < kAtomMatchTol) {
      throw std::invalid_argument("duplicate atom direction");
    }
  }

  DirectionalDistribution g;
  for (const auto& [a, w] : atoms) {
    g.angles_.push_back(a);
    g.weights_.push_back(w);
  }
  const std::size_t k = atoms.size();
  bool equispaced = true;
  for (std::size_t i = 0; i < k; ++i) {
    const double expect = static_cast<double>(i) * kPi / static_cast<double>(k);
    equispaced = equispaced && std::abs(g.angles_[i] - expect) < kAtomMatchTol &&
                 std::abs(g.weights_[i] - 1.0 / static_cast<double>(k)) < kWeightSumTol;
  }
  g.pseudo_isotropic_ = equispaced;
  if (equispaced) {
    // snap so that rotations by pi/k map atoms onto atoms exactly
    for (std::size_t i = 0; i < k; ++i) {
      g.angles_[i] = static_cast<double>(i) * kPi / static_cast<double>(k);
    }
  }

  std::ostringstream label;
  if (equispaced) {
    label << "gk:" << k;
  } else {
    label << "discrete:";
    for (std::size_t i = 0; i < k; ++i) {
      label << (i ? "," : "") << format_double(g.angles_[i]) << ':'
            << format_double(g.weights_[i]);
    }
  }
  g.label_ = label.str();
  g.build_profile();
  return g;
}

DirectionalDistribution DirectionalDistribution::uniform() {
  DirectionalDistribution g;
  g.uniform_ = true;
  g.pseudo_isotropic_ = true;
  g.label_ = "unif";
  g.profile_.lambda_bar = 2.0 / kPi;
  return g;
}

DirectionalDistribution DirectionalDistribution::g3(double p, double q) {
  if (!(p > 0.0 && q > 0.0 && p + q < 1.0)) {
    throw std::invalid_argument("g3 weights need p, q > 0 and p + q < 1");
  }
  auto g = discrete({0.0, kPi / 3.0, 2.0 * kPi / 3.0}, {p, q, 1.0 - p - q});
  if (!g.pseudo_isotropic_) {
    g.label_ = "g3:" + format_double(p) + "," + format_double(q);
  }
  return g;
}

DirectionalDistribution DirectionalDistribution::g4(double p, double q,
                                                    double r) {
  if (!(p > 0.0 && q > 0.0 && r > 0.0 && p + q + r < 1.0)) {
    throw std::invalid_argument(
        "g4 weights need p, q, r > 0 and p + q + r < 1");
  }
  auto g = discrete({0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0},
                    {p, q, r, 1.0 - p - q - r});
  if (!g.pseudo_isotropic_) {
    g.label_ = "g4:" + format_double(p) + "," + format_double(q) + "," +
               format_double(r);
  }
  return g;
}

DirectionalDistribution DirectionalDistribution::gk(int k) {
  if (k < 2) throw std::invalid_argument("gk needs k >= 2");
  std::vector<double> angles(static_cast<std::size_t>(k));
  std::vector<double> weights(static_cast<std::size_t>(k), 1.0 / k);
  for (int l = 0; l < k; ++l) angles[static_cast<std::size_t>(l)] = l * kPi / k;
  // 1/k summed k times can miss 1 by a few ulps; pin the last weight
  weights.back() = 1.0 - std::accumulate(weights.begin(), weights.end() - 1, 0.0);
  return discrete(std::move(angles), std::move(weights));
}

int DirectionalDistribution::atom_of(double theta) const {
  const double t = normalize_direction(theta);
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    const double diff = std::abs(t - angles_[i]);
    if (diff < kAtomMatchTol || kPi - diff < kAtomMatchTol) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

void DirectionalDistribution::build_profile() {
  const std::size_t k = angles_.size();
  IntensityProfile& prof = profile_;
  prof.atom_lambda.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) {
        prof.atom_lambda[i] +=
            weights_[j] * std::abs(std::sin(angles_[i] - angles_[j]));
      }
    }
  }
  prof.lambda_bar = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    prof.lambda_bar += weights_[i] * prof.atom_lambda[i];
  }
  prof.direction_cdf = cumulative(weights_);

  std::vector<double> pair(k * k, 0.0);
  prof.next_cdf.assign(k, {});
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> next(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double s = std::abs(std::sin(angles_[i] - angles_[j]));
      pair[i * k + j] = weights_[i] * weights_[j] * s;
      next[j] = weights_[j] * s;
    }
    prof.next_cdf[i] = cumulative(next);
  }
  prof.pair_cdf = cumulative(pair);
}

double lambda_theta(const DirectionalDistribution& g, double theta) {
  if (g.is_uniform()) return 2.0 / kPi;
  double s = 0.0;
  const auto& a = g.angles();
  const auto& w = g.weights();
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += w[i] * std::abs(std::sin(theta - a[i]));
  }
  return s;
}

double lambda_bar(const DirectionalDistribution& g) {
  return g.intensity().lambda_bar;
}

double lambda_at(const DirectionalDistribution& g, const Direction& dir) {
  if (g.is_uniform()) return 2.0 / kPi;
  if (dir.atom >= 0) {
    return g.intensity().atom_lambda[static_cast<std::size_t>(dir.atom)];
  }
  return lambda_theta(g, dir.angle);
}

Direction sample_direction(const DirectionalDistribution& g, Rng& rng) {
  if (g.is_uniform()) return {kPi * uniform01(rng), -1};
  const auto i = pick(g.intensity().direction_cdf, uniform01(rng));
  return {g.angles()[i], static_cast<int>(i)};
}

double uniform_gap_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= kPi) return 1.0;
  const double c = std::cos(x);
  return (kPi - kPi * c - std::sin(x) + x * c) / kPi;
}

double uniform_gap_quantile(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return kPi;
  double lo = 0.0, hi = kPi;
  double x = std::acos(1.0 - 2.0 * u);  // symmetric-law guess
  for (int it = 0; it < 200; ++it) {
    const double f = uniform_gap_cdf(x) - u;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (hi - lo < 1e-12) break;
    const double dens = (kPi - x) * std::sin(x) / kPi;
    double next = dens > 0.0 ? x - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-14) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

std::pair<Direction, Direction> sample_angle_pair(
    const DirectionalDistribution& g, Rng& rng) {
  if (g.is_uniform()) {
    const double gap = uniform_gap_quantile(uniform01(rng));
    const double lower = (kPi - gap) * uniform01(rng);
    Direction a{lower, -1};
    Direction b{lower + gap, -1};
    if (uniform01(rng) < 0.5) std::swap(a, b);
    return {a, b};
  }
  const std::size_t k = g.atom_count();
  const std::size_t idx = pick(g.intensity().pair_cdf, uniform01(rng));
  const std::size_t i = idx / k;
  const std::size_t j = idx % k;
  return {{g.angles()[i], static_cast<int>(i)},
          {g.angles()[j], static_cast<int>(j)}};
}

Direction sample_phi2(const DirectionalDistribution& g, const Direction& phi1,
                      Rng& rng) {
  if (g.is_uniform()) {
    // sin(phi1 - phi2)/2 on [phi1 - pi, phi1): gap = acos(1 - 2U)
    // U in (0, 1) keeps both endpoints, where the density vanishes, out
    double u = uniform01(rng);
    while (u == 0.0) u = uniform01(rng);
    const double gap = std::acos(1.0 - 2.0 * u);
    return {phi1.angle - gap, -1};
  }
  int i = phi1.atom;
  if (i < 0) i = g.atom_of(phi1.angle);
  if (i < 0) {
    throw std::invalid_argument("phi1 is not an atom of the distribution");
  }
  const auto& cdf = g.intensity().next_cdf[static_cast<std::size_t>(i)];
  const std::size_t j = pick(cdf, uniform01(rng));
  const double theta = g.angles()[j];
  const double base = normalize_direction(phi1.angle);
  // bring the atom into [phi1 - pi, phi1); exact when phi1 is in [0, pi)
  const double shifted = theta < base ? theta : theta - kPi;
  const double offset = phi1.angle - base;
  return {offset == 0.0 ? shifted : shifted + offset, static_cast<int>(j)};
}

// ---------------------------------------------------------------------------
// Distribution strings

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view tok, const char* what) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (tok.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw DistributionSpecError(std::string("invalid ") + what,
                                std::string(tok));
  }
  return v;
}

int parse_int(std::string_view tok) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw DistributionSpecError("invalid integer", std::string(tok));
  }
  return v;
}

std::vector<double> parse_weights(std::string_view body, std::size_t expect) {
  const auto parts = split(body, ',');
  if (parts.size() != expect) {
    throw DistributionSpecError(
        "expected " + std::to_string(expect) + " comma-separated weights",
        std::string(body));
  }
  std::vector<double> w;
  for (auto p : parts) w.push_back(parse_number(p, "weight"));
  return w;
}

}  // namespace

DirectionalDistribution parse_distribution(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  try {
    if (head == "unif" || head == "uniform") {
      if (colon != std::string_view::npos) {
        throw DistributionSpecError("unif takes no parameters",
                                    std::string(body));
      }
      return DirectionalDistribution::uniform();
    }
    if (head == "gk") {
      const int k = parse_int(body);
      if (k < 2) throw DistributionSpecError("gk needs k >= 2", std::string(body));
      return DirectionalDistribution::gk(k);
    }
    if (head == "g3") {
      const auto w = parse_weights(body, 2);
      if (!(w[0] > 0.0 && w[1] > 0.0 && w[0] + w[1] < 1.0)) {
        throw DistributionSpecError("g3 needs p, q > 0 and p + q < 1",
                                    std::string(body));
      }
      return DirectionalDistribution::g3(w[0], w[1]);
    }
    if (head == "g4") {
      const auto w = parse_weights(body, 3);
      if (!(w[0] > 0.0 && w[1] > 0.0 && w[2] > 0.0 && w[0] + w[1] + w[2] < 1.0)) {
        throw DistributionSpecError("g4 needs p, q, r > 0 and p + q + r < 1",
                                    std::string(body));
      }
      return DirectionalDistribution::g4(w[0], w[1], w[2]);
    }
    if (head == "discrete") {
      std::vector<double> angles, weights;
      for (auto item : split(body, ',')) {
        auto fields = split(item, ':');
        bool degrees = false;
        if (fields.size() == 3 && fields[0] == "deg") {
          degrees = true;
          fields.erase(fields.begin());
        }
        if (fields.size() != 2) {
          throw DistributionSpecError("expected <angle>:<weight>",
                                      std::string(item));
        }
        double a = parse_number(fields[0], "angle");
        if (degrees) a *= kPi / 180.0;
        angles.push_back(a);
        const double w = parse_number(fields[1], "weight");
        if (!(w > 0.0)) {
          throw DistributionSpecError("weight must be positive",
                                      std::string(fields[1]));
        }
        weights.push_back(w);
      }
      const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      if (std::abs(total - 1.0) > 1e-6) {
        throw DistributionSpecError("weights must sum to 1", std::string(body));
      }
      for (double& w : weights) w /= total;
      return DirectionalDistribution::discrete(std::move(angles),
                                               std::move(weights));
    }
  } catch (const DistributionSpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DistributionSpecError(e.what(), std::string(spec));
  }
  throw DistributionSpecError("unknown distribution", std::string(head));
}

}  // namespace polytess
