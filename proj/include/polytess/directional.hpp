// Directional distributions G on [0, pi) and the intensities derived from
// them.
//
// For a line of direction theta, lambda(theta) = integral of
// |sin(theta - t)| G(dt) is the rate of crossings of the unit-intensity line
// process along that line, and lambda_bar is its G-average. Both are cached
// once per distribution in an IntensityProfile together with the sampling
// tables used by the typical-cell construction.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polytess/rng.hpp"

namespace polytess {

/// An orientation angle together with the atom it was drawn from
/// (atom == -1 for continuous distributions). Construction angles may lie in
/// [-pi, pi) and are then understood modulo pi.
struct Direction {
  double angle = 0.0;
  int atom = -1;
};

struct IntensityProfile {
  std::vector<double> atom_lambda;     ///< lambda at each atom
  double lambda_bar = 0.0;
  std::vector<double> direction_cdf;   ///< cumulative atom weights
  /// Cumulative probabilities over ordered atom pairs (i, j), index i*k + j,
  /// proportional to w_i w_j |sin(theta_i - theta_j)|.
  std::vector<double> pair_cdf;
  /// Per first-edge atom i: cumulative probabilities over atoms j of the
  /// next-edge direction, proportional to w_j |sin(theta_i - theta_j)|.
  std::vector<std::vector<double>> next_cdf;
};

class DirectionalDistribution {
 public:
  /// Atoms are reduced modulo pi and sorted. Requires at least two distinct
  /// atoms, positive weights summing to 1 within 1e-12.
  static DirectionalDistribution discrete(std::vector<double> angles,
                                          std::vector<double> weights);
  static DirectionalDistribution uniform();
  /// p delta_0 + q delta_{pi/3} + (1-p-q) delta_{2pi/3}.
  static DirectionalDistribution g3(double p, double q);
  /// p delta_0 + q delta_{pi/4} + r delta_{pi/2} + (1-p-q-r) delta_{3pi/4}.
  static DirectionalDistribution g4(double p, double q, double r);
  /// Equal weights 1/k on l*pi/k, l = 0..k-1.
  static DirectionalDistribution gk(int k);

  bool is_uniform() const { return uniform_; }
  bool is_discrete() const { return !uniform_; }
  /// Uniform, or equal weights on {l*pi/k}: the law of the line process is
  /// invariant under rotation by multiples of pi/k.
  bool is_pseudo_isotropic() const { return pseudo_isotropic_; }

  std::size_t atom_count() const { return angles_.size(); }
  const std::vector<double>& angles() const { return angles_; }
  const std::vector<double>& weights() const { return weights_; }
  const IntensityProfile& intensity() const { return profile_; }

  /// Atom whose angle matches `theta` modulo pi within 1e-12, else -1.
  int atom_of(double theta) const;

  /// Canonical spec string ("unif", "gk:5", "g3:p,q", "discrete:...").
  const std::string& label() const { return label_; }

 private:
  DirectionalDistribution() = default;
  void build_profile();

  bool uniform_ = false;
  bool pseudo_isotropic_ = false;
  std::vector<double> angles_;
  std::vector<double> weights_;
  IntensityProfile profile_;
  std::string label_;
};

/// lambda(theta) = integral |sin(theta - t)| G(dt); 2/pi for the uniform law.
double lambda_theta(const DirectionalDistribution& g, double theta);

/// lambda_bar = integral lambda(theta) G(dtheta).
double lambda_bar(const DirectionalDistribution& g);

/// lambda at an atom or continuous direction, using the cached table when
/// the direction carries an atom index.
double lambda_at(const DirectionalDistribution& g, const Direction& dir);

/// theta ~ G.
Direction sample_direction(const DirectionalDistribution& g, Rng& rng);

/// Orientation pair at a typical intersection point: density
/// |sin(t0 - t1)| / lambda_bar with respect to G x G (symmetric in the pair).
std::pair<Direction, Direction> sample_angle_pair(
    const DirectionalDistribution& g, Rng& rng);

/// Direction of the next edge turning clockwise after an edge of direction
/// phi1: density sin(phi1 - phi2) / lambda(phi1) w.r.t. G on
/// [phi1 - pi, phi1). Discrete atoms at or above phi1 are shifted by -pi.
Direction sample_phi2(const DirectionalDistribution& g, const Direction& phi1,
                      Rng& rng);

/// CDF of the angle gap between the two lines at a typical vertex in the
/// uniform case: density (pi - x) sin(x) / pi on [0, pi).
double uniform_gap_cdf(double x);

/// Inverse of uniform_gap_cdf by safeguarded Newton iteration (tol 1e-12).
double uniform_gap_quantile(double u);

class DistributionSpecError : public std::invalid_argument {
 public:
  DistributionSpecError(const std::string& message, std::string token)
      : std::invalid_argument(message + ": '" + token + "'"),
        token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// Parses `unif`, `gk:<k>`, `g3:<p>,<q>`, `g4:<p>,<q>,<r>` or
/// `discrete:<angle>:<weight>,...`. Angles are radians unless written as
/// `deg:<value>`. Throws DistributionSpecError naming the offending token.
DirectionalDistribution parse_distribution(std::string_view spec);

}  // namespace polytess
