#pragma once

#include <cmath>

#include "polytess/directional.hpp"
#include "polytess/geometry.hpp"

namespace polytess::test {

// Triangle probability of a discrete law by summing over the finitely many
// (phi0, phi1, phi2) configurations. With Z1 ~ Exp(lambda1) and survival
// weight exp(-c z1 / 2), the expected weight is lambda1 / (lambda1 + c / 2).
inline double p3_by_configurations(const DirectionalDistribution& g) {
  const auto& a = g.angles();
  const auto& w = g.weights();
  const std::size_t k = a.size();
  auto lam = [&](double theta) {
    double s = 0.0;
    for (std::size_t m = 0; m < k; ++m) s += w[m] * std::abs(std::sin(theta - a[m]));
    return s;
  };
  double pair_total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) pair_total += w[i] * w[j] * std::sin(a[j] - a[i]);
  }
  double p3 = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double phi0 = a[i], phi1 = a[j];
      const double p_pair = w[i] * w[j] * std::sin(phi1 - phi0) / pair_total;
      const double l1 = lam(phi1);
      for (std::size_t l = 0; l < k; ++l) {
        // shift phi2 into [phi1 - pi, phi1)
        const double mapped = a[l] >= phi1 ? a[l] - kPi : a[l];
        if (!(mapped < phi0) || l == i) continue;
        const double p_phi2 = w[l] * std::sin(phi1 - mapped) / l1;
        const double s = std::sin(phi0 - mapped);
        const double r2 = std::sin(phi1 - phi0) / s;
        const double r3 = std::sin(phi1 - mapped) / s;
        const double c = lam(mapped) * r2 + lam(phi0) * r3 - l1;
        p3 += p_pair * p_phi2 * l1 / (l1 + 0.5 * c);
      }
    }
  }
  return p3;
}

}  // namespace polytess::test
