// Exact and numerically integrated triangle and quadrangle probabilities of
// the typical cell for the directional laws G3(p, q), G4(p, q, r), G_k and
// the uniform law.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polytess {

enum class ValueForm { closed_form, series, quadrature };

const char* to_string(ValueForm f);

struct AnalyticValue {
  double value = 0.0;
  ValueForm form = ValueForm::closed_form;
  double error_bound = 0.0;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// 2pq(1-p-q) / (p + q - p^2 - q^2 - pq) on 0 < p, q and p + q < 1.
AnalyticValue p3_g3(double p, double q);

/// Gradient of p3_g3 in (p, q).
std::pair<double, double> grad_p3_g3(double p, double q);

struct Argmax {
  double p = 0.0;
  double q = 0.0;
  double value = 0.0;
};

/// Maximiser of p3_g3 over the open simplex: 200 x 200 grid, Nelder-Mead
/// refinement, then Newton steps on the stationarity equations.
Argmax argmax_p3_g3();

/// Triangle probability for p delta_0 + q delta_{pi/4} + r delta_{pi/2} +
/// (1-p-q-r) delta_{3pi/4}.
AnalyticValue p3_g4(double p, double q, double r);

/// Number of atoms phi0 in {0, pi/k, ..., (k-1)pi/k} with
/// phi0 < pi - i pi/k, counted directly.
int sigma_k(int k, int i);

/// Double sum for equal weights on k equally spaced directions, k >= 3.
AnalyticValue p3_gk(int k);

/// Closed forms of p3_gk for k = 3..6; NaN otherwise.
double p3_gk_closed_form(int k);

/// 2 - pi^2/6.
AnalyticValue p3_uniform();

/// sum_{i=1}^{n} 1/i^3, optionally with the Euler-Maclaurin estimate of the
/// tail 1/(2n^2) - 1/(2n^3) + 1/(4n^4) added.
double apery_partial_sum(std::uint64_t n, bool tail_corrected);

/// pi^2 log 2 - 1/3 - 7 pi^2/36 - (7/2) zeta(3), the probability that the
/// isotropic typical cell is a quadrangle.
AnalyticValue p4_uniform();

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(
    int n);

/// pi^2 int_0^1 (1 - t) int_0^{1-t} sin(pi t) sin(pi s) sin(pi (t + s)) /
/// (sin(pi t) + sin(pi s) + sin(pi (t + s))) ds dt, by a `grid`-point tensor
/// rule on s = (1 - t) u. error_bound = |Q(grid) - Q(grid / 2)|.
AnalyticValue limit_integral(int grid);

/// Integrand of the limit integral at (t, s).
double limit_integrand(double t, double s);

/// 4 k^2 tan^2(pi/2k) T(phi0, phi1, phi2) 1{phi0 < pi - phi1, phi1 < phi2}.
double fk_integrand(int k, double phi0, double phi1, double phi2);

/// pi^2 T(phi0, phi1, phi2) 1{phi0 < pi - phi1, phi1 < phi2}.
double f_limit_integrand(double phi0, double phi1, double phi2);

/// Isotropic triangle probability as the double integral over
/// (phi1, phi2) in (0, pi) x (phi1 - pi, 0) and as the reduced single
/// integral over phi1.
AnalyticValue iso_double_integral(int grid);
AnalyticValue iso_single_integral(int grid);
std::pair<double, double> iso_integral_reduction_check(int grid);

struct GkRow {
  int k = 0;
  double p3 = 0.0;
  double closed_form = 0.0;  ///< NaN when no closed form is known
};

std::vector<GkRow> gk_table(int k_min, int k_max);

/// Header `k,p3_exact,p3_formula_closed`; the closed-form column is empty
/// for k outside 3..6.
void write_gk_table_csv(std::ostream& out, const std::vector<GkRow>& rows);

}  // namespace polytess
