#include "polytess/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/legendre.hpp>

#include "polytess/format.hpp"

namespace polytess {

namespace {

constexpr double kPi = std::numbers::pi;

void check_simplex(std::initializer_list<double> w, const char* what) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError(std::string(what) + ": weights must lie in (0, 1)");
    sum += x;
  }
  if (!(sum < 1.0)) throw DomainError(std::string(what) + ": weights must sum to less than 1");
}

double g3_ratio(double p, double q) {
  return 2.0 * p * q * (1.0 - p - q) / (p + q - p * p - q * q - p * q);
}

bool in_simplex(double p, double q) {
  return p > 0.0 && q > 0.0 && p + q < 1.0;
}

// Minimises f over the plane from the simplex around `start`.
template <class F>
std::array<double, 2> nelder_mead(F f, std::array<double, 2> start, double step,
                                  double tol) {
  using Pt = std::array<double, 2>;
  std::array<Pt, 3> s{start, Pt{start[0] + step, start[1]},
                      Pt{start[0], start[1] + step}};
  std::array<double, 3> fv{f(s[0]), f(s[1]), f(s[2])};
  auto lerp = [](const Pt& a, const Pt& b, double t) {
    return Pt{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
  };
  for (int iter = 0; iter < 10000; ++iter) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const Pt best = s[idx[0]], mid = s[idx[1]], worst = s[idx[2]];
    const double fb = fv[idx[0]], fm = fv[idx[1]], fw = fv[idx[2]];
    const double size = std::max(std::hypot(mid[0] - best[0], mid[1] - best[1]),
                                 std::hypot(worst[0] - best[0], worst[1] - best[1]));
    if (size < tol) return best;
    const Pt centroid{0.5 * (best[0] + mid[0]), 0.5 * (best[1] + mid[1])};
    const Pt refl = lerp(centroid, worst, -1.0);
    const double fr = f(refl);
    Pt next;
    double fn;
    if (fr < fb) {
      const Pt exp = lerp(centroid, worst, -2.0);
      const double fe = f(exp);
      next = fe < fr ? exp : refl;
      fn = std::min(fe, fr);
    } else if (fr < fm) {
      next = refl;
      fn = fr;
    } else {
      const Pt con = lerp(centroid, worst, 0.5);
      const double fc = f(con);
      if (fc < fw) {
        next = con;
        fn = fc;
      } else {
        s = {best, lerp(best, mid, 0.5), lerp(best, worst, 0.5)};
        fv = {fb, f(s[1]), f(s[2])};
        continue;
      }
    }
    s = {best, mid, next};
    fv = {fb, fm, fn};
  }
  return s[0];
}

double t_function(double phi0, double phi1, double phi2) {
  const double num = std::sin(phi0 - phi1) * std::sin(phi1) * std::sin(phi2) *
                     std::sin(phi1 - phi2);
  if (num == 0.0) return 0.0;
  return num / (std::sin(phi1) + std::sin(phi2) + std::sin(phi1 - phi2));
}

bool in_f_support(double phi0, double phi1, double phi2) {
  return phi0 < kPi - phi1 && phi1 < phi2;
}

// Tensor rule over (x, y) in [0, 1]^2.
template <class F>
double unit_square_rule(int n, F f) {
  const auto& [x, w] = gauss_legendre(n);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = 0.5 * (x[i] + 1.0);
    double row = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      row += w[j] * f(a, 0.5 * (x[j] + 1.0));
    }
    total += w[i] * row;
  }
  return 0.25 * total;
}

template <class F>
double unit_interval_rule(int n, F f) {
  const auto& [x, w] = gauss_legendre(n);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += w[i] * f(0.5 * (x[i] + 1.0));
  return 0.5 * total;
}

void check_grid(int grid) {
  if (grid < 16) throw DomainError("quadrature grid must be at least 16");
}

double limit_rule(int n) {
  return kPi * kPi * unit_square_rule(n, [](double t, double u) {
           const double s = (1.0 - t) * u;
           return (1.0 - t) * (1.0 - t) * limit_integrand(t, s);
         });
}

double iso_double_rule(int n) {
  return unit_square_rule(n, [](double a, double v) {
    const double phi1 = kPi * a;
    const double width = kPi - phi1;
    const double phi2 = -width * v;
    const double num = std::sin(phi1) * std::sin(phi2) * std::sin(phi1 - phi2);
    if (num == 0.0) return 0.0;
    const double den = std::sin(phi2) - std::sin(phi1) - std::sin(phi1 - phi2);
    // d(phi1) d(phi2) = pi * width da dv
    return kPi * width * (width / kPi) * num / den;
  });
}

double iso_single_rule(int n) {
  return unit_interval_rule(n, [](double a) {
    const double phi1 = kPi * a;
    const double r = kPi - phi1;
    return kPi * r * (2.0 * std::sin(phi1) - r * (1.0 - std::cos(phi1))) /
           (2.0 * kPi);
  });
}

template <class Rule>
AnalyticValue doubled_quadrature(int grid, Rule rule) {
  check_grid(grid);
  const double fine = rule(grid);
  const double coarse = rule(grid / 2);
  return {fine, ValueForm::quadrature, std::abs(fine - coarse)};
}

}  // namespace

const char* to_string(ValueForm f) {
  switch (f) {
    case ValueForm::closed_form:
      return "closed_form";
    case ValueForm::series:
      return "series";
    case ValueForm::quadrature:
      return "quadrature";
  }
  return "?";
}

AnalyticValue p3_g3(double p, double q) {
  check_simplex({p, q}, "g3");
  return {g3_ratio(p, q), ValueForm::closed_form, 0.0};
}

std::pair<double, double> grad_p3_g3(double p, double q) {
  check_simplex({p, q}, "g3");
  const double den = p + q - p * p - q * q - p * q;
  const double c = 2.0 / (den * den);
  return {c * q * q * (1.0 - q) * (1.0 - 2.0 * p - q),
          c * p * p * (1.0 - p) * (1.0 - p - 2.0 * q)};
}

Argmax argmax_p3_g3() {
  constexpr int kGrid = 200;
  double best_p = 0.0, best_q = 0.0, best = -1.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double p = (i + 0.5) / kGrid;
      const double q = (j + 0.5) / kGrid;
      if (!in_simplex(p, q)) continue;
      const double v = g3_ratio(p, q);
      if (v > best) {
        best = v;
        best_p = p;
        best_q = q;
      }
    }
  }
  auto neg = [](const std::array<double, 2>& x) {
    return in_simplex(x[0], x[1]) ? -g3_ratio(x[0], x[1])
                                  : std::numeric_limits<double>::infinity();
  };
  auto x = nelder_mead(neg, {best_p, best_q}, 0.25 / kGrid, 1e-10);

  // Newton on the stationarity system q(1-2p-q) = 0, p(1-p-2q) = 0, whose
  // solution the flat maximum hides from value comparisons.
  for (int it = 0; it < 20; ++it) {
    const double p = x[0], q = x[1];
    const double f1 = 1.0 - 2.0 * p - q;
    const double f2 = 1.0 - p - 2.0 * q;
    // Jacobian of (f1, f2) is [[-2, -1], [-1, -2]], determinant 3
    const double dp = (-2.0 * f1 + f2) / 3.0;
    const double dq = (f1 - 2.0 * f2) / 3.0;
    x = {p - dp, q - dq};
    if (std::abs(dp) + std::abs(dq) < 1e-16) break;
  }
  return {x[0], x[1], g3_ratio(x[0], x[1])};
}

AnalyticValue p3_g4(double p, double q, double r) {
  check_simplex({p, q, r}, "g4");
  const double s2 = std::numbers::sqrt2;
  const double w = 1.0 - p - q - r;
  const double lead =
      2.0 * p /
      (s2 * p + 2.0 * q + s2 * r - s2 * p * p - 2.0 * q * q - s2 * r * r -
       2.0 * p * q + (2.0 - 2.0 * s2) * p * r - 2.0 * q * r);
  const double t1 =
      3.0 * q * r / (2.0 + p * (-2.0 + s2) - q + r * (-2.0 + s2));
  const double t2 =
      3.0 * s2 * q * w / (2.0 + (-2.0 + s2) * p + r * (-2.0 + 2.0 * s2));
  const double t3 = 2.0 * r * s2 * w /
                    (s2 + p * (2.0 - s2) + s2 * q + r * (2.0 - s2));
  return {lead * (t1 + t2 + t3), ValueForm::closed_form, 0.0};
}

int sigma_k(int k, int i) {
  if (k < 3) throw DomainError("sigma_k needs k >= 3");
  if (i < 1 || i > k - 2) throw DomainError("sigma_k needs 1 <= i <= k - 2");
  const double phi1 = i * kPi / k;
  int count = 0;
  for (int l = 0; l < k; ++l) {
    // atoms equal to pi - phi1 are excluded despite rounding
    if (l * kPi / k < kPi - phi1 - 1e-12) ++count;
  }
  return count;
}

AnalyticValue p3_gk(int k) {
  if (k < 3) throw DomainError("p3_gk needs k >= 3");
  const double kk = static_cast<double>(k);
  double outer = 0.0;
  for (int i = 1; i <= k - 2; ++i) {
    const double si = std::sin(i * kPi / kk);
    double inner = 0.0;
    for (int j = 1; j <= k - i - 1; ++j) {
      const double sj = std::sin(j * kPi / kk);
      const double sij = std::sin((i + j) * kPi / kk);
      inner += si * sj * sij / (si + sj + sij);
    }
    outer += static_cast<double>(k - i) * inner;
  }
  const double t = std::tan(kPi / (2.0 * kk));
  return {4.0 / kk * t * t * outer, ValueForm::closed_form, 0.0};
}

double p3_gk_closed_form(int k) {
  switch (k) {
    case 3:
      return 2.0 / 9.0;
    case 4:
      return 4.0 * (5.0 * std::numbers::sqrt2 - 7.0);
    case 5:
      return 32.0 / std::sqrt(5.0) - 14.0;
    case 6:
      return 4.0 / 3.0 * (70.0 * std::numbers::sqrt3 - 121.0);
    default:
      return std::numeric_limits<double>::quiet_NaN();
  }
}

AnalyticValue p3_uniform() {
  return {2.0 - kPi * kPi / 6.0, ValueForm::closed_form, 0.0};
}

double apery_partial_sum(std::uint64_t n, bool tail_corrected) {
  double s = 0.0;
  for (std::uint64_t i = n; i >= 1; --i) {
    const double x = static_cast<double>(i);
    s += 1.0 / (x * x * x);
  }
  if (tail_corrected && n > 0) {
    const double x = static_cast<double>(n);
    s += 1.0 / (2.0 * x * x) - 1.0 / (2.0 * x * x * x) + 1.0 / (4.0 * x * x * x * x);
  }
  return s;
}

AnalyticValue p4_uniform() {
  // smallest N whose plain tail bound 1/(2N^2) is below 1e-14
  const auto n = static_cast<std::uint64_t>(std::ceil(std::sqrt(0.5e14))) + 1;
  const double zeta3 = apery_partial_sum(n, true);
  const double x = static_cast<double>(n);
  const double value = kPi * kPi * std::numbers::ln2 - 1.0 / 3.0 -
                       7.0 * kPi * kPi / 36.0 - 3.5 * zeta3;
  return {value, ValueForm::series, 3.5 / (2.0 * x * x)};
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(
    int n) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // non-negative zeros of P_n, ascending
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  for (auto r = half.rbegin(); r != half.rend(); ++r) {
    if (*r != 0.0) nodes.push_back(-*r);
  }
  for (double z : half) nodes.push_back(z);
  std::vector<double> weights(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    const double dp = boost::math::legendre_p_prime(n, x);
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::make_pair(std::move(nodes), std::move(weights)))
      .first->second;
}

double limit_integrand(double t, double s) {
  const double a = std::sin(kPi * t);
  const double b = std::sin(kPi * s);
  const double c = std::sin(kPi * (t + s));
  const double num = a * b * c;
  if (num == 0.0) return 0.0;
  return num / (a + b + c);
}

AnalyticValue limit_integral(int grid) {
  return doubled_quadrature(grid, limit_rule);
}

double fk_integrand(int k, double phi0, double phi1, double phi2) {
  if (k < 1) throw DomainError("fk_integrand needs k >= 1");
  if (!in_f_support(phi0, phi1, phi2)) return 0.0;
  const double t = std::tan(kPi / (2.0 * k));
  return 4.0 * k * k * t * t * t_function(phi0, phi1, phi2);
}

double f_limit_integrand(double phi0, double phi1, double phi2) {
  if (!in_f_support(phi0, phi1, phi2)) return 0.0;
  return kPi * kPi * t_function(phi0, phi1, phi2);
}

AnalyticValue iso_double_integral(int grid) {
  return doubled_quadrature(grid, iso_double_rule);
}

AnalyticValue iso_single_integral(int grid) {
  return doubled_quadrature(grid, iso_single_rule);
}

std::pair<double, double> iso_integral_reduction_check(int grid) {
  return {iso_double_integral(grid).value, iso_single_integral(grid).value};
}

std::vector<GkRow> gk_table(int k_min, int k_max) {
  if (k_min < 3 || k_max < k_min) {
    throw DomainError("k range must satisfy 3 <= k-min <= k-max");
  }
  std::vector<GkRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    rows.push_back({k, p3_gk(k).value, p3_gk_closed_form(k)});
  }
  return rows;
}

void write_gk_table_csv(std::ostream& out, const std::vector<GkRow>& rows) {
  out << "k,p3_exact,p3_formula_closed\n";
  for (const auto& r : rows) {
    out << r.k << ',' << format_number(r.p3) << ',';
    if (!std::isnan(r.closed_form)) out << format_number(r.closed_form);
    out << '\n';
  }
}

}  // namespace polytess
