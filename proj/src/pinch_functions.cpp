#include "s3pinch/pinch_functions.hpp"

#include "s3pinch/errors.hpp"
#include "s3pinch/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

namespace s3pinch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kBracketLimit = 1e6;
constexpr double kThinStrip = 0.25;
constexpr double kSeriesBelow = 0.5;

// Σ_{l >= first} (-1)^(l+1) 8l/(4l²-1) x^(2l+1), summed from the small end.
// Only used for x² <= 1/8, where the terms shrink geometrically.
double series_from(double x, int first) {
  const double x2 = x * x;
  int last = first;
  double power = std::pow(x, 2 * first + 1);
  while (power > 1e-18 * std::pow(x, 2 * first + 1)) {
    power *= x2;
    ++last;
  }
  double sum = 0.0;
  for (int l = last; l >= first; --l) {
    const double term = 8.0 * l / (4.0 * l * l - 1.0) * std::pow(x, 2 * l + 1);
    sum += (l % 2 == 1) ? term : -term;
  }
  return sum;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

void require_nonnegative(double x, const char* what) {
  require_finite(x, what);
  if (x < 0.0) {
    std::ostringstream msg;
    msg << what << ": argument must be >= 0, got " << x;
    throw DomainError(msg.str());
  }
}

void require_ordered(double k1, double k2, const char* what) {
  require_finite(k1, what);
  require_finite(k2, what);
  if (k1 > k2) {
    std::ostringstream msg;
    msg << what << ": requires k1 <= k2, got (" << k1 << ", " << k2 << ")";
    throw DomainError(msg.str());
  }
}

// Root of an increasing g on [0, inf) with g(0) = 0 <= target. The upper
// end of the bracket doubles until it straddles the target.
RootResult solve_increasing(const std::function<double(double)>& g,
                            const std::function<double(double)>& dg,
                            double target, const char* what) {
  RootResult r;
  r.target = target;
  if (target == 0.0) return r;

  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketLimit) {
      if (g(kBracketLimit) >= target) {
        hi = kBracketLimit;
        break;
      }
      std::ostringstream msg;
      msg << what << ": target " << target << " exceeds g(" << kBracketLimit
          << ") = " << g(kBracketLimit);
      throw BracketFailure(msg.str());
    }
  }

  int iterations = 0;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
    ++iterations;
  }

  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 20; ++i) {
    const double gx = g(x);
    (gx < target ? lo : hi) = x;
    const double slope = dg(x);
    if (!(slope > 0.0)) break;
    double next = x - (gx - target) / slope;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    ++iterations;
    if (step <= 1e-12 * std::max(1.0, std::abs(x))) break;
  }

  const double tol = 1e-11 * (1.0 + std::abs(target));
  if (std::abs(g(x) - target) > tol) {
    // Newton stalled; finish by bisection down to the last representable gap.
    while (hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (g(mid) < target ? lo : hi) = mid;
      ++iterations;
    }
    x = std::abs(g(lo) - target) < std::abs(g(hi) - target) ? lo : hi;
  }

  r.value = x;
  r.residual = g(x) - target;
  r.lo = std::min(lo, x);
  r.hi = std::max(hi, x);
  r.iterations = iterations;
  return r;
}

int floor_half_g_plus_3(int g) { return (g + 3) / 2; }

}  // namespace

double acot(double x) { return 0.5 * kPi - std::atan(x); }

double f_pinch(double t) {
  require_nonnegative(t, "f_pinch");
  if (t < kSeriesBelow) return series_from(t / kSqrt2, 1);
  return kSqrt2 * t + (t * t - 2.0) * std::atan(t / kSqrt2);
}

double f_derivative(double t) {
  require_nonnegative(t, "f_derivative");
  return 2.0 * kSqrt2 * t * t / (2.0 + t * t) + 2.0 * t * std::atan(t / kSqrt2);
}

SeriesValue f_series(double t, int terms) {
  require_nonnegative(t, "f_series");
  if (t >= kSqrt2) {
    throw DomainError("f_series: t must be below sqrt(2), the radius of convergence");
  }
  if (terms < 0) throw DomainError("f_series: negative term count");

  const double x = t / kSqrt2;
  const double x2 = x * x;
  auto coefficient = [](int l) {
    return 8.0 * l / (4.0 * l * l - 1.0);
  };

  SeriesValue out;
  double power = x * x2;  // x^(2l+1) for l = 1
  double sign = 1.0;
  for (int l = 1; l <= terms; ++l) {
    out.value += sign * coefficient(l) * power;
    power *= x2;
    sign = -sign;
  }
  out.error_bound = coefficient(terms + 1) * power;
  return out;
}

RootResult f_inverse(double y) {
  require_nonnegative(y, "f_inverse");
  return solve_increasing(f_pinch, f_derivative, y, "f_inverse");
}

double lemma3_gap(double k1, double k2) {
  require_ordered(k1, k2, "lemma3_gap");
  return lemma3_F(0.5 * (k2 - k1), 0.5 * (k1 + k2));
}

// F(t, s) = ∫_0^t ∫_0^s ∂²F/∂t∂s, the integrand being free of cancellation.
// Near the lines t = 0 or s = 0 the closed form loses all relative accuracy,
// so the strip is integrated with Gauss-Legendre panels instead.
double lemma3_F_strip(double t, double s) {
  static const GaussLegendreRule rule = gauss_legendre(16);
  auto panels = [](double len) {
    std::vector<double> edges{0.0};
    double x = 0.0;
    while (x < len) {
      x = std::min(len, x < 2.0 ? x + 0.5 : 1.5 * x);
      edges.push_back(x);
    }
    return edges;
  };
  const double as = std::abs(s);
  const std::vector<double> et = t <= as ? std::vector<double>{0.0, t} : panels(t);
  const std::vector<double> es = t <= as ? panels(as) : std::vector<double>{0.0, as};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < et.size(); ++i) {
    const double ht = 0.5 * (et[i + 1] - et[i]), ct = 0.5 * (et[i + 1] + et[i]);
    for (std::size_t j = 0; j + 1 < es.size(); ++j) {
      const double hs = 0.5 * (es[j + 1] - es[j]), cs = 0.5 * (es[j + 1] + es[j]);
      double panel = 0.0;
      for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
          row += rule.weights[b] *
                 lemma3_d2Fdtds(ct + ht * rule.nodes[a], cs + hs * rule.nodes[b]);
        }
        panel += rule.weights[a] * row;
      }
      total += ht * hs * panel;
    }
  }
  return total;
}

double lemma3_F(double t, double s) {
  require_nonnegative(t, "lemma3_F");
  require_finite(s, "lemma3_F");
  if (std::min(t, std::abs(s)) < kThinStrip) return lemma3_F_strip(t, s);
  return 2.0 * (t * t - 1.0) * std::atan(t) +
         (1.0 + s * s - t * t) * (std::atan(s + t) - std::atan(s - t));
}

double lemma3_dFds(double t, double s) {
  require_nonnegative(t, "lemma3_dFds");
  require_finite(s, "lemma3_dFds");
  const double p = t + s;
  const double m = t - s;
  return 2.0 * s * (std::atan(s + t) - std::atan(s - t)) +
         (1.0 + s * s - t * t) * (1.0 / (1.0 + p * p) - 1.0 / (1.0 + m * m));
}

double lemma3_d2Fdtds(double t, double s) {
  require_nonnegative(t, "lemma3_d2Fdtds");
  require_finite(s, "lemma3_d2Fdtds");
  const double a = 1.0 + (t - s) * (t - s);
  const double b = 1.0 + (t + s) * (t + s);
  return 32.0 * t * t * s * (1.0 + t * t + s * s) / (a * a * b * b);
}

double cubic_gap(double t) {
  require_nonnegative(t, "cubic_gap");
  if (t < kSeriesBelow) return -series_from(t / kSqrt2, 2);
  return 2.0 * kSqrt2 * t * t * t / 3.0 - f_pinch(t);
}

double hk_integrand(double k1, double k2, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return (c - k1 * s) * (c - k2 * s);
}

double hk_time_integral(double k1, double k2) {
  require_ordered(k1, k2, "hk_time_integral");
  return 0.5 * (-k1 + (1.0 + k1 * k2) * acot(k2));
}

double prop1_integrand(double k1, double k2) {
  require_ordered(k1, k2, "prop1_integrand");
  return k2 - k1 - (1.0 + k1 * k2) * (std::atan(k2) - std::atan(k1));
}

double beta_map(double beta) {
  return beta + (beta * beta - 1.0) * std::atan(beta);
}

RootResult beta_solve(int g0, double area) {
  if (g0 < 1) throw DomainError("beta_solve: g0 must be a positive integer");
  require_finite(area, "beta_solve");
  if (!(area > 0.0)) throw DomainError("beta_solve: area must be positive");
  const double target = 2.0 * g0 * kPi * kPi / area;
  auto slope = [](double b) {
    return 2.0 * b * std::atan(b) + 2.0 * b * b / (1.0 + b * b);
  };
  return solve_increasing(beta_map, slope, target, "beta_solve");
}

RootResult min_surface_maxA_solve(int g, double ambient_volume) {
  if (g < 1) throw DomainError("min_surface_maxA_bound: genus must be >= 1");
  require_finite(ambient_volume, "min_surface_maxA_bound");
  if (!(ambient_volume > 0.0) || ambient_volume > kS3Volume) {
    throw DomainError(
        "min_surface_maxA_bound: ambient volume must lie in (0, 2 pi^2]");
  }
  const double arg = (2.0 * kPi * kPi * (g - 1) + ambient_volume) /
                     (4.0 * kPi * floor_half_g_plus_3(g));
  return f_inverse(arg);
}

double min_surface_maxA_bound(int g, double ambient_volume) {
  return min_surface_maxA_solve(g, ambient_volume).value;
}

double eigenvalue_bound_rhs(double area, double integral_f,
                            double ambient_volume) {
  require_nonnegative(area, "eigenvalue_bound_rhs");
  require_nonnegative(integral_f, "eigenvalue_bound_rhs");
  require_finite(ambient_volume, "eigenvalue_bound_rhs");
  if (!(ambient_volume > 0.0) || ambient_volume > kS3Volume) {
    throw DomainError("eigenvalue_bound_rhs: ambient volume must lie in (0, 2 pi^2]");
  }
  return 16.0 * kPi - 4.0 * ambient_volume / kPi + (2.0 / kPi) * integral_f;
}

double yang_yau_bound(int genus) { return 8.0 * kPi * (genus + 1); }

double el_soufi_ilias_bound(int genus) {
  return 8.0 * kPi * floor_half_g_plus_3(genus);
}

}  // namespace s3pinch
