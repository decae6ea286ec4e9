#pragma once

#include <numbers>

namespace s3pinch {

/// Volume of the unit 3-sphere.
inline constexpr double kS3Volume = 2.0 * std::numbers::pi * std::numbers::pi;

/// Result of a monotone scalar solve.
struct RootResult {
  double value = 0.0;
  double residual = 0.0;  // g(value) - target
  double target = 0.0;
  double lo = 0.0, hi = 0.0;
  int iterations = 0;
};

struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
};

/// acot with range (0, pi): acot(x) = pi/2 - atan(x).
double acot(double x);

/// f(t) = sqrt(2) t + (t² - 2) atan(t / sqrt(2)), t >= 0.
double f_pinch(double t);
double f_derivative(double t);

/// Partial sum of the alternating power series of f with `terms` terms.
/// Only valid for 0 <= t < sqrt(2); error_bound is the first omitted term.
SeriesValue f_series(double t, int terms);

/// Solves f(t) = y by bisection followed by Newton polishing.
RootResult f_inverse(double y);

/// RHS - LHS of the two-variable arctangent inequality
///   -(1 + k1 k2)(atan k2 - atan k1) <= 2(-1 + ((k2 - k1)/2)²) atan((k2 - k1)/2).
/// Non-negative, zero exactly when k1 = ±k2.
double lemma3_gap(double k1, double k2);

/// The same gap in centred coordinates t = (k2 - k1)/2, s = (k2 + k1)/2,
/// with its s-derivative and mixed derivative.
double lemma3_F(double t, double s);
double lemma3_dFds(double t, double s);
double lemma3_d2Fdtds(double t, double s);

/// 2 sqrt(2) t³ / 3 - f(t) >= 0.
double cubic_gap(double t);

/// Jacobian of the normal exponential map along a normal geodesic,
/// (cos t - k1 sin t)(cos t - k2 sin t).
double hk_integrand(double k1, double k2, double t);

/// Closed form of the time integral of hk_integrand from 0 to acot(k2):
/// (-k1 + (1 + k1 k2) acot(k2)) / 2.
double hk_time_integral(double k1, double k2);

/// k2 - k1 - (1 + k1 k2)(atan k2 - atan k1).
double prop1_integrand(double k1, double k2);

/// The strictly increasing map b -> b + (b² - 1) atan b.
double beta_map(double beta);

/// Unique root of beta_map(b) = 2 g0 pi² / area.
RootResult beta_solve(int g0, double area);

/// Lower bound for max |A| on a closed embedded minimal surface of genus g:
/// f⁻¹((2 pi² (g - 1) + |M|) / (4 pi floor((g + 3) / 2))).
double min_surface_maxA_bound(int g, double ambient_volume);
RootResult min_surface_maxA_solve(int g, double ambient_volume);

/// 16 pi - 4 |M| / pi + (2 / pi) integral_f.
double eigenvalue_bound_rhs(double area, double integral_f,
                            double ambient_volume);

/// 8 pi (g + 1) and 8 pi floor((g + 3) / 2).
double yang_yau_bound(int genus);
double el_soufi_ilias_bound(int genus);

}  // namespace s3pinch
