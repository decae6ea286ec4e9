#pragma once

#include "s3pinch/surface.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace s3pinch {

enum class SurfaceKind { GeodesicSphere, FlatTorus, PerturbedSphere };

/// Closed-form data for a catalog surface. Curvatures are with respect to
/// the chart normal; side 1 is the region that normal points into.
struct ExactData {
  std::optional<double> area;
  std::optional<std::array<double, 2>> side_volumes;
  std::optional<double> lambda1;
  std::optional<std::pair<double, double>> principal_curvatures;
  std::optional<double> traceless_norm;
  std::optional<double> gauss_K;
};

/// A surface from the exact catalog: analytic partials, a classifier for the
/// two components of its complement, and whatever is known in closed form.
class CatalogSurface : public ParametricSurface {
 public:
  virtual SurfaceKind kind() const = 0;
  virtual const ExactData& exact() const = 0;

  /// 1 for the component the chart normal points into, 2 for the other.
  /// `x` need not be normalized.
  virtual int side_of(const Vec4& x) const = 0;
};

using CatalogPtr = std::shared_ptr<const CatalogSurface>;

/// Distance sphere of radius r about the pole e4. Chart (theta, phi) with
/// theta in (0, pi) non-periodic and phi periodic; the normal points into
/// the ball {x4 > cos r}.
CatalogPtr geodesic_sphere(double r);

/// (a cos u, a sin u, b cos v, b sin v) with b = sqrt(1 - a²). Side 1 is
/// {x1² + x2² > a²} of volume 2 pi² b²; side 2 has volume 2 pi² a².
CatalogPtr flat_torus(double a);

/// Radial graph r + eps Y_lm over the distance spheres about e4, where Y_lm
/// is the real spherical harmonic of unit L² norm. |eps| <= 0.3.
CatalogPtr perturbed_sphere(double r, double eps, int l, int m);

/// Value and (theta, phi) partials up to second order of a real spherical
/// harmonic.
struct HarmonicJet {
  double value = 0.0;
  double d_theta = 0.0, d_phi = 0.0;
  double d_theta_theta = 0.0, d_theta_phi = 0.0, d_phi_phi = 0.0;
};
HarmonicJet real_spherical_harmonic(int l, int m, double theta, double phi);

/// Parses `sphere:r=<x>`, `torus:a=<x>`, `psphere:r=<x>,eps=<x>,l=<n>,m=<n>`,
/// and the aliases `equator` and `clifford`. Throws ParseError on bad
/// syntax and DomainError on out-of-range parameters.
CatalogPtr parse_surface_spec(std::string_view spec);

}  // namespace s3pinch
