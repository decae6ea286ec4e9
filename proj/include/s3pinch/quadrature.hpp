#pragma once

#include "s3pinch/s3_geometry.hpp"
#include "s3pinch/surface.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace s3pinch {

inline constexpr int kDefaultResolution = 64;
inline constexpr double kEulerTolerance = 0.01;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

/// Trapezoidal rule in periodic directions, composite Gauss-Legendre
/// (16-point panels once n is a multiple of 16) otherwise.
QuadratureGrid make_grid(const ParameterDomain& domain, int nu, int nv);

/// The surface's own grid when it has one, otherwise make_grid.
QuadratureGrid grid_for(const ParametricSurface& surface, int nu, int nv);

/// Pairwise (tree) summation; result is independent of evaluation order.
double pairwise_sum(std::span<const double> values);

/// Everything known at one quadrature node. `weight` already includes the
/// area element sqrt(EG - F²).
struct NodeSample {
  double u = 0.0, v = 0.0;
  double weight = 0.0;
  SurfacePoint point;
  CurvatureData curvature;
};

/// Evaluates the surface and its curvature at every node, row-major in u.
/// A degenerate node aborts with DegenerateMetric naming its location.
std::vector<NodeSample> sample_surface(const ParametricSurface& surface,
                                       const QuadratureGrid& grid);

using ScalarField =
    std::function<double(const CurvatureData&, const SurfacePoint&)>;

double integrate(std::span<const NodeSample> samples, const ScalarField& phi);
double integrate(const ParametricSurface& surface, const ScalarField& phi,
                 const QuadratureGrid& grid);

/// Certificate for the L³ gap theorem on minimal surfaces.
struct GapCertificate {
  double integral_A3 = 0.0;  // ∫|A|³
  double threshold = 0.0;    // 3 sqrt(2) pi²
  bool below_threshold = false;
};

struct GenusReport {
  int nu = 0, nv = 0;
  double area = 0.0;
  double total_K = 0.0;
  double euler_raw = 0.0;  // total_K / 2 pi
  int euler_char = 0;
  int genus = 0;
  double integral_f = 0.0;    // ∫ f(|Å|)
  double integral_A3 = 0.0;   // ∫ |Å|³
  double max_abs_H = 0.0;
  double max_traceless = 0.0;
  // 4 pi² g <= ∫ f(|Å|)
  double bound_lhs = 0.0;
  double bound_rhs = 0.0;
  double slack = 0.0;
  // 2 pi² g <= (sqrt 2 / 3) ∫ |Å|³
  double cubic_lhs = 0.0;
  double cubic_rhs = 0.0;
  double cubic_slack = 0.0;
  std::optional<GapCertificate> gap;  // only for surfaces flagged minimal
  std::optional<double> convergence;  // rel. change of ∫f under doubling
};

struct GenusOptions {
  double euler_tolerance = kEulerTolerance;
  bool with_convergence = true;
};

GenusReport genus_report(const ParametricSurface& surface,
                         const QuadratureGrid& grid,
                         const GenusOptions& options = {});
GenusReport genus_report(const ParametricSurface& surface, int nu = kDefaultResolution,
                         int nv = kDefaultResolution,
                         const GenusOptions& options = {});

struct ProbeStep {
  int nu = 0, nv = 0;
  double value = 0.0;  // ∫ f(|Å|)
  std::optional<double> rel_change;
};

/// Doubles the resolution until ∫f changes by less than 1e-9 (relative)
/// or four doublings have been made.
std::vector<ProbeStep> convergence_probe(const ParametricSurface& surface,
                                         int base_nu, int base_nv);

double relative_change(double previous, double current);

}  // namespace s3pinch
