#pragma once

#include <Eigen/Core>

#include <functional>

namespace s3pinch {

using Vec4 = Eigen::Vector4d;

/// A point of an immersed surface in the unit 3-sphere together with the
/// first and second partials of the immersion at that parameter value.
struct SurfacePoint {
  Vec4 position;
  Vec4 du, dv;
  Vec4 duu, duv, dvv;
};

/// Unit normal plus the first fundamental form at a point.
struct Frame {
  Vec4 normal;
  double E = 0.0, F = 0.0, G = 0.0;

  double metric_det() const { return E * G - F * F; }
};

/// Pointwise extrinsic data. Principal curvatures are taken with respect to
/// `normal`, using the convention II(X, Y) = <d²x(X, Y), normal>, so a
/// geodesic sphere of radius r has k = cot r for the normal pointing into
/// its ball.
struct CurvatureData {
  double k1 = 0.0;  // k1 <= k2
  double k2 = 0.0;
  double H = 0.0;               // (k1 + k2) / 2
  double traceless_norm = 0.0;  // |Å| = (k2 - k1) / sqrt(2)
  double gauss_K = 0.0;         // 1 + k1 k2
  Vec4 normal = Vec4::Zero();

  double norm_A_squared() const { return k1 * k1 + k2 * k2; }
};

/// Generalized cross product in R^4: the vector n with <n, w> = det[a, b, c, w].
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c);

/// Unit normal (normalized cross4(position, du, dv)) and E, F, G.
/// Throws DegenerateMetric when EG - F² <= 1e-12 EG.
Frame tangent_normal_frame(const SurfacePoint& p);

/// Principal curvatures from the eigenvalues of I⁻¹ II, sorted ascending.
/// Gaps below 1e-10 are treated as umbilic (k1 = k2 = H).
CurvatureData curvature_at(const SurfacePoint& p);

/// Data for the opposite normal: (k1, k2) -> (-k2, -k1), H and normal negate.
CurvatureData flip_orientation(const CurvatureData& c);

/// Residual of the characteristic equation det(II - k I) scaled by the
/// metric, used to check eigenvalue correctness.
double shape_operator_residual(const SurfacePoint& p, double k);

/// Largest violation among the SurfacePoint invariants: |position| - 1,
/// tangency to S³. Returns 0 for an exact point.
double invariant_defect(const SurfacePoint& p);

using PositionMap = std::function<Vec4(double u, double v)>;

/// Builds a SurfacePoint from a position-only map with central differences.
/// First partials use h = max(|x|, 1) eps^(1/3); second partials use nested
/// central differences with h = max(|x|, 1) eps^(1/4).
SurfacePoint finite_difference_point(const PositionMap& map, double u,
                                     double v);

}  // namespace s3pinch
