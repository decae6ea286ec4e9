#include "s3pinch/s3_geometry.hpp"

#include "s3pinch/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace s3pinch {

namespace {

constexpr double kDegeneracy = 1e-12;
constexpr double kUmbilicGap = 1e-10;

double det3(double a00, double a01, double a02, double a10, double a11,
            double a12, double a20, double a21, double a22) {
  return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
         a02 * (a10 * a21 - a11 * a20);
}

}  // namespace

Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  // Expanding det[a, b, c, e_i] along the last column.
  Vec4 n;
  for (int i = 0; i < 4; ++i) {
    int rows[3];
    int k = 0;
    for (int r = 0; r < 4; ++r) {
      if (r != i) rows[k++] = r;
    }
    const double minor =
        det3(a[rows[0]], b[rows[0]], c[rows[0]], a[rows[1]], b[rows[1]],
             c[rows[1]], a[rows[2]], b[rows[2]], c[rows[2]]);
    n[i] = ((i + 3) % 2 == 0 ? 1.0 : -1.0) * minor;
  }
  return n;
}

Frame tangent_normal_frame(const SurfacePoint& p) {
  Frame fr;
  fr.E = p.du.dot(p.du);
  fr.F = p.du.dot(p.dv);
  fr.G = p.dv.dot(p.dv);
  const double det = fr.metric_det();
  if (!(det > kDegeneracy * fr.E * fr.G) || !std::isfinite(det)) {
    std::ostringstream msg;
    msg << "degenerate metric: EG - F^2 = " << det << " with EG = "
        << fr.E * fr.G;
    throw DegenerateMetric(msg.str());
  }
  const Vec4 n = cross4(p.position, p.du, p.dv);
  fr.normal = n / n.norm();
  return fr;
}

CurvatureData curvature_at(const SurfacePoint& p) {
  const Frame fr = tangent_normal_frame(p);
  const double e = p.duu.dot(fr.normal);
  const double f = p.duv.dot(fr.normal);
  const double g = p.dvv.dot(fr.normal);
  const double D = fr.metric_det();

  // Shape operator S = I^{-1} II.
  const double s11 = (fr.G * e - fr.F * f) / D;
  const double s12 = (fr.G * f - fr.F * g) / D;
  const double s21 = (fr.E * f - fr.F * e) / D;
  const double s22 = (fr.E * g - fr.F * f) / D;

  const double mean = 0.5 * (s11 + s22);
  const double disc = std::max(0.0, (s11 - s22) * (s11 - s22) + 4.0 * s12 * s21);
  const double gap = std::sqrt(disc);

  CurvatureData c;
  c.normal = fr.normal;
  c.H = mean;
  if (gap < kUmbilicGap) {
    c.k1 = c.k2 = mean;
    c.traceless_norm = 0.0;
  } else {
    c.k1 = mean - 0.5 * gap;
    c.k2 = mean + 0.5 * gap;
    c.traceless_norm = (c.k2 - c.k1) / std::sqrt(2.0);
  }
  c.gauss_K = 1.0 + c.k1 * c.k2;
  return c;
}

CurvatureData flip_orientation(const CurvatureData& c) {
  CurvatureData out = c;
  out.k1 = -c.k2;
  out.k2 = -c.k1;
  out.H = -c.H;
  out.normal = -c.normal;
  return out;
}

double shape_operator_residual(const SurfacePoint& p, double k) {
  const Frame fr = tangent_normal_frame(p);
  const double e = p.duu.dot(fr.normal);
  const double f = p.duv.dot(fr.normal);
  const double g = p.dvv.dot(fr.normal);
  // det(II - k I) / det(I)
  const double a = e - k * fr.E;
  const double b = f - k * fr.F;
  const double d = g - k * fr.G;
  return (a * d - b * b) / fr.metric_det();
}

double invariant_defect(const SurfacePoint& p) {
  const double scale = std::max({1.0, p.du.norm(), p.dv.norm()});
  return std::max({std::abs(p.position.norm() - 1.0),
                   std::abs(p.position.dot(p.du)) / scale,
                   std::abs(p.position.dot(p.dv)) / scale});
}

SurfacePoint finite_difference_point(const PositionMap& map, double u,
                                     double v) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double hu = std::max(std::abs(u), 1.0) * std::cbrt(eps);
  const double hv = std::max(std::abs(v), 1.0) * std::cbrt(eps);
  const double ku = std::max(std::abs(u), 1.0) * std::pow(eps, 0.25);
  const double kv = std::max(std::abs(v), 1.0) * std::pow(eps, 0.25);

  auto d_u = [&](double uu, double vv, double h) -> Vec4 {
    return (map(uu + h, vv) - map(uu - h, vv)) / (2.0 * h);
  };
  auto d_v = [&](double uu, double vv, double h) -> Vec4 {
    return (map(uu, vv + h) - map(uu, vv - h)) / (2.0 * h);
  };

  SurfacePoint p;
  p.position = map(u, v);
  p.du = d_u(u, v, hu);
  p.dv = d_v(u, v, hv);
  p.duu = (d_u(u + ku, v, ku) - d_u(u - ku, v, ku)) / (2.0 * ku);
  p.dvv = (d_v(u, v + kv, kv) - d_v(u, v - kv, kv)) / (2.0 * kv);
  p.duv = (d_v(u + ku, v, kv) - d_v(u - ku, v, kv)) / (2.0 * ku);
  return p;
}

}  // namespace s3pinch
