#include "s3pinch/errors.hpp"
#include "s3pinch/s3_geometry.hpp"
#include "s3pinch/surface_catalog.hpp"

#include <Eigen/LU>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace s3pinch;

namespace {

constexpr double kPi = std::numbers::pi;

Vec4 sphere_position(double r, double theta, double phi) {
  return Vec4(std::sin(r) * std::sin(theta) * std::cos(phi),
              std::sin(r) * std::sin(theta) * std::sin(phi),
              std::sin(r) * std::cos(theta), std::cos(r));
}

Vec4 torus_position(double a, double u, double v) {
  const double b = std::sqrt(1.0 - a * a);
  return Vec4(a * std::cos(u), a * std::sin(u), b * std::cos(v), b * std::sin(v));
}

}  // namespace

TEST_CASE("cross4 is orthogonal to its arguments and follows det orientation") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec4 a(g(rng), g(rng), g(rng), g(rng));
    const Vec4 b(g(rng), g(rng), g(rng), g(rng));
    const Vec4 c(g(rng), g(rng), g(rng), g(rng));
    const Vec4 n = cross4(a, b, c);
    CHECK(std::abs(n.dot(a)) < 1e-12 * (1 + n.norm() * a.norm()));
    CHECK(std::abs(n.dot(b)) < 1e-12 * (1 + n.norm() * b.norm()));
    CHECK(std::abs(n.dot(c)) < 1e-12 * (1 + n.norm() * c.norm()));
    Eigen::Matrix4d m;
    m << a, b, c, n;
    CHECK(m.determinant() == doctest::Approx(n.squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("frame of the Clifford torus at the origin") {
  const double s = 1.0 / std::sqrt(2.0);
  SurfacePoint p;
  p.position = Vec4(s, 0, s, 0);
  p.du = Vec4(0, s, 0, 0);
  p.dv = Vec4(0, 0, 0, s);
  p.duu = Vec4(-s, 0, 0, 0);
  p.duv = Vec4::Zero();
  p.dvv = Vec4(0, 0, -s, 0);
  const Frame fr = tangent_normal_frame(p);
  // Direct orthonormality check against all three constraint vectors.
  CHECK(std::abs(fr.normal.dot(p.position)) < 1e-15);
  CHECK(std::abs(fr.normal.dot(p.du)) < 1e-15);
  CHECK(std::abs(fr.normal.dot(p.dv)) < 1e-15);
  CHECK(fr.normal.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(std::abs(fr.normal[0]) - s) < 1e-15);
  CHECK(std::abs(std::abs(fr.normal[2]) - s) < 1e-15);
  CHECK(fr.normal[0] * fr.normal[2] < 0.0);
  CHECK(fr.E == doctest::Approx(0.5));
  CHECK(fr.F == 0.0);
  CHECK(fr.G == doctest::Approx(0.5));

  const CurvatureData c = curvature_at(p);
  CHECK(c.k1 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(c.k2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(c.H) < 1e-15);
  CHECK(c.traceless_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(c.gauss_K) < 1e-14);
}

TEST_CASE("equator normal is the pole") {
  const auto eq = geodesic_sphere(kPi / 2);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05), ph(0.0, 2 * kPi);
  for (int i = 0; i < 50; ++i) {
    const Frame fr = tangent_normal_frame(eq->evaluate(th(rng), ph(rng)));
    CHECK(std::abs(std::abs(fr.normal[3]) - 1.0) < 1e-14);
    CHECK(fr.normal.head<3>().norm() < 1e-14);
  }
}

TEST_CASE("degenerate metric is rejected") {
  SurfacePoint p;
  p.position = Vec4(1, 0, 0, 0);
  p.du = Vec4(0, 1, 0, 0);
  p.dv = Vec4(0, 2, 0, 0);
  p.duu = p.duv = p.dvv = Vec4::Zero();
  CHECK_THROWS_AS(tangent_normal_frame(p), DegenerateMetric);
  CHECK_THROWS_AS(curvature_at(p), DegenerateMetric);

  // Nearly parallel beyond the relative threshold.
  p.dv = Vec4(0, 1, 1e-7, 0);
  CHECK_THROWS_AS(curvature_at(p), DegenerateMetric);
  // Scale invariance: a tiny but well-conditioned frame is fine.
  p.du = Vec4(0, 1e-5, 0, 0);
  p.dv = Vec4(0, 0, 1e-5, 0);
  CHECK_NOTHROW(curvature_at(p));
}

TEST_CASE("geodesic sphere curvature against a finite-difference oracle") {
  for (double r : {kPi / 4, kPi / 3}) {
    const PositionMap map = [r](double u, double v) { return sphere_position(r, u, v); };
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.3, kPi - 0.3), ph(0.0, 2 * kPi);
    for (int i = 0; i < 20; ++i) {
      const SurfacePoint p = finite_difference_point(map, th(rng), ph(rng));
      const CurvatureData c = curvature_at(p);
      const double k = 1.0 / std::tan(r);
      // Nested central differences carry O(sqrt(eps)) noise.
      CHECK(c.k1 == doctest::Approx(k).epsilon(1e-5));
      CHECK(c.k2 == doctest::Approx(k).epsilon(1e-5));
      CHECK(c.gauss_K == doctest::Approx(1.0 / std::pow(std::sin(r), 2)).epsilon(1e-5));
    }
  }
}

TEST_CASE("flat torus curvature against a finite-difference oracle") {
  for (double a : {0.3, 0.6, 1.0 / std::sqrt(2.0), 0.9}) {
    const double b = std::sqrt(1 - a * a);
    const PositionMap map = [a](double u, double v) { return torus_position(a, u, v); };
    const SurfacePoint p = finite_difference_point(map, 0.4, 2.1);
    const CurvatureData c = curvature_at(p);
    CHECK(c.k1 == doctest::Approx(-b / a).epsilon(1e-5));
    CHECK(c.k2 == doctest::Approx(a / b).epsilon(1e-5));
    CHECK(std::abs(c.gauss_K) < 1e-5);
  }
}

TEST_CASE("curvature data invariants on random catalog points") {
  const std::vector<CatalogPtr> surfaces = {
      geodesic_sphere(0.7), flat_torus(0.45), perturbed_sphere(1.2, 0.2, 3, 1),
      perturbed_sphere(2.0, -0.15, 2, -2)};
  std::mt19937_64 rng(5);
  for (const auto& s : surfaces) {
    const ParameterDomain d = s->domain();
    std::uniform_real_distribution<double> uu(d.u_min + 0.02, d.u_max - 0.02);
    std::uniform_real_distribution<double> vv(d.v_min, d.v_max);
    for (int i = 0; i < 250; ++i) {
      const SurfacePoint p = s->evaluate(uu(rng), vv(rng));
      CHECK(invariant_defect(p) < 1e-12);
      const CurvatureData c = curvature_at(p);
      CHECK(c.k1 <= c.k2);
      CHECK(c.traceless_norm == (c.k2 - c.k1) / std::sqrt(2.0));
      CHECK(c.gauss_K == 1.0 + c.k1 * c.k2);
      const double A2 = c.norm_A_squared();
      CHECK(std::abs(c.traceless_norm * c.traceless_norm - (A2 - 2 * c.H * c.H)) <
            1e-12 * (1 + A2));
      for (double k : {c.k1, c.k2}) {
        CHECK(std::abs(shape_operator_residual(p, k)) < 1e-10 * (1 + k * k));
      }

      // Reversing the chart orientation negates the normal.
      SurfacePoint q = p;
      std::swap(q.du, q.dv);
      std::swap(q.duu, q.dvv);
      const CurvatureData f = curvature_at(q);
      const CurvatureData expect = flip_orientation(c);
      CHECK(f.k1 == doctest::Approx(expect.k1).epsilon(1e-10));
      CHECK(f.k2 == doctest::Approx(expect.k2).epsilon(1e-10));
      CHECK(f.H == doctest::Approx(expect.H).epsilon(1e-10));
      CHECK(f.traceless_norm == doctest::Approx(c.traceless_norm).epsilon(1e-10));
      CHECK(f.gauss_K == doctest::Approx(c.gauss_K).epsilon(1e-10));
      CHECK((f.normal + c.normal).norm() < 1e-12);
    }
  }
}

TEST_CASE("umbilic points snap to k1 = k2") {
  const auto s = geodesic_sphere(1.1);
  const CurvatureData c = curvature_at(s->evaluate(0.9, 4.0));
  CHECK(c.k1 == c.k2);
  CHECK(c.traceless_norm == 0.0);
}
