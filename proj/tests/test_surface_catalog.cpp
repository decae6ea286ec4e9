#include "s3pinch/errors.hpp"
#include "s3pinch/quadrature.hpp"
#include "s3pinch/s3_geometry.hpp"
#include "s3pinch/surface_catalog.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace s3pinch;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("real spherical harmonics: known values") {
  const double t = 0.7, p = 1.3;
  CHECK(real_spherical_harmonic(0, 0, t, p).value ==
        doctest::Approx(0.5 / std::sqrt(kPi)).epsilon(1e-15));
  CHECK(real_spherical_harmonic(1, 0, t, p).value ==
        doctest::Approx(std::sqrt(3 / (4 * kPi)) * std::cos(t)).epsilon(1e-14));
  CHECK(real_spherical_harmonic(2, 0, t, p).value ==
        doctest::Approx(std::sqrt(5 / (16 * kPi)) * (3 * std::cos(t) * std::cos(t) - 1))
            .epsilon(1e-14));
  // Condon-Shortley phase carried into the real cosine harmonic.
  CHECK(real_spherical_harmonic(1, 1, t, p).value ==
        doctest::Approx(-std::sqrt(3 / (4 * kPi)) * std::sin(t) * std::cos(p)).epsilon(1e-14));
  CHECK(real_spherical_harmonic(1, -1, t, p).value ==
        doctest::Approx(-std::sqrt(3 / (4 * kPi)) * std::sin(t) * std::sin(p)).epsilon(1e-14));
}

TEST_CASE("real spherical harmonics are orthonormal") {
  const auto sphere = geodesic_sphere(kPi / 2);
  const QuadratureGrid g = make_grid(sphere->domain(), 48, 48);
  const int modes[][2] = {{0, 0}, {1, -1}, {2, 1}, {3, -2}, {3, 3}, {4, 0}};
  for (const auto& a : modes) {
    for (const auto& b : modes) {
      double s = 0.0;
      for (int i = 0; i < g.nu(); ++i) {
        for (int j = 0; j < g.nv(); ++j) {
          const double th = g.nodes_u[i], ph = g.nodes_v[j];
          s += g.weight(i, j) * std::sin(th) *
               real_spherical_harmonic(a[0], a[1], th, ph).value *
               real_spherical_harmonic(b[0], b[1], th, ph).value;
        }
      }
      const bool same = a[0] == b[0] && a[1] == b[1];
      CHECK(std::abs(s - (same ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("real spherical harmonic derivatives against finite differences") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> th(0.2, kPi - 0.2), ph(0.0, 2 * kPi);
  const double h = 1e-5;
  for (int l = 0; l <= 6; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int k = 0; k < 10; ++k) {
        const double t = th(rng), p = ph(rng);
        const HarmonicJet y = real_spherical_harmonic(l, m, t, p);
        auto Y = [&](double a, double b) { return real_spherical_harmonic(l, m, a, b); };
        const double tol = 1e-6 * (1 + l * l);
        CHECK(std::abs((Y(t + h, p).value - Y(t - h, p).value) / (2 * h) - y.d_theta) < tol);
        CHECK(std::abs((Y(t, p + h).value - Y(t, p - h).value) / (2 * h) - y.d_phi) < tol);
        CHECK(std::abs((Y(t + h, p).d_theta - Y(t - h, p).d_theta) / (2 * h) -
                       y.d_theta_theta) < tol);
        CHECK(std::abs((Y(t, p + h).d_theta - Y(t, p - h).d_theta) / (2 * h) -
                       y.d_theta_phi) < tol);
        CHECK(std::abs((Y(t, p + h).d_phi - Y(t, p - h).d_phi) / (2 * h) - y.d_phi_phi) <
              tol);
      }
    }
  }
}

TEST_CASE("catalog points lie on the unit sphere with consistent jets") {
  std::mt19937_64 rng(13);
  const std::vector<CatalogPtr> surfaces = {geodesic_sphere(2.2), flat_torus(0.8),
                                            perturbed_sphere(1.0, 0.3, 4, 2),
                                            perturbed_sphere(kPi / 2, -0.2, 1, 0)};
  for (const auto& s : surfaces) {
    const ParameterDomain d = s->domain();
    std::uniform_real_distribution<double> uu(d.u_min + 0.1, d.u_max - 0.1),
        vv(d.v_min, d.v_max);
    const PositionMap map = [&](double u, double v) { return s->evaluate(u, v).position; };
    for (int i = 0; i < 40; ++i) {
      const double u = uu(rng), v = vv(rng);
      const SurfacePoint p = s->evaluate(u, v);
      CHECK(std::abs(p.position.norm() - 1.0) < 1e-14);
      const SurfacePoint q = finite_difference_point(map, u, v);
      CHECK((q.du - p.du).norm() < 1e-8);
      CHECK((q.dv - p.dv).norm() < 1e-8);
      CHECK((q.duu - p.duu).norm() < 1e-4);
      CHECK((q.duv - p.duv).norm() < 1e-4);
      CHECK((q.dvv - p.dvv).norm() < 1e-4);
    }
  }
}

TEST_CASE("curvature matches closed forms at random points") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> r(0.05, kPi - 0.05), a(0.05, 0.95),
      th(0.01, kPi - 0.01), ang(0.0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const auto s = geodesic_sphere(r(rng));
    const auto& ex = s->exact();
    const CurvatureData c = curvature_at(s->evaluate(th(rng), ang(rng)));
    CHECK(c.k1 == doctest::Approx(ex.principal_curvatures->first).epsilon(1e-10));
    CHECK(c.k2 == doctest::Approx(ex.principal_curvatures->second).epsilon(1e-10));
    CHECK(c.gauss_K == doctest::Approx(*ex.gauss_K).epsilon(1e-10));
    CHECK(c.traceless_norm == 0.0);

    const auto t = flat_torus(a(rng));
    const auto& et = t->exact();
    const CurvatureData d = curvature_at(t->evaluate(ang(rng), ang(rng)));
    CHECK(d.k1 == doctest::Approx(et.principal_curvatures->first).epsilon(1e-12));
    CHECK(d.k2 == doctest::Approx(et.principal_curvatures->second).epsilon(1e-12));
    CHECK(d.traceless_norm == doctest::Approx(*et.traceless_norm).epsilon(1e-12));
    CHECK(std::abs(d.gauss_K) < 1e-10 * (1 + d.k2 * d.k2));
  }
}

TEST_CASE("normal points into side 1") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> th(0.1, kPi - 0.1), ang(0.0, 2 * kPi);
  const std::vector<CatalogPtr> surfaces = {geodesic_sphere(0.6), flat_torus(0.3),
                                            flat_torus(0.85), perturbed_sphere(1.4, 0.2, 3, 1)};
  for (const auto& s : surfaces) {
    for (int i = 0; i < 100; ++i) {
      const double u = s->domain().periodic_u ? ang(rng) : th(rng);
      const SurfacePoint p = s->evaluate(u, ang(rng));
      const Vec4 n = tangent_normal_frame(p).normal;
      const double t = 1e-4;
      const Vec4 in = std::cos(t) * p.position + std::sin(t) * n;
      const Vec4 out = std::cos(t) * p.position - std::sin(t) * n;
      CHECK(s->side_of(in) == 1);
      CHECK(s->side_of(out) == 2);
    }
  }
}

TEST_CASE("exact data") {
  const auto eq = geodesic_sphere(kPi / 2);
  CHECK(eq->is_minimal());
  CHECK((*eq->exact().side_volumes)[0] == doctest::Approx(kPi * kPi));
  CHECK((*eq->exact().side_volumes)[1] == doctest::Approx(kPi * kPi));
  CHECK(*eq->exact().lambda1 == doctest::Approx(2.0));
  CHECK_FALSE(geodesic_sphere(1.0)->is_minimal());

  const auto cl = flat_torus(1 / std::sqrt(2.0));
  CHECK(cl->is_minimal());
  CHECK(*cl->exact().area == doctest::Approx(2 * kPi * kPi));
  CHECK(*cl->exact().lambda1 == doctest::Approx(2.0));
  CHECK(*cl->exact().traceless_norm == doctest::Approx(std::sqrt(2.0)));
  CHECK_FALSE(flat_torus(0.6)->is_minimal());

  const auto t = flat_torus(0.6);
  CHECK((*t->exact().side_volumes)[0] == doctest::Approx(2 * kPi * kPi * 0.64));
  CHECK((*t->exact().side_volumes)[1] == doctest::Approx(2 * kPi * kPi * 0.36));

  const auto ps = perturbed_sphere(1.0, 0.1, 2, 0);
  CHECK_FALSE(ps->exact().lambda1.has_value());
  CHECK_FALSE(ps->exact().side_volumes.has_value());
  CHECK_FALSE(ps->is_minimal());
}

TEST_CASE("constructor domain errors") {
  CHECK_THROWS_AS(geodesic_sphere(0.0), DomainError);
  CHECK_THROWS_AS(geodesic_sphere(kPi), DomainError);
  CHECK_THROWS_AS(geodesic_sphere(-1.0), DomainError);
  CHECK_THROWS_AS(geodesic_sphere(NAN), DomainError);
  CHECK_NOTHROW(geodesic_sphere(1e-3));
  CHECK_THROWS_AS(flat_torus(0.0), DomainError);
  CHECK_THROWS_AS(flat_torus(1.0), DomainError);
  CHECK_THROWS_AS(flat_torus(1.5), DomainError);
  CHECK_THROWS_AS(perturbed_sphere(1.0, 0.31, 2, 0), DomainError);
  CHECK_THROWS_AS(perturbed_sphere(1.0, 0.1, 2, 3), DomainError);
  CHECK_THROWS_AS(perturbed_sphere(1.0, 0.1, -1, 0), DomainError);
  CHECK_THROWS_AS(perturbed_sphere(0.05, 0.3, 2, 0), ImmersionFailure);
}

TEST_CASE("surface spec parsing") {
  CHECK(parse_surface_spec("sphere:r=0.5")->kind() == SurfaceKind::GeodesicSphere);
  CHECK(parse_surface_spec("torus:a=0.6")->kind() == SurfaceKind::FlatTorus);
  CHECK(parse_surface_spec("psphere:r=1,eps=0.1,l=2,m=-1")->kind() ==
        SurfaceKind::PerturbedSphere);
  CHECK(parse_surface_spec("psphere:m=1,l=2,eps=0.1,r=1")->describe() ==
        "psphere:r=1,eps=0.10000000000000001,l=2,m=1");
  CHECK(parse_surface_spec("equator")->is_minimal());
  CHECK(parse_surface_spec("clifford")->is_minimal());
  CHECK(parse_surface_spec("torus:a=0.6")->describe() == "torus:a=0.59999999999999998");

  CHECK_THROWS_AS(parse_surface_spec("torus:a=1.5"), DomainError);
  CHECK_THROWS_AS(parse_surface_spec("torus"), ParseError);
  CHECK_THROWS_AS(parse_surface_spec("torus:a="), ParseError);
  CHECK_THROWS_AS(parse_surface_spec("torus:a=abc"), ParseError);
  CHECK_THROWS_AS(parse_surface_spec("torus:b=0.5"), ParseError);
  CHECK_THROWS_AS(parse_surface_spec("torus:a=0.5,x=1"), ParseError);
  CHECK_THROWS_AS(parse_surface_spec("cube:s=1"), ParseError);
  CHECK_THROWS_AS(parse_surface_spec("psphere:r=1,eps=0.1,l=2.5,m=0"), ParseError);
  CHECK_THROWS_AS(parse_surface_spec(""), ParseError);
}
