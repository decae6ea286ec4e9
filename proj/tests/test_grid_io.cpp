#include "s3pinch/errors.hpp"
#include "s3pinch/grid_io.hpp"
#include "s3pinch/quadrature.hpp"
#include "s3pinch/surface_catalog.hpp"
#include "s3pinch/tube_volume.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

using namespace s3pinch;

namespace {

constexpr double kPi = std::numbers::pi;

std::string exported(const ParametricSurface& s, int nu, int nv) {
  std::ostringstream out;
  export_grid(s, nu, nv, out);
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

std::string join(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

}  // namespace

TEST_CASE("Fornberg weights") {
  const std::vector<double> x = {-1.0, 0.0, 1.0};
  const auto w = fornberg_weights(0.0, x, 2);
  CHECK(w[0][1] == doctest::Approx(1.0));
  CHECK(w[1][0] == doctest::Approx(-0.5));
  CHECK(w[1][2] == doctest::Approx(0.5));
  CHECK(w[2][0] == doctest::Approx(1.0));
  CHECK(w[2][1] == doctest::Approx(-2.0));
  CHECK(w[2][2] == doctest::Approx(1.0));

  // One-sided nine-point stencil differentiates degree-8 polynomials exactly.
  std::vector<double> pts;
  for (int k = 0; k < 9; ++k) pts.push_back(k);
  const auto v = fornberg_weights(0.0, pts, 2);
  double d1 = 0.0, d2 = 0.0;
  for (int k = 0; k < 9; ++k) {
    const double p = std::pow(pts[k] - 0.0, 8) + 3 * pts[k] * pts[k] + pts[k];
    d1 += v[1][k] * p;
    d2 += v[2][k] * p;
  }
  CHECK(d1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d2 == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("uniform nodes") {
  const auto p = uniform_nodes(0.0, 2 * kPi, 4, true);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(kPi / 2));
  const auto m = uniform_nodes(0.0, kPi, 4, false);
  CHECK(m[0] == doctest::Approx(kPi / 8));
  CHECK(m[3] == doctest::Approx(7 * kPi / 8));
}

TEST_CASE("export format") {
  const auto t = flat_torus(0.6);
  const auto lines = lines_of(exported(*t, 16, 16));
  REQUIRE(lines.size() == 2 + 256);
  CHECK(lines[0].rfind("# periodic_u=true periodic_v=true", 0) == 0);
  CHECK(lines[1] == "u,v,x1,x2,x3,x4");
  CHECK(lines[2].rfind("0,0,", 0) == 0);
}

TEST_CASE("round trip of the Clifford torus") {
  const auto c = flat_torus(1 / std::sqrt(2.0));
  std::istringstream in(exported(*c, 64, 64));
  const auto s = import_grid(in, "clifford-grid");
  CHECK(s->nu() == 64);
  CHECK(s->nv() == 64);
  CHECK(s->describe() == "clifford-grid");
  CHECK_FALSE(s->is_minimal());

  const GenusReport rep = genus_report(*s);
  CHECK(rep.genus == 1);
  CHECK(rep.area == doctest::Approx(2 * kPi * kPi).epsilon(1e-10));
  CHECK(std::abs(rep.slack) < 1e-4 * (1 + 4 * kPi * kPi));
  CHECK_FALSE(rep.convergence.has_value());

  const auto probe = convergence_probe(*s, 8, 8);
  REQUIRE(probe.size() == 1);
  CHECK(probe[0].nu == 64);

  const TubeResult r = verify_sum_inequality(*s, *s->native_grid(), TubeOptions{1e-4});
  CHECK_FALSE(r.chain.first_failure.has_value());

  // Nodes evaluate to the stored jets; other parameters are rejected.
  const auto g = *s->native_grid();
  const SurfacePoint p = s->evaluate(g.nodes_u[3], g.nodes_v[5]);
  const SurfacePoint q = c->evaluate(g.nodes_u[3], g.nodes_v[5]);
  CHECK((p.position - q.position).norm() < 1e-15);
  CHECK((p.du - q.du).norm() < 1e-8);
  CHECK((p.dvv - q.dvv).norm() < 1e-6);
  CHECK_THROWS_AS(s->evaluate(0.5 * (g.nodes_u[3] + g.nodes_u[4]), g.nodes_v[5]), DomainError);
}

TEST_CASE("round trip of a perturbed sphere") {
  const auto ps = perturbed_sphere(1.0, 0.1, 2, 1);
  std::istringstream in(exported(*ps, 128, 128));
  const auto s = import_grid(in);
  const GenusReport rep = genus_report(*s);
  CHECK(rep.genus == 0);
  const GenusReport exact = genus_report(*ps, 128, 128);
  CHECK(rep.integral_f == doctest::Approx(exact.integral_f).epsilon(1e-3));
  CHECK(rep.area == doctest::Approx(exact.area).epsilon(1e-4));
}

TEST_CASE("malformed grid files") {
  const auto t = flat_torus(0.6);
  auto lines = lines_of(exported(*t, 16, 16));

  SUBCASE("truncated file") {
    auto cut = lines;
    cut.resize(cut.size() - 7);
    std::istringstream in(join(cut));
    CHECK_THROWS_AS(import_grid(in), FormatError);
  }
  SUBCASE("row off the sphere") {
    auto bad = lines;
    bad[10] = "0.39269908169872414,0,0.606,0,0.808,0";  // norm 1.01
    std::istringstream in(join(bad));
    CHECK_THROWS_AS(import_grid(in), OffSphere);
  }
  SUBCASE("missing header") {
    auto bad = lines;
    bad.erase(bad.begin());
    std::istringstream in(join(bad));
    CHECK_THROWS_AS(import_grid(in), FormatError);
  }
  SUBCASE("wrong column header") {
    auto bad = lines;
    bad[1] = "u,v,x,y,z,w";
    std::istringstream in(join(bad));
    CHECK_THROWS_AS(import_grid(in), FormatError);
  }
  SUBCASE("field count") {
    auto bad = lines;
    bad[5] += ",1";
    std::istringstream in(join(bad));
    CHECK_THROWS_AS(import_grid(in), FormatError);
  }
  SUBCASE("non-numeric field") {
    auto bad = lines;
    bad[5] = "a,b,c,d,e,f";
    std::istringstream in(join(bad));
    CHECK_THROWS_AS(import_grid(in), FormatError);
  }
  SUBCASE("empty input") {
    std::istringstream in("");
    CHECK_THROWS_AS(import_grid(in), FormatError);
  }
  SUBCASE("too coarse") {
    std::istringstream in(exported(*t, 8, 8));
    CHECK_THROWS_AS(import_grid(in), ResolutionTooCoarse);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(import_grid_file("/nonexistent/grid.csv"), FormatError);
  }
}
