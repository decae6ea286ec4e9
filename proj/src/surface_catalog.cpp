#include "s3pinch/surface_catalog.hpp"

#include "s3pinch/errors.hpp"
#include "s3pinch/quadrature.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace s3pinch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadiusMargin = 1e-3;
constexpr double kMaxEps = 0.3;
constexpr double kMinimalTol = 1e-9;

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_radius(double r, const char* what) {
  if (!std::isfinite(r) || r < kRadiusMargin || r > kPi - kRadiusMargin) {
    std::ostringstream msg;
    msg << what << ": radius " << r << " outside [1e-3, pi - 1e-3]";
    throw DomainError(msg.str());
  }
}

// Radial function rho(theta, phi) and its partials.
struct RadialJet {
  double rho = 0.0;
  double r_t = 0.0, r_p = 0.0;
  double r_tt = 0.0, r_tp = 0.0, r_pp = 0.0;
};

// x = cos(rho) e4 + sin(rho) W(theta, phi), W the unit vector of R^3 x {0}.
SurfacePoint radial_graph_point(double theta, double phi, const RadialJet& j) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const Vec4 W(st * cp, st * sp, ct, 0.0);
  const Vec4 W_t(ct * cp, ct * sp, -st, 0.0);
  const Vec4 W_p(-st * sp, st * cp, 0.0, 0.0);
  const Vec4 W_tt(-st * cp, -st * sp, -ct, 0.0);
  const Vec4 W_tp(-ct * sp, ct * cp, 0.0, 0.0);
  const Vec4 W_pp(-st * cp, -st * sp, 0.0, 0.0);
  const Vec4 e4(0.0, 0.0, 0.0, 1.0);

  const double sr = std::sin(j.rho), cr = std::cos(j.rho);
  const Vec4 X = cr * e4 + sr * W;
  const Vec4 T = -sr * e4 + cr * W;  // d/d rho at fixed angles

  SurfacePoint p;
  p.position = X;
  p.du = j.r_t * T + sr * W_t;
  p.dv = j.r_p * T + sr * W_p;
  p.duu = j.r_tt * T - j.r_t * j.r_t * X + 2.0 * j.r_t * cr * W_t + sr * W_tt;
  p.dvv = j.r_pp * T - j.r_p * j.r_p * X + 2.0 * j.r_p * cr * W_p + sr * W_pp;
  p.duv = j.r_tp * T - j.r_t * j.r_p * X + j.r_t * cr * W_p + j.r_p * cr * W_t +
          sr * W_tp;
  return p;
}

ParameterDomain sphere_chart() {
  ParameterDomain d;
  d.u_min = 0.0;
  d.u_max = kPi;
  d.v_min = 0.0;
  d.v_max = 2.0 * kPi;
  d.periodic_u = false;
  d.periodic_v = true;
  return d;
}

// Angular coordinates of the direction of (x1, x2, x3) and the distance
// from e4 of a (not necessarily unit) point.
struct PolarCoords {
  double distance, theta, phi;
};

PolarCoords polar_coords(const Vec4& x) {
  const double rho_xy = std::hypot(x[0], x[1]);
  const double w = std::hypot(rho_xy, x[2]);
  return {std::atan2(w, x[3]), std::atan2(rho_xy, x[2]),
          std::atan2(x[1], x[0])};
}

class GeodesicSphere final : public CatalogSurface {
 public:
  explicit GeodesicSphere(double r) : r_(r) {
    check_radius(r, "geodesic_sphere");
    const double s = std::sin(r);
    const double k = std::cos(r) / s;
    const double ball = kPi * (2.0 * r - std::sin(2.0 * r));
    exact_.area = 4.0 * kPi * s * s;
    exact_.side_volumes = std::array<double, 2>{ball, 2.0 * kPi * kPi - ball};
    exact_.lambda1 = 2.0 / (s * s);
    exact_.principal_curvatures = std::make_pair(k, k);
    exact_.traceless_norm = 0.0;
    exact_.gauss_K = 1.0 / (s * s);
  }

  SurfacePoint evaluate(double u, double v) const override {
    return radial_graph_point(u, v, RadialJet{r_});
  }
  ParameterDomain domain() const override { return sphere_chart(); }
  std::string describe() const override { return "sphere:r=" + format_double(r_); }
  bool is_minimal() const override {
    return std::abs(std::cos(r_) / std::sin(r_)) < kMinimalTol;
  }
  SurfaceKind kind() const override { return SurfaceKind::GeodesicSphere; }
  const ExactData& exact() const override { return exact_; }
  int side_of(const Vec4& x) const override {
    return x[3] > std::cos(r_) * x.norm() ? 1 : 2;
  }

 private:
  double r_;
  ExactData exact_;
};

class FlatTorus final : public CatalogSurface {
 public:
  explicit FlatTorus(double a) : a_(a), b_(std::sqrt(1.0 - a * a)) {
    if (!std::isfinite(a) || !(a > 0.0) || !(a < 1.0)) {
      std::ostringstream msg;
      msg << "flat_torus: a = " << a << " outside (0, 1)";
      throw DomainError(msg.str());
    }
    exact_.area = 4.0 * kPi * kPi * a_ * b_;
    exact_.side_volumes =
        std::array<double, 2>{2.0 * kPi * kPi * b_ * b_, 2.0 * kPi * kPi * a_ * a_};
    exact_.lambda1 = std::min(1.0 / (a_ * a_), 1.0 / (b_ * b_));
    exact_.principal_curvatures = std::make_pair(-b_ / a_, a_ / b_);
    exact_.traceless_norm = 1.0 / (std::numbers::sqrt2 * a_ * b_);
    exact_.gauss_K = 0.0;
  }

  SurfacePoint evaluate(double u, double v) const override {
    const double cu = std::cos(u), su = std::sin(u);
    const double cv = std::cos(v), sv = std::sin(v);
    SurfacePoint p;
    p.position = Vec4(a_ * cu, a_ * su, b_ * cv, b_ * sv);
    p.du = Vec4(-a_ * su, a_ * cu, 0.0, 0.0);
    p.dv = Vec4(0.0, 0.0, -b_ * sv, b_ * cv);
    p.duu = Vec4(-a_ * cu, -a_ * su, 0.0, 0.0);
    p.duv = Vec4::Zero();
    p.dvv = Vec4(0.0, 0.0, -b_ * cv, -b_ * sv);
    return p;
  }
  ParameterDomain domain() const override {
    return ParameterDomain{0.0, 2.0 * kPi, 0.0, 2.0 * kPi, true, true};
  }
  std::string describe() const override { return "torus:a=" + format_double(a_); }
  bool is_minimal() const override {
    return 0.5 * std::abs(a_ / b_ - b_ / a_) < kMinimalTol;
  }
  SurfaceKind kind() const override { return SurfaceKind::FlatTorus; }
  const ExactData& exact() const override { return exact_; }
  int side_of(const Vec4& x) const override {
    return x[0] * x[0] + x[1] * x[1] > a_ * a_ * x.squaredNorm() ? 1 : 2;
  }

 private:
  double a_, b_;
  ExactData exact_;
};

class PerturbedSphere final : public CatalogSurface {
 public:
  PerturbedSphere(double r, double eps, int l, int m)
      : r_(r), eps_(eps), l_(l), m_(m) {
    check_radius(r, "perturbed_sphere");
    if (!std::isfinite(eps) || std::abs(eps) > kMaxEps) {
      throw DomainError("perturbed_sphere: |eps| must not exceed 0.3");
    }
    if (l < 0 || std::abs(m) > l) {
      throw DomainError("perturbed_sphere: need l >= 0 and |m| <= l");
    }
    // Probe the chart: the radial function must stay inside (0, pi) and the
    // metric must not degenerate.
    const QuadratureGrid probe = make_grid(sphere_chart(), 32, 32);
    for (double u : probe.nodes_u) {
      for (double v : probe.nodes_v) {
        const RadialJet j = jet(u, v);
        if (!(j.rho > 0.0 && j.rho < kPi)) {
          throw ImmersionFailure("perturbed_sphere: radial function leaves (0, pi)");
        }
        const SurfacePoint p = radial_graph_point(u, v, j);
        const double E = p.du.squaredNorm(), F = p.du.dot(p.dv),
                     G = p.dv.squaredNorm();
        if (!(E * G - F * F > 1e-12 * E * G)) {
          std::ostringstream msg;
          msg << "perturbed_sphere: degenerate metric at (" << u << ", " << v << ")";
          throw ImmersionFailure(msg.str());
        }
      }
    }
  }

  SurfacePoint evaluate(double u, double v) const override {
    return radial_graph_point(u, v, jet(u, v));
  }
  ParameterDomain domain() const override { return sphere_chart(); }
  std::string describe() const override {
    return "psphere:r=" + format_double(r_) + ",eps=" + format_double(eps_) +
           ",l=" + std::to_string(l_) + ",m=" + std::to_string(m_);
  }
  SurfaceKind kind() const override { return SurfaceKind::PerturbedSphere; }
  const ExactData& exact() const override { return exact_; }
  int side_of(const Vec4& x) const override {
    const PolarCoords pc = polar_coords(x);
    return pc.distance < jet(pc.theta, pc.phi).rho ? 1 : 2;
  }

 private:
  RadialJet jet(double theta, double phi) const {
    const HarmonicJet y = real_spherical_harmonic(l_, m_, theta, phi);
    return RadialJet{r_ + eps_ * y.value,         eps_ * y.d_theta,
                     eps_ * y.d_phi,              eps_ * y.d_theta_theta,
                     eps_ * y.d_theta_phi,        eps_ * y.d_phi_phi};
  }

  double r_, eps_;
  int l_, m_;
  ExactData exact_;
};

double parse_number(std::string_view text, std::string_view key) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("surface spec: cannot parse value of '" + std::string(key) +
                     "': '" + std::string(text) + "'");
  }
  return x;
}

int parse_integer(std::string_view text, std::string_view key) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("surface spec: '" + std::string(key) +
                     "' must be an integer, got '" + std::string(text) + "'");
  }
  return x;
}

}  // namespace

HarmonicJet real_spherical_harmonic(int l, int m, double theta, double phi) {
  const unsigned ul = static_cast<unsigned>(l);
  const unsigned am = static_cast<unsigned>(std::abs(m));
  const double st = std::sin(theta);
  const double cot = std::cos(theta) / st;

  // Theta part, unit-normalized with the Condon-Shortley phase. The first
  // derivative uses the raising ladder; the second follows from the
  // associated Legendre equation.
  const double S = std::sph_legendre(ul, am, theta);
  const double S_next = am + 1 <= ul ? std::sph_legendre(ul, am + 1, theta) : 0.0;
  const double ladder = std::sqrt(static_cast<double>((l - static_cast<int>(am)) *
                                                      (l + static_cast<int>(am) + 1)));
  const double S_t = am * cot * S + ladder * S_next;
  const double S_tt =
      -cot * S_t - (l * (l + 1.0) - static_cast<double>(am * am) / (st * st)) * S;

  double A = 1.0, A_p = 0.0, A_pp = 0.0;
  if (m > 0) {
    A = std::numbers::sqrt2 * std::cos(m * phi);
    A_p = -std::numbers::sqrt2 * m * std::sin(m * phi);
    A_pp = -static_cast<double>(m * m) * A;
  } else if (m < 0) {
    A = std::numbers::sqrt2 * std::sin(am * phi);
    A_p = std::numbers::sqrt2 * am * std::cos(am * phi);
    A_pp = -static_cast<double>(am * am) * A;
  }

  HarmonicJet y;
  y.value = S * A;
  y.d_theta = S_t * A;
  y.d_phi = S * A_p;
  y.d_theta_theta = S_tt * A;
  y.d_theta_phi = S_t * A_p;
  y.d_phi_phi = S * A_pp;
  return y;
}

CatalogPtr geodesic_sphere(double r) { return std::make_shared<GeodesicSphere>(r); }

CatalogPtr flat_torus(double a) { return std::make_shared<FlatTorus>(a); }

CatalogPtr perturbed_sphere(double r, double eps, int l, int m) {
  return std::make_shared<PerturbedSphere>(r, eps, l, m);
}

CatalogPtr parse_surface_spec(std::string_view spec) {
  if (spec == "equator") return geodesic_sphere(0.5 * kPi);
  if (spec == "clifford") return flat_torus(1.0 / std::numbers::sqrt2);

  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("surface spec '" + std::string(spec) +
                     "': expected <kind>:<key>=<value>,...");
  }
  const std::string_view kind = spec.substr(0, colon);
  std::map<std::string, std::string_view, std::less<>> params;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("surface spec: malformed parameter '" + std::string(item) + "'");
    }
    params[std::string(item.substr(0, eq))] = item.substr(eq + 1);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }

  auto take = [&](const char* key) -> std::string_view {
    const auto it = params.find(key);
    if (it == params.end()) {
      throw ParseError("surface spec '" + std::string(spec) + "': missing '" + key + "'");
    }
    const std::string_view value = it->second;
    params.erase(it);
    return value;
  };
  auto finish = [&]() {
    if (!params.empty()) {
      throw ParseError("surface spec: unknown parameter '" + params.begin()->first + "'");
    }
  };

  if (kind == "sphere") {
    const double r = parse_number(take("r"), "r");
    finish();
    return geodesic_sphere(r);
  }
  if (kind == "torus") {
    const double a = parse_number(take("a"), "a");
    finish();
    return flat_torus(a);
  }
  if (kind == "psphere") {
    const double r = parse_number(take("r"), "r");
    const double eps = parse_number(take("eps"), "eps");
    const int l = parse_integer(take("l"), "l");
    const int m = parse_integer(take("m"), "m");
    finish();
    return perturbed_sphere(r, eps, l, m);
  }
  throw ParseError("surface spec: unknown surface kind '" + std::string(kind) + "'");
}

}  // namespace s3pinch
