#include "s3pinch/quadrature.hpp"

#include "s3pinch/errors.hpp"
#include "s3pinch/pinch_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace s3pinch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelPoints = 16;

void append_axis(double lo, double hi, int n, bool periodic,
                 std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("quadrature: resolution must be positive");
  nodes.clear();
  weights.clear();
  if (periodic) {
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
      nodes.push_back(lo + i * h);
      weights.push_back(h);
    }
    return;
  }
  const int panels = (n % kPanelPoints == 0) ? n / kPanelPoints : 1;
  const int per_panel = n / panels;
  const GaussLegendreRule rule = gauss_legendre(per_panel);
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    for (int k = 0; k < per_panel; ++k) {
      nodes.push_back(a + 0.5 * width * (rule.nodes[k] + 1.0));
      weights.push_back(0.5 * width * rule.weights[k]);
    }
  }
}

double field_f(const CurvatureData& c, const SurfacePoint&) {
  return f_pinch(c.traceless_norm);
}

struct RawIntegrals {
  double area = 0.0;
  double total_K = 0.0;
  double integral_f = 0.0;
  double integral_A3 = 0.0;
  double integral_absA3 = 0.0;
  double max_abs_H = 0.0;
  double max_traceless = 0.0;
};

RawIntegrals raw_integrals(std::span<const NodeSample> samples) {
  RawIntegrals r;
  r.area = integrate(samples, [](const CurvatureData&, const SurfacePoint&) {
    return 1.0;
  });
  r.total_K = integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
    return c.gauss_K;
  });
  r.integral_f = integrate(samples, field_f);
  r.integral_A3 = integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
    return c.traceless_norm * c.traceless_norm * c.traceless_norm;
  });
  r.integral_absA3 = integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
    return std::pow(c.norm_A_squared(), 1.5);
  });
  for (const auto& s : samples) {
    r.max_abs_H = std::max(r.max_abs_H, std::abs(s.curvature.H));
    r.max_traceless = std::max(r.max_traceless, s.curvature.traceless_norm);
  }
  return r;
}

}  // namespace

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const unsigned un = static_cast<unsigned>(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = std::legendre(un, x);
      const double pm1 = n > 1 ? std::legendre(un - 1, x) : 1.0;
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      const double p = std::legendre(un, x);
      const double pm1 = n > 1 ? std::legendre(un - 1, x) : 1.0;
      dp = n * (x * p - pm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureGrid make_grid(const ParameterDomain& domain, int nu, int nv) {
  QuadratureGrid grid;
  grid.periodic_u = domain.periodic_u;
  grid.periodic_v = domain.periodic_v;
  append_axis(domain.u_min, domain.u_max, nu, domain.periodic_u, grid.nodes_u,
              grid.weights_u);
  append_axis(domain.v_min, domain.v_max, nv, domain.periodic_v, grid.nodes_v,
              grid.weights_v);
  return grid;
}

QuadratureGrid grid_for(const ParametricSurface& surface, int nu, int nv) {
  if (auto native = surface.native_grid()) return *native;
  return make_grid(surface.domain(), nu, nv);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double x : values) s += x;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<NodeSample> sample_surface(const ParametricSurface& surface,
                                       const QuadratureGrid& grid) {
  std::vector<NodeSample> out;
  out.reserve(static_cast<std::size_t>(grid.nu()) * grid.nv());
  for (int i = 0; i < grid.nu(); ++i) {
    for (int j = 0; j < grid.nv(); ++j) {
      NodeSample s;
      s.u = grid.nodes_u[i];
      s.v = grid.nodes_v[j];
      s.point = surface.evaluate(s.u, s.v);
      try {
        s.curvature = curvature_at(s.point);
      } catch (const DegenerateMetric& e) {
        std::ostringstream msg;
        msg << e.what() << " at node (u, v) = (" << s.u << ", " << s.v << ")";
        throw DegenerateMetric(msg.str());
      }
      const Frame fr = tangent_normal_frame(s.point);
      s.weight = grid.weight(i, j) * std::sqrt(fr.metric_det());
      out.push_back(std::move(s));
    }
  }
  return out;
}

double integrate(std::span<const NodeSample> samples, const ScalarField& phi) {
  std::vector<double> terms;
  terms.reserve(samples.size());
  for (const auto& s : samples) {
    terms.push_back(s.weight * phi(s.curvature, s.point));
  }
  return pairwise_sum(terms);
}

double integrate(const ParametricSurface& surface, const ScalarField& phi,
                 const QuadratureGrid& grid) {
  const auto samples = sample_surface(surface, grid);
  return integrate(samples, phi);
}

double relative_change(double previous, double current) {
  const double scale = std::max(std::abs(previous), std::abs(current));
  if (scale == 0.0) return 0.0;
  return std::abs(current - previous) / scale;
}

GenusReport genus_report(const ParametricSurface& surface,
                         const QuadratureGrid& grid,
                         const GenusOptions& options) {
  const auto samples = sample_surface(surface, grid);
  const RawIntegrals raw = raw_integrals(samples);

  GenusReport rep;
  rep.nu = grid.nu();
  rep.nv = grid.nv();
  rep.area = raw.area;
  rep.total_K = raw.total_K;
  rep.euler_raw = raw.total_K / (2.0 * kPi);
  rep.euler_char = static_cast<int>(std::lround(rep.euler_raw));
  if (!(std::abs(rep.euler_raw - rep.euler_char) < options.euler_tolerance) ||
      rep.euler_char > 2 || rep.euler_char % 2 != 0) {
    std::ostringstream msg;
    msg << "Euler characteristic not resolved: total_K / 2pi = "
        << rep.euler_raw << " at " << rep.nu << "x" << rep.nv;
    throw GenusDetectionFailure(msg.str());
  }
  rep.genus = (2 - rep.euler_char) / 2;
  rep.integral_f = raw.integral_f;
  rep.integral_A3 = raw.integral_A3;
  rep.max_abs_H = raw.max_abs_H;
  rep.max_traceless = raw.max_traceless;

  rep.bound_lhs = 4.0 * kPi * kPi * rep.genus;
  rep.bound_rhs = rep.integral_f;
  rep.slack = rep.bound_rhs - rep.bound_lhs;

  rep.cubic_lhs = 2.0 * kPi * kPi * rep.genus;
  rep.cubic_rhs = std::numbers::sqrt2 / 3.0 * rep.integral_A3;
  rep.cubic_slack = rep.cubic_rhs - rep.cubic_lhs;

  if (surface.is_minimal()) {
    GapCertificate gap;
    gap.integral_A3 = raw.integral_absA3;
    gap.threshold = 3.0 * std::numbers::sqrt2 * kPi * kPi;
    gap.below_threshold = gap.integral_A3 < gap.threshold;
    rep.gap = gap;
  }

  if (options.with_convergence && !surface.native_grid()) {
    const QuadratureGrid fine =
        make_grid(surface.domain(), 2 * grid.nu(), 2 * grid.nv());
    const auto fine_samples = sample_surface(surface, fine);
    rep.convergence =
        relative_change(rep.integral_f, integrate(fine_samples, field_f));
  }
  return rep;
}

GenusReport genus_report(const ParametricSurface& surface, int nu, int nv,
                         const GenusOptions& options) {
  return genus_report(surface, grid_for(surface, nu, nv), options);
}

std::vector<ProbeStep> convergence_probe(const ParametricSurface& surface,
                                         int base_nu, int base_nv) {
  std::vector<ProbeStep> steps;
  GenusOptions opts;
  opts.with_convergence = false;
  if (auto native = surface.native_grid()) {
    const GenusReport rep = genus_report(surface, *native, opts);
    steps.push_back({native->nu(), native->nv(), rep.integral_f, std::nullopt});
    return steps;
  }
  int nu = base_nu;
  int nv = base_nv;
  for (int doubling = 0; doubling <= 4; ++doubling) {
    const GenusReport rep = genus_report(surface, make_grid(surface.domain(), nu, nv), opts);
    ProbeStep step{nu, nv, rep.integral_f, std::nullopt};
    if (!steps.empty()) {
      step.rel_change = relative_change(steps.back().value, step.value);
    }
    steps.push_back(step);
    if (step.rel_change && *step.rel_change < 1e-9) break;
    nu *= 2;
    nv *= 2;
  }
  return steps;
}

}  // namespace s3pinch
