#pragma once

#include "s3pinch/s3_geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace s3pinch {

/// Parameter rectangle of a chart. A periodic direction wraps at its upper
/// end; a non-periodic one is open (sphere charts never sample the poles).
struct ParameterDomain {
  double u_min = 0.0, u_max = 0.0;
  double v_min = 0.0, v_max = 0.0;
  bool periodic_u = false;
  bool periodic_v = false;
};

/// Tensor-product quadrature rule over a parameter domain.
struct QuadratureGrid {
  std::vector<double> nodes_u, nodes_v;
  std::vector<double> weights_u, weights_v;
  bool periodic_u = false;
  bool periodic_v = false;

  int nu() const { return static_cast<int>(nodes_u.size()); }
  int nv() const { return static_cast<int>(nodes_v.size()); }
  double weight(int i, int j) const { return weights_u[i] * weights_v[j]; }
};

/// A closed surface immersed in the unit 3-sphere through one chart.
/// Implementations must be reentrant: evaluate() may be called from several
/// threads at once.
class ParametricSurface {
 public:
  virtual ~ParametricSurface() = default;

  virtual SurfacePoint evaluate(double u, double v) const = 0;
  virtual ParameterDomain domain() const = 0;
  virtual std::string describe() const = 0;

  /// True when the surface is known in closed form to be minimal (H = 0).
  virtual bool is_minimal() const { return false; }

  /// Sampled surfaces can only be evaluated at their own nodes and return
  /// the matching rule here; analytic surfaces return nullopt.
  virtual std::optional<QuadratureGrid> native_grid() const {
    return std::nullopt;
  }
};

}  // namespace s3pinch
