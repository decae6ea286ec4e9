#pragma once

#include "s3pinch/surface.hpp"

#include <array>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace s3pinch {

/// Finite-difference weights (Fornberg) for derivatives 0..max_order at x0
/// from samples at `points`. Row k holds the weights of the k-th derivative.
std::vector<std::vector<double>> fornberg_weights(double x0,
                                                  std::span<const double> points,
                                                  int max_order);

/// A surface known only at the nodes of a uniform parameter grid. Partials
/// come from 9-point (eighth-order) finite-difference stencils: centred and
/// wrapped in periodic directions, shifted inward near the ends otherwise.
/// Periodic nodes are lo + i h; non-periodic nodes are cell midpoints
/// lo + (i + 1/2) h. Quadrature uses the trapezoidal / midpoint rule on the
/// same nodes.
class SampledSurface final : public ParametricSurface {
 public:
  SampledSurface(ParameterDomain domain, int nu, int nv,
                 std::vector<Vec4> positions, std::string label);

  SurfacePoint evaluate(double u, double v) const override;
  ParameterDomain domain() const override { return domain_; }
  std::string describe() const override { return label_; }
  std::optional<QuadratureGrid> native_grid() const override { return grid_; }

  int nu() const { return nu_; }
  int nv() const { return nv_; }

 private:
  int index_of(double x, bool along_u) const;

  ParameterDomain domain_;
  int nu_, nv_;
  std::string label_;
  QuadratureGrid grid_;
  std::vector<SurfacePoint> points_;  // row-major, u outer
};

/// Node coordinates used by the grid file format for one direction.
std::vector<double> uniform_nodes(double lo, double hi, int n, bool periodic);

/// Writes the surface sampled on an nu x nv uniform grid:
///   # periodic_u=<bool> periodic_v=<bool> domain_u=[lo,hi] domain_v=[lo,hi]
///   u,v,x1,x2,x3,x4
///   <row-major rows, u outer>
void export_grid(const ParametricSurface& surface, int nu, int nv,
                 std::ostream& out);
void export_grid_file(const ParametricSurface& surface, int nu, int nv,
                      const std::string& path);

/// Reads a grid file. Throws FormatError on malformed or truncated input,
/// OffSphere when a row has | |x| - 1 | > 1e-6, ResolutionTooCoarse with
/// fewer than 16 nodes along a periodic direction (9 otherwise).
std::shared_ptr<const SampledSurface> import_grid(std::istream& in,
                                                  const std::string& label = "import");
std::shared_ptr<const SampledSurface> import_grid_file(const std::string& path);

}  // namespace s3pinch
