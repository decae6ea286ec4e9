#pragma once

#include "s3pinch/quadrature.hpp"
#include "s3pinch/surface.hpp"
#include "s3pinch/surface_catalog.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace s3pinch {

inline constexpr std::uint64_t kDefaultSeed = 20240229;
inline constexpr std::int64_t kDefaultSamples = 1'000'000;

/// cos t p + sin t nu: the great circle leaving p in direction nu.
Vec4 normal_geodesic(const Vec4& p, const Vec4& nu, double t);

/// Focal time acot(k2) in (0, pi).
double focal_time(double k2);

/// Principal curvatures seen from the given side: side 1 uses (k1, k2) of
/// the chart normal, side 2 uses (-k2, -k1).
std::pair<double, double> side_curvatures(const CurvatureData& c, int side);

/// ∫_Σ hk_time_integral over the side's curvatures: the focal-time
/// Heintze-Karcher bound on the volume of that side.
double side_upper_bound(std::span<const NodeSample> samples, int side);
double side_upper_bound(const ParametricSurface& surface, int side,
                        const QuadratureGrid& grid);

struct VolumeEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Fraction of uniform points of S³ on the given side, times 2 pi². Points
/// are normalized 4D Gaussians drawn from fixed-size blocks, each block
/// seeded from (seed, block index), so the result does not depend on how
/// blocks are scheduled across threads.
VolumeEstimate monte_carlo_volume(const CatalogSurface& surface, int side,
                                  std::int64_t n_samples,
                                  std::uint64_t seed = kDefaultSeed,
                                  unsigned threads = 0);

struct TubeReport {
  int side = 1;
  double hk_upper = 0.0;
  std::optional<double> exact_volume;      // closed form
  std::optional<VolumeEstimate> mc_volume;  // Monte-Carlo oracle
  double focal_min = 0.0, focal_max = 0.0;
  double sum_lhs = 0.0;  // 2 |M| = 4 pi²
  double sum_rhs = 0.0;  // first line of the summed chain
  double prop1_lhs = 0.0;
  double prop1_rhs = 0.0;
  bool hk_holds = true;
};

/// The summed Heintze-Karcher chain
///   2|M| <= line1 = line2 <= line3
/// and the genus inequality 4 pi² g <= ∫ prop1_integrand it implies.
struct SumChain {
  double two_M = 0.0;
  double line1 = 0.0;  // ∫ k2 - k1 + (1 + k1k2)(acot k2 + acot(-k1))
  double line2 = 0.0;  // ∫ k2 - k1 + (1 + k1k2)(pi - (atan k2 - atan k1))
  double line3 = 0.0;  // ∫ k2 - k1 + pi K - (1 + k1k2)(atan k2 - atan k1)
  double gauss_bonnet = 0.0;  // pi ∫K, compared with 2 pi² chi
  int genus = 0;
  double prop1_lhs = 0.0;  // 4 pi² g
  double prop1_rhs = 0.0;  // 2(2 pi² - |M|) + ∫ prop1_integrand
  std::vector<std::pair<std::string, bool>> links;
  std::optional<std::string> first_failure;
};

struct TubeOptions {
  double tolerance = 1e-8;  // relative, scaled by 1 + |rhs|
  std::int64_t samples = 0;  // Monte-Carlo samples for sides without closed form
  std::uint64_t seed = kDefaultSeed;
};

struct TubeResult {
  TubeReport side1, side2;
  SumChain chain;
};

/// Computes both side reports and every link of the chain without throwing
/// on a violated link.
TubeResult evaluate_sum_inequality(const ParametricSurface& surface,
                                   const QuadratureGrid& grid,
                                   const TubeOptions& options = {});

/// As evaluate_sum_inequality, but throws ChainViolation naming the first
/// failing link.
TubeResult verify_sum_inequality(const ParametricSurface& surface,
                                 const QuadratureGrid& grid,
                                 const TubeOptions& options = {});

}  // namespace s3pinch
