#include "s3pinch/tube_volume.hpp"

#include "s3pinch/errors.hpp"
#include "s3pinch/pinch_functions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace s3pinch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kBlockSize = 1 << 16;

void check_side(int side) {
  if (side != 1 && side != 2) throw DomainError("side must be 1 or 2");
}

std::int64_t count_block(const CatalogSurface& surface, int side,
                         std::uint64_t seed, std::int64_t block,
                         std::int64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(block) >> 32)};
  std::mt19937_64 engine(seq);
  std::normal_distribution<double> gauss;
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    Vec4 x(gauss(engine), gauss(engine), gauss(engine), gauss(engine));
    const double n = x.norm();
    if (n == 0.0) continue;  // probability zero; counted as a miss
    x /= n;
    if (surface.side_of(x) == side) ++hits;
  }
  return hits;
}

bool within(double lhs, double rhs, double tol) {
  return lhs <= rhs + tol * (1.0 + std::abs(rhs));
}

}  // namespace

Vec4 normal_geodesic(const Vec4& p, const Vec4& nu, double t) {
  if (std::abs(p.norm() - 1.0) > 1e-10 || std::abs(nu.norm() - 1.0) > 1e-10 ||
      std::abs(p.dot(nu)) > 1e-10) {
    throw DomainError("normal_geodesic: p and nu must be orthonormal");
  }
  return std::cos(t) * p + std::sin(t) * nu;
}

double focal_time(double k2) {
  if (!std::isfinite(k2)) throw DomainError("focal_time: non-finite curvature");
  return acot(k2);
}

std::pair<double, double> side_curvatures(const CurvatureData& c, int side) {
  check_side(side);
  return side == 1 ? std::make_pair(c.k1, c.k2) : std::make_pair(-c.k2, -c.k1);
}

double side_upper_bound(std::span<const NodeSample> samples, int side) {
  check_side(side);
  return integrate(samples, [side](const CurvatureData& c, const SurfacePoint&) {
    const auto [k1, k2] = side_curvatures(c, side);
    return hk_time_integral(k1, k2);
  });
}

double side_upper_bound(const ParametricSurface& surface, int side,
                        const QuadratureGrid& grid) {
  const auto samples = sample_surface(surface, grid);
  return side_upper_bound(samples, side);
}

VolumeEstimate monte_carlo_volume(const CatalogSurface& surface, int side,
                                  std::int64_t n_samples, std::uint64_t seed,
                                  unsigned threads) {
  check_side(side);
  if (n_samples <= 0) throw DomainError("monte_carlo_volume: need a positive sample count");

  const std::int64_t blocks = (n_samples + kBlockSize - 1) / kBlockSize;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, blocks));

  std::vector<std::int64_t> hits(static_cast<std::size_t>(blocks), 0);
  std::atomic<std::int64_t> next{0};
  auto worker = [&]() {
    for (std::int64_t b = next++; b < blocks; b = next++) {
      const std::int64_t count = std::min(kBlockSize, n_samples - b * kBlockSize);
      hits[static_cast<std::size_t>(b)] = count_block(surface, side, seed, b, count);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  const double p = static_cast<double>(total) / static_cast<double>(n_samples);
  VolumeEstimate est;
  est.estimate = kS3Volume * p;
  est.std_error = kS3Volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
  est.samples = n_samples;
  est.seed = seed;
  return est;
}

TubeResult evaluate_sum_inequality(const ParametricSurface& surface,
                                   const QuadratureGrid& grid,
                                   const TubeOptions& options) {
  const auto samples = sample_surface(surface, grid);
  const auto* catalog = dynamic_cast<const CatalogSurface*>(&surface);
  const double tol = options.tolerance;

  TubeResult out;
  SumChain& chain = out.chain;
  chain.two_M = 2.0 * kS3Volume;
  chain.line1 = integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
    return c.k2 - c.k1 + (1.0 + c.k1 * c.k2) * (acot(c.k2) + acot(-c.k1));
  });
  chain.line2 = integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
    return c.k2 - c.k1 +
           (1.0 + c.k1 * c.k2) * (kPi - (std::atan(c.k2) - std::atan(c.k1)));
  });
  chain.line3 = integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
    return c.k2 - c.k1 + kPi * c.gauss_K -
           (1.0 + c.k1 * c.k2) * (std::atan(c.k2) - std::atan(c.k1));
  });
  const double total_K = integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
    return c.gauss_K;
  });
  chain.gauss_bonnet = kPi * total_K;
  const double chi_raw = total_K / (2.0 * kPi);
  const long chi = std::lround(chi_raw);
  if (!(std::abs(chi_raw - chi) < kEulerTolerance) || chi > 2 || chi % 2 != 0) {
    std::ostringstream msg;
    msg << "Euler characteristic not resolved: total_K / 2pi = " << chi_raw;
    throw GenusDetectionFailure(msg.str());
  }
  chain.genus = static_cast<int>((2 - chi) / 2);
  chain.prop1_lhs = 4.0 * kPi * kPi * chain.genus;
  chain.prop1_rhs = 2.0 * (kS3Volume - kS3Volume) +
                    integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
                      return prop1_integrand(c.k1, c.k2);
                    });

  for (int side = 1; side <= 2; ++side) {
    TubeReport& rep = side == 1 ? out.side1 : out.side2;
    rep.side = side;
    rep.hk_upper = side_upper_bound(samples, side);
    rep.focal_min = kPi;
    rep.focal_max = 0.0;
    for (const auto& s : samples) {
      const double t = focal_time(side_curvatures(s.curvature, side).second);
      rep.focal_min = std::min(rep.focal_min, t);
      rep.focal_max = std::max(rep.focal_max, t);
    }
    rep.sum_lhs = chain.two_M;
    rep.sum_rhs = chain.line1;
    rep.prop1_lhs = chain.prop1_lhs;
    rep.prop1_rhs = chain.prop1_rhs;

    const std::string link = "hk_side" + std::to_string(side);
    if (catalog && catalog->exact().side_volumes) {
      rep.exact_volume = (*catalog->exact().side_volumes)[side - 1];
      rep.hk_holds = within(*rep.exact_volume, rep.hk_upper, tol);
      chain.links.emplace_back(link, rep.hk_holds);
    } else if (catalog && options.samples > 0) {
      rep.mc_volume = monte_carlo_volume(*catalog, side, options.samples, options.seed);
      rep.hk_holds = rep.mc_volume->estimate - 3.0 * rep.mc_volume->std_error <=
                     rep.hk_upper + tol * (1.0 + rep.hk_upper);
      chain.links.emplace_back(link, rep.hk_holds);
    }
  }

  chain.links.emplace_back("sum_two_M_le_line1", within(chain.two_M, chain.line1, tol));
  chain.links.emplace_back("sum_line1_eq_line2",
                           std::abs(chain.line1 - chain.line2) <=
                               tol * (1.0 + std::abs(chain.line2)));
  chain.links.emplace_back("sum_line2_le_line3", within(chain.line2, chain.line3, tol));
  chain.links.emplace_back(
      "gauss_bonnet", std::abs(chain.gauss_bonnet - 2.0 * kPi * kPi * chi) <=
                          tol * (1.0 + std::abs(chain.gauss_bonnet)) + 1e-6);
  chain.links.emplace_back("prop1_genus_bound",
                           within(chain.prop1_lhs, chain.prop1_rhs, tol));
  for (const auto& [name, ok] : chain.links) {
    if (!ok) {
      chain.first_failure = name;
      break;
    }
  }
  return out;
}

TubeResult verify_sum_inequality(const ParametricSurface& surface,
                                 const QuadratureGrid& grid,
                                 const TubeOptions& options) {
  TubeResult out = evaluate_sum_inequality(surface, grid, options);
  if (out.chain.first_failure) {
    throw ChainViolation("tube-volume chain violated at link '" +
                         *out.chain.first_failure + "'");
  }
  return out;
}

}  // namespace s3pinch
