#include "s3pinch/grid_io.hpp"

#include "s3pinch/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

namespace s3pinch {

namespace {

constexpr int kStencil = 9;
constexpr double kOffSphere = 1e-6;
constexpr int kMinPeriodic = 16;

double parse_field(std::string_view text, std::size_t line_no) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || first == last) {
    throw FormatError("grid file line " + std::to_string(line_no) +
                      ": cannot parse number '" + std::string(text) + "'");
  }
  return x;
}

// Derivatives along one direction of a field sampled on n nodes spaced h.
// `at(k)` returns the value at node k (0 <= k < n).
template <typename At>
std::array<Vec4, 2> directional_derivatives(int i, int n, double h, bool periodic,
                                            const At& at) {
  int start;
  if (periodic) {
    start = i - kStencil / 2;
  } else {
    start = std::clamp(i - kStencil / 2, 0, n - kStencil);
  }
  std::array<double, kStencil> offsets;
  for (int k = 0; k < kStencil; ++k) offsets[k] = start + k - i;
  const auto w = fornberg_weights(0.0, offsets, 2);
  Vec4 d1 = Vec4::Zero(), d2 = Vec4::Zero();
  for (int k = 0; k < kStencil; ++k) {
    int idx = start + k;
    if (periodic) idx = ((idx % n) + n) % n;
    const Vec4 x = at(idx);
    d1 += w[1][k] * x;
    d2 += w[2][k] * x;
  }
  return {d1 / h, d2 / (h * h)};
}

std::string bool_word(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<std::vector<double>> fornberg_weights(double x0,
                                                  std::span<const double> points,
                                                  int max_order) {
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = points[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = points[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = points[i] - points[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<double> uniform_nodes(double lo, double hi, int n, bool periodic) {
  std::vector<double> nodes(n);
  const double h = (hi - lo) / n;
  for (int i = 0; i < n; ++i) nodes[i] = lo + (periodic ? i : i + 0.5) * h;
  return nodes;
}

SampledSurface::SampledSurface(ParameterDomain domain, int nu, int nv,
                               std::vector<Vec4> positions, std::string label)
    : domain_(domain), nu_(nu), nv_(nv), label_(std::move(label)) {
  const int min_u = domain.periodic_u ? kMinPeriodic : kStencil;
  const int min_v = domain.periodic_v ? kMinPeriodic : kStencil;
  if (nu < min_u || nv < min_v) {
    std::ostringstream msg;
    msg << "grid " << nu << "x" << nv << " too coarse: need at least " << min_u
        << " nodes along u and " << min_v << " along v";
    throw ResolutionTooCoarse(msg.str());
  }
  if (positions.size() != static_cast<std::size_t>(nu) * nv) {
    throw FormatError("sampled surface: position count does not match grid");
  }

  const double hu = (domain.u_max - domain.u_min) / nu;
  const double hv = (domain.v_max - domain.v_min) / nv;
  grid_.periodic_u = domain.periodic_u;
  grid_.periodic_v = domain.periodic_v;
  grid_.nodes_u = uniform_nodes(domain.u_min, domain.u_max, nu, domain.periodic_u);
  grid_.nodes_v = uniform_nodes(domain.v_min, domain.v_max, nv, domain.periodic_v);
  grid_.weights_u.assign(nu, hu);
  grid_.weights_v.assign(nv, hv);

  auto pos = [&](int i, int j) -> const Vec4& { return positions[i * nv + j]; };

  std::vector<Vec4> dv_field(positions.size());
  points_.resize(positions.size());
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const auto [d1, d2] = directional_derivatives(
          j, nv, hv, domain.periodic_v, [&](int k) { return pos(i, k); });
      SurfacePoint& p = points_[i * nv + j];
      p.position = pos(i, j);
      p.dv = d1;
      p.dvv = d2;
      dv_field[i * nv + j] = d1;
    }
  }
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const auto [d1, d2] = directional_derivatives(
          i, nu, hu, domain.periodic_u, [&](int k) { return pos(k, j); });
      const auto [m1, m2] = directional_derivatives(
          i, nu, hu, domain.periodic_u, [&](int k) { return dv_field[k * nv + j]; });
      (void)m2;
      SurfacePoint& p = points_[i * nv + j];
      p.du = d1;
      p.duu = d2;
      p.duv = m1;
    }
  }
}

int SampledSurface::index_of(double x, bool along_u) const {
  const auto& nodes = along_u ? grid_.nodes_u : grid_.nodes_v;
  const double lo = along_u ? domain_.u_min : domain_.v_min;
  const double hi = along_u ? domain_.u_max : domain_.v_max;
  const bool periodic = along_u ? domain_.periodic_u : domain_.periodic_v;
  const int n = static_cast<int>(nodes.size());
  const double h = (hi - lo) / n;
  double t = (x - lo) / h - (periodic ? 0.0 : 0.5);
  long k = std::lround(t);
  if (std::abs(t - k) > 1e-6) {
    std::ostringstream msg;
    msg << describe() << ": parameter " << x << " is not a grid node";
    throw DomainError(msg.str());
  }
  if (periodic) {
    k = ((k % n) + n) % n;
  } else if (k < 0 || k >= n) {
    throw DomainError(describe() + ": parameter outside the sampled domain");
  }
  return static_cast<int>(k);
}

SurfacePoint SampledSurface::evaluate(double u, double v) const {
  return points_[index_of(u, true) * nv_ + index_of(v, false)];
}

void export_grid(const ParametricSurface& surface, int nu, int nv,
                 std::ostream& out) {
  const ParameterDomain d = surface.domain();
  const auto us = uniform_nodes(d.u_min, d.u_max, nu, d.periodic_u);
  const auto vs = uniform_nodes(d.v_min, d.v_max, nv, d.periodic_v);
  out << std::setprecision(17);
  out << "# periodic_u=" << bool_word(d.periodic_u)
      << " periodic_v=" << bool_word(d.periodic_v) << " domain_u=[" << d.u_min
      << "," << d.u_max << "] domain_v=[" << d.v_min << "," << d.v_max << "]\n";
  out << "u,v,x1,x2,x3,x4\n";
  for (double u : us) {
    for (double v : vs) {
      const Vec4 x = surface.evaluate(u, v).position;
      out << u << ',' << v << ',' << x[0] << ',' << x[1] << ',' << x[2] << ','
          << x[3] << '\n';
    }
  }
}

void export_grid_file(const ParametricSurface& surface, int nu, int nv,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  export_grid(surface, nu, nv, out);
}

std::shared_ptr<const SampledSurface> import_grid(std::istream& in,
                                                  const std::string& label) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw FormatError("grid file is empty");
  ++line_no;
  static const std::regex header_re(
      R"(^#\s*periodic_u=(true|false)\s+periodic_v=(true|false)\s+)"
      R"(domain_u=\[([^,\]]+),([^\]]+)\]\s+domain_v=\[([^,\]]+),([^\]]+)\]\s*\r?$)");
  std::smatch m;
  if (!std::regex_match(line, m, header_re)) {
    throw FormatError("grid file: first line must be the '# periodic_u=...' comment");
  }
  ParameterDomain domain;
  domain.periodic_u = m[1] == "true";
  domain.periodic_v = m[2] == "true";
  domain.u_min = parse_field(m[3].str(), line_no);
  domain.u_max = parse_field(m[4].str(), line_no);
  domain.v_min = parse_field(m[5].str(), line_no);
  domain.v_max = parse_field(m[6].str(), line_no);
  if (!(domain.u_max > domain.u_min) || !(domain.v_max > domain.v_min)) {
    throw FormatError("grid file: empty parameter domain");
  }

  if (!std::getline(in, line)) throw FormatError("grid file: missing column header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v,x1,x2,x3,x4") {
    throw FormatError("grid file: column header must be 'u,v,x1,x2,x3,x4'");
  }

  std::vector<double> us, vs;
  std::vector<Vec4> positions;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::array<double, 6> f{};
    std::size_t begin = 0;
    for (int k = 0; k < 6; ++k) {
      const std::size_t end = line.find(',', begin);
      if ((k < 5) == (end == std::string::npos)) {
        throw FormatError("grid file line " + std::to_string(line_no) +
                          ": expected 6 comma-separated fields");
      }
      f[k] = parse_field(std::string_view(line).substr(begin, end - begin), line_no);
      begin = end + 1;
    }
    const Vec4 x(f[2], f[3], f[4], f[5]);
    if (!(std::abs(x.norm() - 1.0) <= kOffSphere)) {
      std::ostringstream msg;
      msg << "grid file line " << line_no << ": point has norm " << x.norm()
          << ", not on the unit 3-sphere";
      throw OffSphere(msg.str());
    }
    us.push_back(f[0]);
    vs.push_back(f[1]);
    positions.push_back(x / x.norm());
  }
  if (positions.empty()) throw FormatError("grid file: no data rows");

  int nv = 0;
  while (nv < static_cast<int>(us.size()) && us[nv] == us[0]) ++nv;
  if (positions.size() % nv != 0) {
    throw FormatError("grid file: row count is not a multiple of the v resolution "
                      "(truncated file?)");
  }
  const int nu = static_cast<int>(positions.size() / nv);

  const auto expect_u = uniform_nodes(domain.u_min, domain.u_max, nu, domain.periodic_u);
  const auto expect_v = uniform_nodes(domain.v_min, domain.v_max, nv, domain.periodic_v);
  const double hu = (domain.u_max - domain.u_min) / nu;
  const double hv = (domain.v_max - domain.v_min) / nv;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const std::size_t r = static_cast<std::size_t>(i) * nv + j;
      if (std::abs(us[r] - expect_u[i]) > 1e-6 * hu ||
          std::abs(vs[r] - expect_v[j]) > 1e-6 * hv) {
        std::ostringstream msg;
        msg << "grid file row " << r + 1 << ": (u, v) = (" << us[r] << ", " << vs[r]
            << ") is not the expected node (" << expect_u[i] << ", " << expect_v[j]
            << ")";
        throw FormatError(msg.str());
      }
    }
  }
  return std::make_shared<SampledSurface>(domain, nu, nv, std::move(positions), label);
}

std::shared_ptr<const SampledSurface> import_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open grid file '" + path + "'");
  return import_grid(in, "import:" + path);
}

}  // namespace s3pinch
