#include "s3pinch/report.hpp"

#include "s3pinch/errors.hpp"
#include "s3pinch/grid_io.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace s3pinch::report {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCatalogTolerance = 1e-8;
constexpr double kSampledTolerance = 1e-4;
constexpr double kMinimalH = 1e-6;

json provenance(const RunConfig& config, std::optional<int> nu = std::nullopt,
                std::optional<int> nv = std::nullopt) {
  json p;
  p["resolution"] = config.resolution;
  if (nu && nv) p["grid"] = {*nu, *nv};
  p["seed"] = config.seed;
  p["samples"] = config.samples;
  return p;
}

json header(std::string_view command, const RunConfig& config) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = std::string(command);
  doc["provenance"] = provenance(config);
  return doc;
}

json optional_number(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

bool holds(double lhs, double rhs, double tol) {
  return lhs <= rhs + tol * (1.0 + std::abs(rhs));
}

double tolerance_for(const ParametricSurface& surface, const RunConfig& config) {
  if (config.tolerance) return *config.tolerance;
  return surface.native_grid() ? kSampledTolerance : kCatalogTolerance;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

CommandOutput solve_output(std::string_view what, json inputs, const RootResult& root,
                           const RunConfig& config) {
  CommandOutput out;
  out.doc = header("solve", config);
  out.doc["equation"] = std::string(what);
  out.doc["inputs"] = std::move(inputs);
  out.doc["result"] = to_json(root);
  const bool ok = std::abs(root.residual) <= 1e-11 * (1.0 + std::abs(root.target));
  out.doc["converged"] = ok;
  out.exit_code = ok ? kOk : kNumericalFailure;
  return out;
}

}  // namespace

void validate(const RunConfig& config) {
  const int r = config.resolution;
  if (r < 8 || (r & (r - 1)) != 0) {
    throw DomainError("resolution must be a power of two and at least 8");
  }
  if (config.samples <= 0) throw DomainError("sample count must be positive");
  if (config.tolerance && !(*config.tolerance > 0.0)) {
    throw DomainError("tolerance must be positive");
  }
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw ParseError("unknown output format '" + std::string(name) + "'");
}

json to_json(const GenusReport& rep) {
  json j;
  j["grid"] = {rep.nu, rep.nv};
  j["area"] = rep.area;
  j["total_K"] = rep.total_K;
  j["euler_raw"] = rep.euler_raw;
  j["euler_char"] = rep.euler_char;
  j["genus"] = rep.genus;
  j["integral_f"] = rep.integral_f;
  j["integral_A3"] = rep.integral_A3;
  j["max_abs_H"] = rep.max_abs_H;
  j["max_traceless"] = rep.max_traceless;
  j["bound_lhs"] = rep.bound_lhs;
  j["bound_rhs"] = rep.bound_rhs;
  j["slack"] = rep.slack;
  j["cubic"] = {{"lhs", rep.cubic_lhs}, {"rhs", rep.cubic_rhs}, {"slack", rep.cubic_slack}};
  if (rep.gap) {
    j["gap"] = {{"integral_absA3", rep.gap->integral_A3},
                {"threshold", rep.gap->threshold},
                {"below_threshold", rep.gap->below_threshold}};
  } else {
    j["gap"] = nullptr;
  }
  j["convergence"] = optional_number(rep.convergence);
  return j;
}

json to_json(const TubeReport& rep) {
  json j;
  j["side"] = rep.side;
  j["hk_upper"] = rep.hk_upper;
  j["exact_volume"] = optional_number(rep.exact_volume);
  if (rep.mc_volume) {
    j["mc_volume"] = {{"estimate", rep.mc_volume->estimate},
                      {"stderr", rep.mc_volume->std_error},
                      {"samples", rep.mc_volume->samples},
                      {"seed", rep.mc_volume->seed}};
  } else {
    j["mc_volume"] = nullptr;
  }
  j["focal_min"] = rep.focal_min;
  j["focal_max"] = rep.focal_max;
  j["sum_lhs"] = rep.sum_lhs;
  j["sum_rhs"] = rep.sum_rhs;
  j["prop1_lhs"] = rep.prop1_lhs;
  j["prop1_rhs"] = rep.prop1_rhs;
  j["hk_holds"] = rep.hk_holds;
  return j;
}

json to_json(const SumChain& chain) {
  json j;
  j["two_M"] = chain.two_M;
  j["line1"] = chain.line1;
  j["line2"] = chain.line2;
  j["line3"] = chain.line3;
  j["pi_total_K"] = chain.gauss_bonnet;
  j["genus"] = chain.genus;
  j["prop1_lhs"] = chain.prop1_lhs;
  j["prop1_rhs"] = chain.prop1_rhs;
  json links = json::object();
  for (const auto& [name, ok] : chain.links) links[name] = ok;
  j["links"] = links;
  j["first_failure"] = chain.first_failure ? json(*chain.first_failure) : json(nullptr);
  return j;
}

json to_json(const RootResult& root) {
  return json{{"value", root.value},         {"residual", root.residual},
              {"target", root.target},       {"bracket", {root.lo, root.hi}},
              {"iterations", root.iterations}};
}

CommandOutput cmd_check(const ParametricSurface& surface, const RunConfig& config) {
  validate(config);
  const double tol = tolerance_for(surface, config);
  const QuadratureGrid grid = grid_for(surface, config.resolution, config.resolution);
  const GenusReport genus = genus_report(surface, grid);

  TubeOptions topts;
  topts.tolerance = tol;
  topts.samples = config.samples;
  topts.seed = config.seed;
  const TubeResult tube = evaluate_sum_inequality(surface, grid, topts);

  CommandOutput out;
  out.doc = header("check", config);
  out.doc["provenance"] = provenance(config, grid.nu(), grid.nv());
  out.doc["surface"] = surface.describe();
  out.doc["tolerance"] = tol;
  out.doc["genus_report"] = to_json(genus);
  out.doc["tube"] = {{"side1", to_json(tube.side1)},
                     {"side2", to_json(tube.side2)},
                     {"chain", to_json(tube.chain)}};

  json checks = json::object();
  checks["genus_bound"] = holds(genus.bound_lhs, genus.bound_rhs, tol);
  checks["cubic_bound"] = holds(genus.cubic_lhs, genus.cubic_rhs, tol);
  for (const auto& [name, ok] : tube.chain.links) checks[name] = ok;
  bool all = true;
  for (const auto& [name, ok] : checks.items()) all = all && ok.get<bool>();
  out.doc["checks"] = checks;
  out.doc["pass"] = all;
  out.exit_code = all ? kOk : kBoundViolation;
  return out;
}

CommandOutput cmd_check(std::string_view spec, const RunConfig& config) {
  validate(config);
  const CatalogPtr surface = parse_surface_spec(spec);
  return cmd_check(*surface, config);
}

CommandOutput cmd_sweep_tori(double a_min, double a_max, int steps,
                             const RunConfig& config) {
  validate(config);
  if (!(std::isfinite(a_min) && std::isfinite(a_max)) || !(a_min > 0.0) ||
      !(a_max < 1.0) || a_min > a_max || steps < 1 ||
      (steps == 1 && a_min != a_max) || (steps > 1 && a_min == a_max)) {
    throw DomainError("sweep-tori: need 0 < a_min < a_max < 1 and steps >= 2 "
                      "(or a_min = a_max with steps = 1)");
  }
  const double tol = config.tolerance.value_or(kCatalogTolerance);

  CommandOutput out;
  out.doc = header("sweep-tori", config);
  out.doc["a_min"] = a_min;
  out.doc["a_max"] = a_max;
  out.doc["steps"] = steps;
  json rows = json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "a,area,traceless_norm,integral_f,slack\n";
  bool all = true;
  for (int k = 0; k < steps; ++k) {
    const double a = steps == 1 ? a_min : a_min + (a_max - a_min) * k / (steps - 1);
    const CatalogPtr torus = flat_torus(a);
    GenusOptions gopts;
    gopts.with_convergence = false;
    const GenusReport rep = genus_report(*torus, config.resolution, config.resolution, gopts);
    const double traceless = *torus->exact().traceless_norm;
    rows.push_back({{"a", a},
                    {"area", rep.area},
                    {"traceless_norm", traceless},
                    {"integral_f", rep.integral_f},
                    {"slack", rep.slack}});
    csv << a << ',' << rep.area << ',' << traceless << ',' << rep.integral_f << ','
        << rep.slack << '\n';
    all = all && holds(rep.bound_lhs, rep.bound_rhs, tol);
  }
  out.doc["rows"] = rows;
  out.doc["pass"] = all;
  out.csv = csv.str();
  out.exit_code = all ? kOk : kBoundViolation;
  return out;
}

CommandOutput cmd_solve_beta(int g0, double area, const RunConfig& config) {
  return solve_output("beta + (beta^2 - 1) atan(beta) = 2 g0 pi^2 / area",
                      json{{"g0", g0}, {"area", area}}, beta_solve(g0, area), config);
}

CommandOutput cmd_solve_finv(double y, const RunConfig& config) {
  return solve_output("f(t) = y", json{{"y", y}}, f_inverse(y), config);
}

CommandOutput cmd_solve_maxA(int genus, double ambient_volume, const RunConfig& config) {
  const RootResult root = min_surface_maxA_solve(genus, ambient_volume);
  CommandOutput out = solve_output(
      "max|A| >= f^-1((2 pi^2 (g - 1) + |M|) / (4 pi floor((g + 3) / 2)))",
      json{{"genus", genus}, {"ambient_volume", ambient_volume}}, root, config);
  out.doc["max_A_lower_bound"] = root.value;
  return out;
}

CommandOutput cmd_gap(std::string_view spec, const RunConfig& config) {
  validate(config);
  const CatalogPtr surface = parse_surface_spec(spec);
  GenusOptions gopts;
  gopts.with_convergence = false;
  const GenusReport rep =
      genus_report(*surface, config.resolution, config.resolution, gopts);
  if (rep.max_abs_H > kMinimalH) {
    std::ostringstream msg;
    msg << surface->describe() << " is not minimal: max |H| = " << rep.max_abs_H;
    throw NotMinimal(msg.str());
  }
  const auto samples = sample_surface(*surface, grid_for(*surface, config.resolution,
                                                         config.resolution));
  const double integral = integrate(samples, [](const CurvatureData& c, const SurfacePoint&) {
    return std::pow(c.norm_A_squared(), 1.5);
  });
  const double threshold = 3.0 * std::numbers::sqrt2 * kPi * kPi;
  const bool below = integral < threshold;
  const bool is_equator = surface->kind() == SurfaceKind::GeodesicSphere;

  CommandOutput out;
  out.doc = header("gap", config);
  out.doc["surface"] = surface->describe();
  out.doc["integral_absA3"] = integral;
  out.doc["threshold"] = threshold;
  out.doc["certificate"] = below ? "below threshold" : "above threshold";
  out.doc["genus"] = rep.genus;
  out.doc["max_abs_H"] = rep.max_abs_H;
  // Below the threshold the surface must be an equator.
  const bool consistent = !below || is_equator;
  out.doc["consistent"] = consistent;
  out.exit_code = consistent ? kOk : kBoundViolation;
  return out;
}

CommandOutput cmd_eigen(std::string_view spec, const RunConfig& config) {
  validate(config);
  const CatalogPtr surface = parse_surface_spec(spec);
  const ExactData& exact = surface->exact();
  if (!exact.lambda1 || !exact.area) {
    throw NoSpectralData(surface->describe() + ": no closed-form first eigenvalue");
  }
  const double tol = config.tolerance.value_or(kCatalogTolerance);
  GenusOptions gopts;
  gopts.with_convergence = false;
  const GenusReport rep =
      genus_report(*surface, config.resolution, config.resolution, gopts);

  const double product = *exact.lambda1 * *exact.area;
  const double pinch_rhs = eigenvalue_bound_rhs(*exact.area, rep.integral_f, kS3Volume);
  const double yy = yang_yau_bound(rep.genus);
  const double esi = el_soufi_ilias_bound(rep.genus);

  const bool equality_claimed =
      surface->kind() == SurfaceKind::GeodesicSphere ||
      (surface->kind() == SurfaceKind::FlatTorus && surface->is_minimal());
  const bool equality_observed = std::abs(product - pinch_rhs) <= tol * (1.0 + pinch_rhs);

  CommandOutput out;
  out.doc = header("eigen", config);
  out.doc["surface"] = surface->describe();
  out.doc["genus"] = rep.genus;
  out.doc["lambda1"] = *exact.lambda1;
  out.doc["area"] = *exact.area;
  out.doc["area_quadrature"] = rep.area;
  out.doc["lambda1_area"] = product;
  out.doc["integral_f"] = rep.integral_f;
  json bounds;
  bounds["pinching"] = {{"rhs", pinch_rhs}, {"holds", holds(product, pinch_rhs, tol)}};
  bounds["yang_yau"] = {{"rhs", yy}, {"holds", holds(product, yy, tol)}};
  bounds["el_soufi_ilias"] = {{"rhs", esi}, {"holds", holds(product, esi, tol)}};
  out.doc["bounds"] = bounds;
  out.doc["equality_claimed"] = equality_claimed;
  out.doc["equality_observed"] = equality_observed;
  out.doc["equality_discrepancy"] = equality_claimed && !equality_observed;
  if (equality_claimed && !equality_observed) {
    out.doc["note"] =
        "equality is claimed for this surface but lambda1*Area is strictly below "
        "8 pi + (2/pi) integral_f";
  }
  bool all = true;
  for (const auto& [name, b] : bounds.items()) all = all && b["holds"].get<bool>();
  out.doc["pass"] = all;
  out.exit_code = all ? kOk : kBoundViolation;
  return out;
}

CommandOutput cmd_import(const std::string& path, const RunConfig& config) {
  validate(config);
  const auto surface = import_grid_file(path);
  CommandOutput out = cmd_check(*surface, config);
  out.doc["command"] = "import";
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return kUsage;
  if (dynamic_cast<const ChainViolation*>(&e)) return kBoundViolation;
  return kNumericalFailure;
}

CommandOutput error_output(const std::exception& e, std::string_view command,
                           const RunConfig& config) {
  CommandOutput out;
  out.doc = header(command, config);
  const auto* err = dynamic_cast<const Error*>(&e);
  out.doc["error"] = {{"kind", err ? err->kind() : "Exception"}, {"message", e.what()}};
  out.exit_code = exit_code_for(e);
  return out;
}

std::string render(const CommandOutput& out, Format format) {
  switch (format) {
    case Format::Json:
      return out.doc.dump(2) + "\n";
    case Format::Csv: {
      if (out.csv) return *out.csv;
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(out.doc, "", rows);
      std::string s = "key,value\n";
      for (const auto& [k, v] : rows) s += k + "," + v + "\n";
      return s;
    }
    case Format::Text: {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(out.doc, "", rows);
      std::string s;
      for (const auto& [k, v] : rows) s += k + " = " + v + "\n";
      return s;
    }
  }
  return {};
}

}  // namespace s3pinch::report
