// s3pinch: certify genus-pinching inequalities for surfaces in the 3-sphere.

#include "s3pinch/errors.hpp"
#include "s3pinch/grid_io.hpp"
#include "s3pinch/report.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace s3pinch;
using report::CommandOutput;

double to_double(const std::string& text, const char* what) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(std::string(what) + ": cannot parse '" + text + "' as a number");
  }
  return x;
}

int to_int(const std::string& text, const char* what) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(std::string(what) + ": cannot parse '" + text + "' as an integer");
  }
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus-pinching certificates for closed surfaces in the unit 3-sphere"};
  app.require_subcommand(1);
  app.fallthrough();

  report::RunConfig config;
  std::string format_name;
  double tol = 0.0;
  app.add_option("--resolution", config.resolution,
                 "Quadrature nodes per direction (power of two, >= 8)")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Monte-Carlo seed")->capture_default_str();
  app.add_option("--samples", config.samples, "Monte-Carlo sample count")
      ->capture_default_str();
  app.add_option("--format", format_name, "Output format: json, csv or text");
  auto* tol_opt = app.add_option("--tol", tol, "Relative tolerance for bound checks");

  std::string spec;
  auto* check = app.add_subcommand("check", "Run every certificate on a catalog surface");
  check->add_option("surface", spec, "e.g. sphere:r=0.785, torus:a=0.7071, clifford")
      ->required();

  double a_min = 0.0, a_max = 0.0;
  int steps = 0;
  auto* sweep = app.add_subcommand("sweep-tori", "Genus-bound slack across flat tori");
  sweep->add_option("a_min", a_min)->required();
  sweep->add_option("a_max", a_max)->required();
  sweep->add_option("steps", steps)->required();

  std::string what;
  std::vector<std::string> solve_args;
  double ambient = kS3Volume;
  auto* solve = app.add_subcommand("solve", "Scalar solves: beta <g0> <area> | finv <y> | maxA <g>");
  solve->add_option("what", what)->required()->check(CLI::IsMember({"beta", "finv", "maxA"}));
  solve->add_option("args", solve_args)->required();
  solve->add_option("--ambient", ambient, "Ambient volume |M| for maxA")
      ->capture_default_str();

  auto* gap = app.add_subcommand("gap", "Gap certificate for a minimal surface");
  gap->add_option("surface", spec)->required();

  auto* eigen = app.add_subcommand("eigen", "First-eigenvalue certificates");
  eigen->add_option("surface", spec)->required();

  std::string path;
  auto* import = app.add_subcommand("import", "Check a surface read from a grid file");
  import->add_option("file", path)->required();

  auto* exporter = app.add_subcommand("export", "Write a catalog surface as a grid file");
  exporter->add_option("surface", spec)->required();
  exporter->add_option("file", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return report::kUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  CommandOutput out;
  try {
    if (*tol_opt) config.tolerance = tol;
    if (!format_name.empty()) config.format = report::parse_format(format_name);
    else if (*sweep) config.format = report::Format::Csv;

    if (*check) {
      out = report::cmd_check(spec, config);
    } else if (*sweep) {
      out = report::cmd_sweep_tori(a_min, a_max, steps, config);
    } else if (*solve) {
      auto need = [&](std::size_t n) {
        if (solve_args.size() != n) {
          throw ParseError("solve " + what + ": expected " + std::to_string(n) +
                           " argument(s)");
        }
      };
      if (what == "beta") {
        need(2);
        out = report::cmd_solve_beta(to_int(solve_args[0], "g0"),
                                     to_double(solve_args[1], "area"), config);
      } else if (what == "finv") {
        need(1);
        out = report::cmd_solve_finv(to_double(solve_args[0], "y"), config);
      } else {
        need(1);
        out = report::cmd_solve_maxA(to_int(solve_args[0], "g"), ambient, config);
      }
    } else if (*gap) {
      out = report::cmd_gap(spec, config);
    } else if (*eigen) {
      out = report::cmd_eigen(spec, config);
    } else if (*import) {
      out = report::cmd_import(path, config);
    } else if (*exporter) {
      report::validate(config);
      const CatalogPtr surface = parse_surface_spec(spec);
      export_grid_file(*surface, config.resolution, config.resolution, path);
      out.doc = {{"schema", report::kSchemaVersion},
                 {"command", "export"},
                 {"surface", surface->describe()},
                 {"file", path},
                 {"provenance", {{"resolution", config.resolution}}}};
    }
  } catch (const std::exception& e) {
    out = report::error_output(e, command, config);
    std::cerr << "error: " << e.what() << "\n";
  }

  std::cout << report::render(out, config.format);
  return out.exit_code;
}
