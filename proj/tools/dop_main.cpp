// dop: grid solver for the double-obstacle p-Laplace problem with a
// tug-of-war Monte-Carlo cross-check.
//
// Subcommands: solve, simulate, validate, bench. Configuration comes from
// documented defaults, then an optional --config file, then repeatable
// --set key=value overrides. Exit codes: 0 success, 2 config error,
// 3 convergence failure, 4 I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dop/config.hpp"
#include "dop/dpp.hpp"
#include "dop/fields.hpp"
#include "dop/game.hpp"
#include "dop/mesh.hpp"
#include "dop/output.hpp"
#include "dop/validate.hpp"

namespace {

using nlohmann::json;

double bench_default_h(const dop::RunConfig& c) {
  // The bench radius table needs eps = 15h < collar.
  return c.h_explicit ? c.h : 0.025;
}
double bench_default_collar(const dop::RunConfig& c) {
  return c.collar_explicit ? c.collar : 0.4;
}

json config_echo(const dop::RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["dataset"] = c.dataset;
  j["psi1"] = c.psi1_expr;
  j["psi2"] = c.psi2_expr;
  j["f"] = c.f_expr;
  if (c.p) j["p"] = *c.p;
  j["h"] = c.h;
  j["a"] = c.a;
  j["collar"] = c.collar;
  j["radius_in_mesh_units"] = c.radius_units;
  j["tolerance"] = c.tolerance;
  j["max_iterations"] = c.max_iterations;
  j["seed"] = c.seed;
  j["runs"] = c.runs;
  json probes = json::array();
  for (const auto& pt : c.probes) probes.push_back({pt.x, pt.y});
  j["probes"] = probes;
  j["eta_stop"] = dop::effective_eta_stop(c);
  j["max_steps"] = c.max_steps;
  j["threads"] = c.threads;
  j["bench_quick"] = c.bench_quick;
  j["out"] = c.out_dir;
  return j;
}

json report_of(const dop::SolveReport& r) {
  return {{"iterations", r.iterations}, {"final_gap", r.final_gap},
          {"residual", r.residual},     {"wall_time_s", r.wall_time_s},
          {"k", r.stencil_size},        {"converged", r.converged}};
}

json validation_json(const dop::ValidationReport& report, const dop::Mesh& mesh) {
  json j;
  j["pass"] = report.pass;
  j["violation_count"] = report.violations.size();
  json items = json::array();
  std::size_t shown = 0;
  for (const auto& v : report.violations) {
    if (shown++ >= 32) break;  // full count above; keep the report small
    const char* kind = v.kind == dop::ViolationKind::ObstacleOrder  ? "ObstacleOrderViolation"
                       : v.kind == dop::ViolationKind::BoundaryOrder ? "BoundaryOrderViolation"
                                                                      : "ExponentOutOfRange";
    json item;
    item["kind"] = kind;
    item["node"] = v.node;
    if (v.node >= 0) {
      const dop::Point pt = mesh.coord(v.node);
      item["x"] = pt.x;
      item["y"] = pt.y;
      item["psi1"] = v.psi1;
      item["psi2"] = v.psi2;
      if (v.kind == dop::ViolationKind::BoundaryOrder) item["f"] = v.f;
    }
    items.push_back(item);
  }
  j["violations"] = items;
  return j;
}

dop::ValidationReport validate_and_warn(const dop::ProblemSpec& spec,
                                        const dop::Mesh& mesh) {
  const dop::ValidationReport report = dop::validate_problem(spec, mesh);
  if (!report.pass) {
    std::cerr << "warning: problem data violates the admissibility hypotheses at "
              << report.violations.size()
              << " node(s); the operator is still well-defined, proceeding\n";
  }
  return report;
}

struct SolveArtifacts {
  dop::Mesh mesh;
  dop::Coefficients coeff;
  dop::ProblemSpec spec;
  dop::GridFunction u;
  dop::SolveReport report;
  dop::ValidationReport validation;
};

SolveArtifacts run_solve(const dop::RunConfig& c) {
  dop::ProblemSpec spec = dop::problem_from(c);
  const dop::Coefficients coeff = dop::coefficients(spec.p);
  dop::Mesh mesh = dop::build_mesh(c.h, c.a, c.collar, c.radius_units * c.h);
  dop::ValidationReport validation = validate_and_warn(spec, mesh);
  dop::SolveOptions options;
  options.tol = c.tolerance;
  options.max_iterations = c.max_iterations;
  options.threads = c.threads;
  auto [u, report] = dop::solve_bracket(mesh, coeff, spec, options);
  return SolveArtifacts{std::move(mesh), coeff,  std::move(spec),
                        std::move(u),    report, std::move(validation)};
}

void emit_solution(const dop::RunConfig& c, const SolveArtifacts& art, json extra) {
  const std::filesystem::path out(c.out_dir);
  dop::write_solution_csv(out / "solution.csv", art.mesh, art.u,
                          dop::sample_field(art.spec.psi1, art.mesh),
                          dop::sample_field(art.spec.psi2, art.mesh));
  json report;
  report["version"] = dop::kVersion;
  report["command"] = c.command;
  report["config"] = config_echo(c);
  report["solve"] = report_of(art.report);
  report["validation"] = validation_json(art.validation, art.mesh);
  for (auto& [key, value] : extra.items()) report[key] = value;
  dop::write_report_json(out / "report.json", report);
}

int cmd_solve(const dop::RunConfig& c) {
  SolveArtifacts art = run_solve(c);
  emit_solution(c, art, json::object());
  std::cout << "solved in " << art.report.iterations << " sweeps, gap "
            << art.report.final_gap << ", residual " << art.report.residual << "\n";
  return 0;
}

int cmd_simulate(const dop::RunConfig& c) {
  SolveArtifacts art = run_solve(c);

  std::vector<dop::Point> probes = c.probes;
  if (probes.empty()) probes.push_back({0.0, 0.0});

  dop::EstimateOptions opt;
  opt.runs = c.runs;
  opt.seed = c.seed;
  opt.eta_stop = dop::effective_eta_stop(c);
  opt.max_steps = c.max_steps;
  opt.threads = c.threads;

  json estimates = json::array();
  for (const dop::Point& pt : probes) {
    const long node = art.mesh.nearest_node(pt.x, pt.y);
    if (!art.mesh.is_interior(node)) {
      throw dop::ConfigError("probe (" + std::to_string(pt.x) + ", " +
                             std::to_string(pt.y) + ") is not an interior node");
    }
    const dop::ValueEstimate est =
        dop::estimate_value(art.mesh, art.coeff, art.spec, art.u, node, opt);
    const dop::Point at = art.mesh.coord(node);
    const double uval = art.u[static_cast<std::size_t>(node)];
    estimates.push_back({{"x", at.x},
                         {"y", at.y},
                         {"node", node},
                         {"u", uval},
                         {"mc_mean", est.mean},
                         {"mc_std_error", est.std_error},
                         {"runs", est.runs},
                         {"max_steps_hit", est.max_steps_hit}});
    std::cout << "probe (" << at.x << ", " << at.y << "): u = " << uval
              << ", game mean = " << est.mean << " +- " << est.std_error << "\n";
  }
  emit_solution(c, art, json{{"simulate", estimates}});
  return 0;
}

int cmd_validate(const dop::RunConfig& c) {
  const dop::ProblemSpec spec = dop::problem_from(c);
  const dop::Mesh mesh = dop::build_mesh(c.h, c.a, c.collar, c.radius_units * c.h);
  const dop::ValidationReport report = dop::validate_problem(spec, mesh);

  json j;
  j["version"] = dop::kVersion;
  j["command"] = c.command;
  j["config"] = config_echo(c);
  j["validation"] = validation_json(report, mesh);
  dop::write_report_json(std::filesystem::path(c.out_dir) / "report.json", j);

  if (!report.pass) {
    std::cout << "validation FAILED with " << report.violations.size()
              << " violation(s)\n";
    return 2;
  }
  std::cout << "validation passed\n";
  return 0;
}

// Bench manifest. The radius table reruns the shipped datasets at radii
// {15,10,5,3}; error1/error2 are the max errors of the two known-solution
// problems, mirroring the reference table layout. The p-sweep grid uses
// six boundary conditions crossed with {no, one, two} obstacles; the
// obstacle shapes are bump/paraboloid variants clamped to +-4 so every
// boundary condition stays admissible (synthetic fillers, not from any
// published table).
namespace bench {

dop::ScalarField lower_bumps() {
  return dop::ScalarField("bench.psi1", [](double x, double y) {
    const auto sq = [](double t) { return t * t; };
    double v = 1.0 - 33.0 * sq(x + 0.5) - 27.0 * sq(y + 0.1);
    v = std::max(v, 0.5 - 40.0 * sq(x + 0.3) - 34.0 * sq(y + 0.4));
    v = std::max(v, 0.5 - 36.0 * sq(x - 0.6) - 51.0 * sq(y - 0.7));
    return std::max(v, -4.0);
  });
}

dop::ScalarField upper_paraboloids() {
  return dop::ScalarField("bench.psi2", [](double x, double y) {
    const auto sq = [](double t) { return t * t; };
    double v = 33.0 * sq(x + 0.6) + 27.0 * sq(y - 0.6) - 1.0;
    v = std::min(v, 33.0 * sq(x - 0.6) + 27.0 * sq(y + 0.6) - 1.0);
    return std::min(v, 4.0);
  });
}

std::vector<dop::ScalarField> boundary_conditions() {
  const double q = 8.0 / 9.0;  // fundamental-profile shape, fixed exponent
  return {
      dop::ScalarField("0", [](double, double) { return 0.0; }),
      dop::ScalarField("1-2y^2", [](double, double y) { return 1.0 - 2.0 * y * y; }),
      dop::ScalarField("2-(x+y)^2",
                       [](double x, double y) { return 2.0 - (x + y) * (x + y); }),
      dop::ScalarField("x^2-y^2-y",
                       [](double x, double y) { return x * x - y * y - y; }),
      dop::ScalarField("exp(x)sin(y)",
                       [](double x, double y) { return std::exp(x) * std::sin(y); }),
      dop::ScalarField("|z-(2,2)|^(8/9)", [q](double x, double y) {
        return std::pow(std::hypot(x - 2.0, y - 2.0), q);
      }),
  };
}

}  // namespace bench

int cmd_bench(const dop::RunConfig& config) {
  dop::RunConfig c = config;
  c.h = bench_default_h(config);
  c.collar = bench_default_collar(config);

  dop::SolveOptions options;
  options.tol = c.tolerance;
  options.max_iterations = c.max_iterations;
  options.threads = c.threads;

  std::vector<std::string> manifest;
  if (c.bench_quick) {
    manifest = {"harmonic_quadratic_p2", "harmonic_expsin_p2", "try1_p2"};
  } else {
    manifest = dop::builtin_dataset_names();
  }

  // Radius table.
  std::vector<dop::BenchRow> rows;
  for (int m : {15, 10, 5, 3}) {
    const dop::Mesh mesh = dop::build_mesh(c.h, c.a, c.collar, m * c.h);
    dop::BenchRow row{m, mesh.stencil_size(), 0.0, 0.0,
                      std::nan(""), std::nan("")};
    long solves = 0;
    for (const std::string& name : manifest) {
      const dop::ProblemSpec spec = dop::builtin_dataset(name);
      validate_and_warn(spec, mesh);
      auto [u, rep] =
          dop::solve_bracket(mesh, dop::coefficients(spec.p), spec, options);
      row.runtime_s += rep.wall_time_s;
      row.iterations += static_cast<double>(rep.iterations);
      ++solves;
      if (name == "harmonic_expsin_p2") {
        row.error1 = dop::known_solution_error(u, spec.f, mesh);
      } else if (name == "harmonic_quadratic_p2") {
        row.error2 = dop::known_solution_error(u, spec.f, mesh);
      }
      std::cout << "bench radius " << m << " " << name << ": " << rep.iterations
                << " sweeps, " << rep.wall_time_s << " s\n";
    }
    row.runtime_s /= static_cast<double>(solves);
    row.iterations /= static_cast<double>(solves);
    rows.push_back(row);
  }

  // p-sweep on a fixed coarse mesh (radius 3).
  const dop::Mesh sweep_mesh = dop::build_mesh(0.1, 1.0, 0.4, 0.3);
  const auto bcs = bench::boundary_conditions();
  const std::vector<double> ps =
      c.bench_quick ? std::vector<double>{3, 100}
                    : std::vector<double>{3, 4, 5, 10, 25, 50, 100};
  const std::size_t n_bcs = c.bench_quick ? 1 : bcs.size();

  std::vector<dop::PsweepRow> sweep;
  for (double p : ps) {
    dop::PsweepRow row{p, 0, 0, 0};
    for (int obstacles = 0; obstacles < 3; ++obstacles) {
      double total = 0;
      for (std::size_t b = 0; b < n_bcs; ++b) {
        dop::ProblemSpec spec;
        spec.p = p;
        spec.f = bcs[b];
        spec.psi1 = obstacles >= 1 ? bench::lower_bumps()
                                   : dop::ScalarField::constant(-10.0);
        spec.psi2 = obstacles >= 2 ? bench::upper_paraboloids()
                                   : dop::ScalarField::constant(10.0);
        auto [u, rep] = dop::solve_bracket(sweep_mesh, dop::coefficients(p),
                                           spec, options);
        total += static_cast<double>(rep.iterations);
      }
      const double mean = total / static_cast<double>(n_bcs);
      if (obstacles == 0) row.no_obstacle = mean;
      else if (obstacles == 1) row.one_obstacle = mean;
      else row.two_obstacles = mean;
    }
    std::cout << "bench p=" << p << ": iterations " << row.no_obstacle << " / "
              << row.one_obstacle << " / " << row.two_obstacles << "\n";
    sweep.push_back(row);
  }

  const std::filesystem::path out(c.out_dir);
  dop::write_bench_csv(out / "bench.csv", rows);
  dop::write_psweep_csv(out / "psweep.csv", sweep);

  json j;
  j["version"] = dop::kVersion;
  j["command"] = c.command;
  j["config"] = config_echo(c);
  json jrows = json::array();
  for (const auto& r : rows) {
    jrows.push_back({{"radius_units", r.radius_units},
                     {"k", r.k},
                     {"runtime_s", r.runtime_s},
                     {"iterations", r.iterations},
                     {"error1", r.error1},
                     {"error2", r.error2}});
  }
  j["bench"] = jrows;
  json jsweep = json::array();
  for (const auto& r : sweep) {
    jsweep.push_back({{"p", r.p},
                      {"no_obstacle", r.no_obstacle},
                      {"one_obstacle", r.one_obstacle},
                      {"two_obstacles", r.two_obstacles}});
  }
  j["psweep"] = jsweep;
  dop::write_report_json(out / "report.json", j);
  return 0;
}

int dispatch(const std::string& command, const std::optional<std::string>& file,
             const std::vector<std::string>& sets,
             const std::optional<std::string>& out_dir) {
  dop::RunConfig c = dop::parse_config(command, file, sets);
  if (out_dir) c.out_dir = *out_dir;
  if (command == "solve") return cmd_solve(c);
  if (command == "simulate") return cmd_simulate(c);
  if (command == "validate") return cmd_validate(c);
  return cmd_bench(c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-obstacle p-Laplace solver and tug-of-war simulator"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::vector<std::string> sets;

  std::string chosen;
  for (const char* name : {"solve", "simulate", "validate", "bench"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "config file (key = value lines)");
    sub->add_option("--set", sets, "override, key=value (repeatable)")
        ->take_all();
    sub->add_option("--out", out_dir, "output directory");
    sub->callback([&chosen, name] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return dispatch(chosen, config_path, sets, out_dir);
  } catch (const dop::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::UnknownDataset& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::ExprParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::NonPositiveSpacing& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::RadiusExceedsCollar& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::NonIntegerRadius& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::ExponentOutOfRange& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::EvalDomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dop::MaxIterationsExceeded& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return 3;
  } catch (const dop::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
