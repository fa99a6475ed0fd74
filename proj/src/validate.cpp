#include "dop/validate.hpp"

#include <cmath>

namespace dop {

double p_laplace_residual(const ScalarField& field, double x, double y,
                          double p, double fd_step) {
  if (!(fd_step > 0.0)) {
    throw Error("p_laplace_residual: fd_step must be positive");
  }
  const double d = fd_step;
  const auto e = [&](double px, double py) { return eval_field(field, px, py); };

  const double c = e(x, y);
  const double xp = e(x + d, y), xm = e(x - d, y);
  const double yp = e(x, y + d), ym = e(x, y - d);

  const double ux = (xp - xm) / (2.0 * d);
  const double uy = (yp - ym) / (2.0 * d);
  const double uxx = (xp - 2.0 * c + xm) / (d * d);
  const double uyy = (yp - 2.0 * c + ym) / (d * d);
  const double uxy =
      (e(x + d, y + d) - e(x + d, y - d) - e(x - d, y + d) + e(x - d, y - d)) /
      (4.0 * d * d);

  const double gn = std::hypot(ux, uy);
  if (gn < 1e3 * d * d) {
    throw DegenerateGradient("p_laplace_residual: |grad u| = " +
                             std::to_string(gn) + " too small at the point");
  }
  const double gx = ux / gn, gy = uy / gn;
  const double dinf = uxx * gx * gx + 2.0 * uxy * gx * gy + uyy * gy * gy;
  return (p - 2.0) * dinf + (uxx + uyy);
}

double known_solution_error(const GridFunction& u, const ScalarField& exact,
                            const Mesh& mesh) {
  if (u.size() != static_cast<std::size_t>(mesh.node_count())) {
    throw ShapeMismatch("grid function does not match the mesh");
  }
  double err = 0.0;
  for (long node : mesh.interior_nodes()) {
    const Point pt = mesh.coord(node);
    err = std::max(err, std::abs(u[static_cast<std::size_t>(node)] -
                                 eval_field(exact, pt.x, pt.y)));
  }
  return err;
}

RefinementReport refinement_study(const ProblemSpec& spec, double h,
                                  const std::vector<int>& radii_units,
                                  double tol, double a, double collar,
                                  int threads) {
  if (radii_units.empty()) {
    throw Error("refinement_study: need at least one radius");
  }
  for (std::size_t t = 1; t < radii_units.size(); ++t) {
    if (radii_units[t] >= radii_units[t - 1]) {
      throw Error("refinement_study: radii must be strictly decreasing");
    }
  }

  const Coefficients coeff = coefficients(spec.p);
  RefinementReport report;
  report.radii = radii_units;

  SolveOptions options;
  options.tol = tol;
  options.threads = threads;

  for (int m : radii_units) {
    const Mesh mesh = build_mesh(h, a, collar, m * h);
    auto [u, solve_report] = solve_bracket(mesh, coeff, spec, options);
    if (report.probe_nodes.empty()) {
      report.probe_nodes = mesh.interior_nodes();
    }
    GridFunction probe;
    probe.reserve(report.probe_nodes.size());
    for (long node : report.probe_nodes) {
      probe.push_back(u[static_cast<std::size_t>(node)]);
    }
    report.probe_values.push_back(std::move(probe));
  }

  for (std::size_t t = 1; t < report.probe_values.size(); ++t) {
    double diff = 0.0;
    for (std::size_t s = 0; s < report.probe_nodes.size(); ++s) {
      diff = std::max(diff, std::abs(report.probe_values[t][s] -
                                     report.probe_values[t - 1][s]));
    }
    report.successive_diffs.push_back(diff);
  }
  return report;
}

}  // namespace dop
