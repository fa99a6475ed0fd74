#include "dop/fields.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "dop/expr.hpp"

namespace dop {

ScalarField::ScalarField()
    : name_("0"), fn_([](double, double) { return 0.0; }) {}

ScalarField::ScalarField(std::string name, std::function<double(double, double)> fn)
    : name_(std::move(name)), fn_(std::move(fn)) {}

ScalarField ScalarField::constant(double c) {
  return ScalarField(std::to_string(c), [c](double, double) { return c; });
}

ScalarField ScalarField::parse(std::string name, const std::string& expression) {
  auto ast = std::make_shared<const expr::Node>(expr::parse(expression));
  return ScalarField(std::move(name),
                     [ast](double x, double y) { return ast->eval(x, y); });
}

double eval_field(const ScalarField& field, double x, double y) {
  const double v = field(x, y);
  if (!std::isfinite(v)) {
    throw EvalDomainError("field '" + field.name() + "' is not finite at (" +
                          std::to_string(x) + ", " + std::to_string(y) + ")");
  }
  return v;
}

ScalarField shifted(const ScalarField& field, double c) {
  return ScalarField(field.name() + "+" + std::to_string(c),
                     [field, c](double x, double y) { return field(x, y) + c; });
}

namespace {

double sq(double t) { return t * t; }

// Obstacles of the two-obstacle benchmark problem (figure-1 data).
double try1_psi1(double x, double y) {
  double v = 1.0 - 33.0 * sq(x + 0.5) - 27.0 * sq(y + 0.1);
  v = std::max(v, 0.5 - 40.0 * sq(x + 0.3) - 34.0 * sq(y + 0.4));
  v = std::max(v, 0.5 - 36.0 * sq(x - 0.6) - 51.0 * sq(y - 0.7));
  return std::max(v, -2.0);
}

double try1_psi2(double x, double y) {
  double v = 33.0 * sq(x + 0.6) + 27.0 * sq(y - 0.6) - 1.0;
  v = std::min(v, 33.0 * sq(x - 0.6) + 27.0 * sq(y + 0.6) - 1.0);
  return std::min(v, 2.0);
}

// Case (a): smooth obstacles, parabolic boundary condition.
double case_a_psi1(double x, double y) {
  double v = 2.0 - 33.0 * sq(x + 0.5) - 27.0 * sq(y + 0.1);
  v = std::max(v, 1.5 - 40.0 * sq(x + 0.3) - 34.0 * sq(y + 0.4));
  v = std::max(v, 2.5 - 36.0 * sq(x - 0.6) - 51.0 * sq(y - 0.7));
  return std::max(v, -3.0);
}

double case_a_psi2(double x, double y) {
  double v = 33.0 * sq(x + 0.6) + 27.0 * sq(y - 0.6) - 3.0;
  v = std::min(v, 33.0 * sq(x - 0.6) + 27.0 * sq(y + 0.6) - 3.0);
  return std::min(v, 3.0);
}

// Case (b): Lipschitz tent obstacle. The closed band |y| <= 0.5 wins at the
// shared boundary; the printed outer-band formulas extend past |y| = 1
// unchanged (the collar needs values there).
double case_b_psi1(double x, double y) {
  const double ridge = 2.0 - 17.0 * std::abs(x - 0.5);
  if (std::abs(y) <= 0.5) return ridge;
  if (y < -0.5) return ridge - 17.0 * std::abs(y + 0.5);
  return ridge - 17.0 * std::abs(y - 0.5);
}

double case_b_psi2(double x, double y) {
  return -4.0 + 12.0 * std::abs(y + 0.2) + 15.0 * std::abs(x - 0.7);
}

ScalarField inactive_lower() {
  return ScalarField("-M", [](double, double) { return -kInactiveObstacle; });
}
ScalarField inactive_upper() {
  return ScalarField("+M", [](double, double) { return kInactiveObstacle; });
}

ProblemSpec make_try1(double p, std::string name) {
  ProblemSpec s;
  s.p = p;
  s.psi1 = ScalarField("try1.psi1", try1_psi1);
  s.psi2 = ScalarField("try1.psi2", try1_psi2);
  s.f = ScalarField("0", [](double, double) { return 0.0; });
  s.dataset = std::move(name);
  return s;
}

}  // namespace

ProblemSpec builtin_dataset(const std::string& name) {
  if (name == "try1_p2") return make_try1(2.0, name);
  if (name == "try1_p100") return make_try1(100.0, name);

  if (name == "case_a_p10" || name == "case_c_p10") {
    ProblemSpec s;
    s.p = 10.0;
    s.psi1 = ScalarField("case_a.psi1", case_a_psi1);
    s.psi2 = ScalarField("case_a.psi2", case_a_psi2);
    if (name == "case_a_p10") {
      s.f = ScalarField("1-2y^2", [](double, double y) { return 1.0 - 2.0 * y * y; });
    } else {
      s.f = ScalarField("2-(x+y)^2", [](double x, double y) { return 2.0 - sq(x + y); });
    }
    s.dataset = name;
    return s;
  }

  if (name == "case_b_p10") {
    ProblemSpec s;
    s.p = 10.0;
    s.psi1 = ScalarField("case_b.psi1", case_b_psi1);
    s.psi2 = ScalarField("case_b.psi2", case_b_psi2);
    s.f = ScalarField("0", [](double, double) { return 0.0; });
    s.dataset = name;
    return s;
  }

  if (name == "harmonic_quadratic_p2") {
    ProblemSpec s;
    s.p = 2.0;
    s.psi1 = inactive_lower();
    s.psi2 = inactive_upper();
    s.f = ScalarField("x^2-y^2-y", [](double x, double y) { return x * x - y * y - y; });
    s.dataset = name;
    return s;
  }

  if (name == "harmonic_expsin_p2") {
    ProblemSpec s;
    s.p = 2.0;
    s.psi1 = inactive_lower();
    s.psi2 = inactive_upper();
    s.f = ScalarField("exp(x)sin(y)",
                      [](double x, double y) { return std::exp(x) * std::sin(y); });
    s.dataset = name;
    return s;
  }

  if (name == "fundamental_pN") {
    // p-harmonic fundamental-solution profile centered outside X.
    const double p = 10.0;
    const double q = (p - 2.0) / (p - 1.0);
    ProblemSpec s;
    s.p = p;
    s.psi1 = inactive_lower();
    s.psi2 = inactive_upper();
    s.f = ScalarField("|z-(2,2)|^((p-2)/(p-1))", [q](double x, double y) {
      return std::pow(std::hypot(x - 2.0, y - 2.0), q);
    });
    s.dataset = name;
    return s;
  }

  throw UnknownDataset("unknown dataset '" + name + "'");
}

const std::vector<std::string>& builtin_dataset_names() {
  static const std::vector<std::string> names = {
      "try1_p2",  "try1_p100",        "case_a_p10",
      "case_b_p10", "case_c_p10",     "harmonic_quadratic_p2",
      "harmonic_expsin_p2", "fundamental_pN",
  };
  return names;
}

ValidationReport validate_problem(const ProblemSpec& spec, const Mesh& mesh) {
  ValidationReport report;
  if (!(spec.p >= 2.0) || !std::isfinite(spec.p)) {
    report.violations.push_back({ViolationKind::ExponentOutOfRange, -1, 0, 0, spec.p});
  }
  const long n = mesh.node_count();
  for (long node = 0; node < n; ++node) {
    const Point pt = mesh.coord(node);
    const double p1 = eval_field(spec.psi1, pt.x, pt.y);
    const double p2 = eval_field(spec.psi2, pt.x, pt.y);
    if (p1 > p2) {
      report.violations.push_back({ViolationKind::ObstacleOrder, node, p1, p2, 0});
    }
    if (!mesh.is_interior(node)) {
      const double fv = eval_field(spec.f, pt.x, pt.y);
      if (fv < p1 || fv > p2) {
        report.violations.push_back({ViolationKind::BoundaryOrder, node, p1, p2, fv});
      }
    }
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace dop
