#pragma once

// Scalar data for the obstacle problem: the obstacles Psi1, Psi2 and the
// boundary datum F, as pure evaluatable fields. Ships the datasets used in
// the reference experiments plus harmonic / p-harmonic oracles.

#include <functional>
#include <string>
#include <vector>

#include "dop/errors.hpp"
#include "dop/mesh.hpp"

namespace dop {

class ScalarField {
 public:
  ScalarField();  // the zero field
  ScalarField(std::string name, std::function<double(double, double)> fn);

  static ScalarField constant(double c);
  // Builds a field from the expression language (see expr.hpp).
  static ScalarField parse(std::string name, const std::string& expression);

  // Unchecked evaluation; pure and reentrant.
  double operator()(double x, double y) const { return fn_(x, y); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<double(double, double)> fn_;
};

// Checked evaluation: throws EvalDomainError if the result is not finite.
double eval_field(const ScalarField& field, double x, double y);

// The same field shifted by a constant: (f + c)(x,y) = f(x,y) + c.
ScalarField shifted(const ScalarField& field, double c);

struct ProblemSpec {
  double p = 2.0;
  ScalarField psi1;
  ScalarField psi2;
  ScalarField f;
  std::string dataset;  // empty for inline-defined problems
};

// Obstacle level used by datasets with "inactive" obstacles: far outside
// every dataset's value range, small enough to stay exact in the clamp.
inline constexpr double kInactiveObstacle = 1e6;

ProblemSpec builtin_dataset(const std::string& name);  // throws UnknownDataset
const std::vector<std::string>& builtin_dataset_names();

enum class ViolationKind { ObstacleOrder, BoundaryOrder, ExponentOutOfRange };

struct Violation {
  ViolationKind kind;
  long node;  // -1 for ExponentOutOfRange
  double psi1, psi2, f;
};

struct ValidationReport {
  bool pass = true;
  std::vector<Violation> violations;
};

// Node-wise admissibility check: psi1 <= psi2 on all mesh
// nodes, psi1 <= f <= psi2 on collar nodes, p in [2, inf).
ValidationReport validate_problem(const ProblemSpec& spec, const Mesh& mesh);

}  // namespace dop
