#pragma once

// The discrete min-max operator and its two-sided bracketing solver.
//
// For an interior node p with stencil {p_1..p_k},
//   vbar(p) = (alpha/2) max_j v(p_j) + (alpha/2) min_j v(p_j) + (beta/k) sum_j v(p_j)
//   Tbar v(p) = max{ psi1(p), min{ psi2(p), vbar(p) } },
// and Tbar v = F on collar nodes. Sweeps are synchronous (whole-field map);
// iterating from the lower obstacle upward and the upper obstacle downward
// yields monotone brackets whose gap certifies the accuracy of the returned
// midpoint.

#include <functional>
#include <utility>
#include <vector>

#include "dop/fields.hpp"
#include "dop/mesh.hpp"

namespace dop {

struct Coefficients {
  double alpha;  // (p-2)/(p+N)
  double beta;   // 1 - alpha
  double p;
  int dim;
};

// Throws ExponentOutOfRange unless 2 <= p < inf and dim >= 1.
Coefficients coefficients(double p, int dim = 2);

// One value per mesh node, aligned with the mesh ordering.
using GridFunction = std::vector<double>;

GridFunction sample_field(const ScalarField& field, const Mesh& mesh);

// The operator with node-wise field data sampled once up front.
class TbarOperator {
 public:
  TbarOperator(const Mesh& mesh, const Coefficients& coeff, const ProblemSpec& spec);

  // out must not alias in. Collar nodes of out are set to F.
  void apply(const GridFunction& in, GridFunction& out, int threads = 1) const;
  GridFunction apply(const GridFunction& in, int threads = 1) const;

  const Mesh& mesh() const { return *mesh_; }
  const Coefficients& coeff() const { return coeff_; }
  const GridFunction& lower_obstacle() const { return psi1_; }
  const GridFunction& upper_obstacle() const { return psi2_; }
  const GridFunction& boundary_values() const { return f_; }

 private:
  const Mesh* mesh_;
  Coefficients coeff_;
  GridFunction psi1_, psi2_, f_;
};

// One-shot form; validates that v is mesh-aligned and finite.
GridFunction apply_Tbar(const Mesh& mesh, const Coefficients& coeff,
                        const ProblemSpec& spec, const GridFunction& v);

struct SolveReport {
  long iterations = 0;
  double final_gap = 0;
  double residual = 0;
  double wall_time_s = 0;
  long stencil_size = 0;
  bool converged = false;
};

struct SolveOptions {
  double tol = 1e-3;
  long max_iterations = 200000;
  int threads = 1;  // 0 = hardware concurrency
};

struct MaxIterationsExceeded : Error {
  MaxIterationsExceeded(std::string what, SolveReport r)
      : Error(std::move(what)), report(r) {}
  SolveReport report;
};

// Called after every sweep with the current bracket pair.
using SweepObserver = std::function<void(long iteration, double gap,
                                         const GridFunction& lower,
                                         const GridFunction& upper)>;

// Iterates lower/upper brackets until max|upper - lower| < tol and returns
// the midpoint (lower+upper)/2 with a report; the report's residual is
// recomputed once at the midpoint. Throws MaxIterationsExceeded (carrying
// the report) if the gap does not close.
std::pair<GridFunction, SolveReport> solve_bracket(
    const Mesh& mesh, const Coefficients& coeff, const ProblemSpec& spec,
    const SolveOptions& options, const SweepObserver& observer = {});

std::pair<GridFunction, SolveReport> solve_bracket(
    const Mesh& mesh, const Coefficients& coeff, const ProblemSpec& spec,
    double tol, long max_iterations);

// max over interior nodes of |Tbar u - u|: how far u is from satisfying
// the dynamic programming principle.
double residual(const Mesh& mesh, const Coefficients& coeff,
                const ProblemSpec& spec, const GridFunction& u);

}  // namespace dop
