#pragma once

// Independent oracles: finite-difference p-Laplace residual for candidate
// exact solutions, error norms against known solutions, and an
// eps-refinement study. Deliberately never touches the operator code, so
// known-solution acceptance cross-checks two unrelated paths.

#include <vector>

#include "dop/dpp.hpp"
#include "dop/fields.hpp"
#include "dop/mesh.hpp"

namespace dop {

// Normalized residual (p-2)*Dinf u + Lap u by central differences; the
// |grad u|^(p-2) prefactor is dropped so zero-gradient points surface as
// DegenerateGradient instead of masking the test.
double p_laplace_residual(const ScalarField& field, double x, double y,
                          double p, double fd_step = 1e-4);

// max over interior nodes of |u - exact|.
double known_solution_error(const GridFunction& u, const ScalarField& exact,
                            const Mesh& mesh);

struct RefinementReport {
  std::vector<int> radii;                    // mesh units, strictly decreasing
  std::vector<long> probe_nodes;             // shared lattice, interior
  std::vector<GridFunction> probe_values;    // per radius, aligned with probe_nodes
  std::vector<double> successive_diffs;      // sup-norm between consecutive radii
};

// Solves the problem at each radius on the same lattice h and reports
// sup-norm differences between consecutive solutions on the shared
// interior probe set.
RefinementReport refinement_study(const ProblemSpec& spec, double h,
                                  const std::vector<int>& radii_units,
                                  double tol, double a = 1.0,
                                  double collar = 0.2, int threads = 1);

}  // namespace dop
