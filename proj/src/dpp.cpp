#include "dop/dpp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "dop/parallel.hpp"

namespace dop {

Coefficients coefficients(double p, int dim) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw ExponentOutOfRange("exponent p must satisfy 2 <= p < infinity");
  }
  if (dim < 1) {
    throw ExponentOutOfRange("dimension must be >= 1");
  }
  const double alpha = (p - 2.0) / (p + dim);
  return {alpha, 1.0 - alpha, p, dim};
}

GridFunction sample_field(const ScalarField& field, const Mesh& mesh) {
  GridFunction out(static_cast<std::size_t>(mesh.node_count()));
  for (long node = 0; node < mesh.node_count(); ++node) {
    const Point pt = mesh.coord(node);
    out[static_cast<std::size_t>(node)] = eval_field(field, pt.x, pt.y);
  }
  return out;
}

TbarOperator::TbarOperator(const Mesh& mesh, const Coefficients& coeff,
                           const ProblemSpec& spec)
    : mesh_(&mesh),
      coeff_(coeff),
      psi1_(sample_field(spec.psi1, mesh)),
      psi2_(sample_field(spec.psi2, mesh)),
      f_(sample_field(spec.f, mesh)) {}

namespace {

// Stencil reduction over row spans. Summation order is ascending node
// index, which keeps sweeps monotone in their inputs even in floating
// point (the bracket invariants rely on this).
template <bool WithMinMax>
inline void reduce_stencil(const double* v, long node, long side,
                           const std::vector<StencilRow>& rows, double& sum,
                           double& mn, double& mx) {
  double s = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const StencilRow& row : rows) {
    const double* base = v + node + static_cast<long>(row.dj) * side;
    for (int di = row.di_lo; di <= row.di_hi; ++di) {
      const double val = base[di];
      s += val;
      if constexpr (WithMinMax) {
        lo = std::min(lo, val);
        hi = std::max(hi, val);
      }
    }
  }
  sum = s;
  mn = lo;
  mx = hi;
}

}  // namespace

void TbarOperator::apply(const GridFunction& in, GridFunction& out, int threads) const {
  const Mesh& mesh = *mesh_;
  const std::size_t count = static_cast<std::size_t>(mesh.node_count());
  if (in.size() != count) {
    throw ShapeMismatch("grid function does not match the mesh");
  }
  out.resize(count);

  const long side = mesh.side();
  const auto& rows = mesh.stencil_rows();
  const auto& interior = mesh.interior_nodes();
  const double half_alpha = 0.5 * coeff_.alpha;
  const double beta_over_k = coeff_.beta / static_cast<double>(mesh.stencil_size());
  const bool with_minmax = coeff_.alpha > 0.0;
  const double* v = in.data();

  // Collar nodes carry the boundary datum.
  parallel_for(mesh.node_count(), threads, [&](long lo, long hi) {
    for (long node = lo; node < hi; ++node) {
      if (!mesh.is_interior(node)) {
        out[static_cast<std::size_t>(node)] = f_[static_cast<std::size_t>(node)];
      }
    }
  });

  parallel_for(static_cast<long>(interior.size()), threads, [&](long lo, long hi) {
    for (long t = lo; t < hi; ++t) {
      const long node = interior[static_cast<std::size_t>(t)];
      double sum, mn, mx;
      double vbar;
      if (with_minmax) {
        reduce_stencil<true>(v, node, side, rows, sum, mn, mx);
        vbar = half_alpha * mx + half_alpha * mn + beta_over_k * sum;
      } else {
        reduce_stencil<false>(v, node, side, rows, sum, mn, mx);
        vbar = beta_over_k * sum;
      }
      const std::size_t u = static_cast<std::size_t>(node);
      out[u] = std::max(psi1_[u], std::min(psi2_[u], vbar));
    }
  });
}

GridFunction TbarOperator::apply(const GridFunction& in, int threads) const {
  GridFunction out;
  apply(in, out, threads);
  return out;
}

namespace {

void require_finite(const GridFunction& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw NonFiniteInput(std::string(what) + " contains a non-finite value");
    }
  }
}

}  // namespace

GridFunction apply_Tbar(const Mesh& mesh, const Coefficients& coeff,
                        const ProblemSpec& spec, const GridFunction& v) {
  if (v.size() != static_cast<std::size_t>(mesh.node_count())) {
    throw ShapeMismatch("grid function does not match the mesh");
  }
  require_finite(v, "input grid function");
  TbarOperator op(mesh, coeff, spec);
  return op.apply(v);
}

std::pair<GridFunction, SolveReport> solve_bracket(
    const Mesh& mesh, const Coefficients& coeff, const ProblemSpec& spec,
    const SolveOptions& options, const SweepObserver& observer) {
  if (!(options.tol > 0.0)) {
    throw Error("solve_bracket: tolerance must be positive");
  }
  const auto t0 = std::chrono::steady_clock::now();

  TbarOperator op(mesh, coeff, spec);
  require_finite(op.lower_obstacle(), "psi1 samples");
  require_finite(op.upper_obstacle(), "psi2 samples");
  require_finite(op.boundary_values(), "boundary samples");

  const std::size_t count = static_cast<std::size_t>(mesh.node_count());
  GridFunction lower(count), upper(count);
  for (std::size_t u = 0; u < count; ++u) {
    const bool interior = mesh.is_interior(static_cast<long>(u));
    lower[u] = interior ? op.lower_obstacle()[u] : op.boundary_values()[u];
    upper[u] = interior ? op.upper_obstacle()[u] : op.boundary_values()[u];
  }

  GridFunction next_lower(count), next_upper(count);
  SolveReport report;
  report.stencil_size = mesh.stencil_size();

  double gap = std::numeric_limits<double>::infinity();
  long iteration = 0;
  while (iteration < options.max_iterations) {
    op.apply(lower, next_lower, options.threads);
    op.apply(upper, next_upper, options.threads);
    lower.swap(next_lower);
    upper.swap(next_upper);
    ++iteration;

    gap = 0.0;
    for (std::size_t u = 0; u < count; ++u) {
      gap = std::max(gap, std::abs(upper[u] - lower[u]));
    }
    if (observer) observer(iteration, gap, lower, upper);
    if (gap < options.tol) break;
  }

  report.iterations = iteration;
  report.final_gap = gap;
  report.converged = gap < options.tol;

  GridFunction mid(count);
  for (std::size_t u = 0; u < count; ++u) mid[u] = 0.5 * (lower[u] + upper[u]);

  op.apply(mid, next_lower, options.threads);
  double res = 0.0;
  for (long node : mesh.interior_nodes()) {
    const std::size_t u = static_cast<std::size_t>(node);
    res = std::max(res, std::abs(next_lower[u] - mid[u]));
  }
  report.residual = res;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!report.converged) {
    throw MaxIterationsExceeded(
        "solve_bracket: gap " + std::to_string(gap) + " still above tol after " +
            std::to_string(iteration) + " sweeps",
        report);
  }
  return {std::move(mid), report};
}

std::pair<GridFunction, SolveReport> solve_bracket(
    const Mesh& mesh, const Coefficients& coeff, const ProblemSpec& spec,
    double tol, long max_iterations) {
  SolveOptions options;
  options.tol = tol;
  options.max_iterations = max_iterations;
  return solve_bracket(mesh, coeff, spec, options);
}

double residual(const Mesh& mesh, const Coefficients& coeff,
                const ProblemSpec& spec, const GridFunction& u) {
  if (u.size() != static_cast<std::size_t>(mesh.node_count())) {
    throw ShapeMismatch("grid function does not match the mesh");
  }
  require_finite(u, "input grid function");
  TbarOperator op(mesh, coeff, spec);
  GridFunction tu = op.apply(u);
  double res = 0.0;
  for (long node : mesh.interior_nodes()) {
    const std::size_t s = static_cast<std::size_t>(node);
    res = std::max(res, std::abs(tu[s] - u[s]));
  }
  return res;
}

}  // namespace dop
