// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria. An optional list of criterion ids runs a
// subset. Worker count comes from DPP_THREADS (default: all cores).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dop/dpp.hpp"
#include "dop/fields.hpp"
#include "dop/game.hpp"
#include "dop/mesh.hpp"
#include "dop/rng.hpp"
#include "dop/validate.hpp"
#include "test_support.hpp"

using namespace dop;

namespace {

int worker_threads() {
  if (const char* env = std::getenv("DPP_THREADS")) {
    const int t = std::atoi(env);
    return t >= 0 ? t : 0;
  }
  return 0;  // auto
}

// ---- 1. stencil counts ----------------------------------------------------
bool stencil_counts(std::string& detail) {
  const struct { int m; long k; } table[] = {{3, 29}, {5, 81}, {10, 317}, {15, 709}};
  std::ostringstream msg;
  bool ok = true;
  for (const auto& row : table) {
    const double h = 0.19 / row.m;
    const Mesh mesh = build_mesh(h, 1.0, 0.2, row.m * h);
    msg << "m=" << row.m << ":k=" << mesh.stencil_size() << " ";
    ok = ok && mesh.stencil_size() == row.k;
  }
  detail = msg.str();
  return ok;
}

// ---- 2/3. known-solution reproduction --------------------------------------
bool known_solution(const char* dataset, double bound, std::string& detail) {
  const double h = 0.0125;  // eps = 15h = 0.1875 < 0.2, interior 159x159
  const Mesh mesh = build_mesh(h, 1.0, 0.2, 15 * h);
  const ProblemSpec spec = builtin_dataset(dataset);
  SolveOptions options;
  options.tol = 1e-8;
  options.threads = worker_threads();
  auto [u, report] = solve_bracket(mesh, coefficients(spec.p), spec, options);
  const double err = known_solution_error(u, spec.f, mesh);
  std::ostringstream msg;
  msg << "max error " << err << " (bound " << bound << "), " << report.iterations
      << " sweeps";
  detail = msg.str();
  return report.converged && err <= bound;
}

// ---- 4. bracket invariants -------------------------------------------------
bool bracket_invariants(std::string& detail) {
  const Mesh mesh = build_mesh(0.095, 1.0, 0.2, 2 * 0.095);  // 21x21 interior
  Rng rng(20240401);
  long violations = 0;
  long sweeps_checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double p = 2.0 + 48.0 * rng.uniform();
    const ProblemSpec spec = testsup::random_valid_spec(rng, p);
    const Coefficients coeff = coefficients(p);
    const TbarOperator op(mesh, coeff, spec);
    GridFunction prev_lower, prev_upper;
    SolveOptions options;
    options.tol = 1e-4;
    options.max_iterations = 500000;
    solve_bracket(mesh, coeff, spec, options,
                  [&](long, double, const GridFunction& lower,
                      const GridFunction& upper) {
                    ++sweeps_checked;
                    for (std::size_t s = 0; s < lower.size(); ++s) {
                      if (!(lower[s] <= upper[s])) ++violations;
                    }
                    if (!prev_lower.empty()) {
                      for (std::size_t s = 0; s < lower.size(); ++s) {
                        if (lower[s] < prev_lower[s]) ++violations;
                        if (upper[s] > prev_upper[s]) ++violations;
                      }
                    }
                    for (long node : mesh.interior_nodes()) {
                      const std::size_t s = static_cast<std::size_t>(node);
                      if (!(op.lower_obstacle()[s] <= lower[s] &&
                            lower[s] <= op.upper_obstacle()[s]))
                        ++violations;
                      if (!(op.lower_obstacle()[s] <= upper[s] &&
                            upper[s] <= op.upper_obstacle()[s]))
                        ++violations;
                    }
                    prev_lower = lower;
                    prev_upper = upper;
                  });
    prev_lower.clear();
    prev_upper.clear();
  }
  std::ostringstream msg;
  msg << "50 specs, " << sweeps_checked << " sweeps checked, " << violations
      << " violations";
  detail = msg.str();
  return violations == 0;
}

// ---- 5. comparison principle ----------------------------------------------
bool comparison_principle(std::string& detail) {
  const Mesh mesh = testsup::toy_mesh();
  Rng rng(555);
  const double tol = 1e-6;
  long violations = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const double p = 2.0 + 28.0 * rng.uniform();
    const ProblemSpec base = testsup::random_valid_spec(rng, p);
    const ProblemSpec dom = testsup::dominating_spec(base, rng);
    auto [u, ru] = solve_bracket(mesh, coefficients(p), base, tol, 500000);
    auto [w, rw] = solve_bracket(mesh, coefficients(p), dom, tol, 500000);
    for (std::size_t s = 0; s < u.size(); ++s) {
      if (!(u[s] <= w[s] + 2.0 * tol)) ++violations;
    }
  }
  std::ostringstream msg;
  msg << "25 ordered pairs, " << violations << " violations";
  detail = msg.str();
  return violations == 0;
}

// ---- 6. operator properties -------------------------------------------------
bool operator_properties(std::string& detail) {
  const Mesh mesh = build_mesh(0.2, 1.0, 0.5, 0.4);
  Rng rng(808);
  long violations = 0;

  const ProblemSpec spec = testsup::random_valid_spec(rng, 12.0);
  const TbarOperator op(mesh, coefficients(12.0), spec);
  const std::size_t count = static_cast<std::size_t>(mesh.node_count());
  for (int trial = 0; trial < 100; ++trial) {
    GridFunction v(count), w(count);
    for (std::size_t s = 0; s < count; ++s) {
      v[s] = 4.0 * rng.uniform() - 2.0;
      w[s] = v[s] + rng.uniform();
    }
    const GridFunction tv = op.apply(v);
    const GridFunction tw = op.apply(w);
    double dist = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
      if (!(tv[s] <= tw[s])) ++violations;  // monotone
      dist = std::max(dist, std::abs(v[s] - w[s]));
    }
    for (long node : mesh.interior_nodes()) {
      const std::size_t s = static_cast<std::size_t>(node);
      if (!(std::abs(tv[s] - tw[s]) <= dist + 1e-12)) ++violations;  // 1-Lipschitz
    }
  }

  // translation invariance of the solve
  const Mesh toy = testsup::toy_mesh();
  const ProblemSpec base = testsup::random_valid_spec(rng, 7.0);
  const double c = 0.37;
  ProblemSpec moved;
  moved.p = base.p;
  moved.psi1 = shifted(base.psi1, c);
  moved.psi2 = shifted(base.psi2, c);
  moved.f = shifted(base.f, c);
  auto [u, r1] = solve_bracket(toy, coefficients(base.p), base, 1e-8, 500000);
  auto [s2, r2] = solve_bracket(toy, coefficients(base.p), moved, 1e-8, 500000);
  double shift_err = 0.0;
  for (std::size_t s = 0; s < u.size(); ++s) {
    shift_err = std::max(shift_err, std::abs(s2[s] - (u[s] + c)));
  }
  std::ostringstream msg;
  msg << "100 field pairs, " << violations << " violations; shift error "
      << shift_err;
  detail = msg.str();
  return violations == 0 && shift_err <= 1e-12;
}

// ---- 7. brute-force oracle equivalence --------------------------------------
bool oracle_equivalence(std::string& detail) {
  const Mesh mesh = testsup::toy_mesh();  // 25 interior nodes
  Rng rng(13);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double p = 2.0 + 30.0 * rng.uniform();
    const ProblemSpec spec = testsup::random_valid_spec(rng, p);
    auto [u, report] = solve_bracket(mesh, coefficients(p), spec, 1e-10, 1000000);
    const auto oracle = testsup::oracle_fixed_point(mesh, spec, 2000000, 1e-14);
    for (std::size_t s = 0; s < u.size(); ++s) {
      worst = std::max(worst, std::abs(u[s] - oracle[s]));
    }
  }
  std::ostringstream msg;
  msg << "10 specs, max |solve - oracle| = " << worst;
  detail = msg.str();
  return worst <= 1e-8;
}

// ---- 8. game cross-validation ----------------------------------------------
bool game_cross_validation(std::string& detail) {
  // eps = 3h = 0.3 needs a collar wider than the 0.2 default.
  const double h = 0.1;
  const Mesh mesh = build_mesh(h, 1.0, 0.4, 3 * h);
  const ProblemSpec spec = builtin_dataset("case_b_p10");
  const Coefficients coeff = coefficients(spec.p);
  SolveOptions options;
  options.tol = 1e-6;
  options.threads = worker_threads();
  auto [u, report] = solve_bracket(mesh, coeff, spec, options);

  const Point probes[] = {{0, 0}, {0.5, 0.5}, {-0.5, 0.5}, {0.5, -0.5}, {-0.5, -0.5}};
  EstimateOptions opt;
  opt.runs = 100000;
  opt.seed = 20151101;
  opt.eta_stop = 1e-6;
  opt.threads = worker_threads();

  std::ostringstream msg;
  bool ok = report.converged;
  long cap_hits = 0;
  for (const Point& pt : probes) {
    const long node = mesh.nearest_node(pt.x, pt.y);
    const ValueEstimate est = estimate_value(mesh, coeff, spec, u, node, opt);
    const double uval = u[static_cast<std::size_t>(node)];
    const double err = std::abs(est.mean - uval);
    const double bound = 3.0 * est.std_error + 5e-3;
    cap_hits += est.max_steps_hit;
    msg << "(" << pt.x << "," << pt.y << "): |mc-u|=" << err << " bound=" << bound
        << "; ";
    ok = ok && err <= bound;
  }
  msg << "cap hits " << cap_hits;
  detail = msg.str();
  return ok && cap_hits == 0;
}

// ---- 9. tiny-chain exactness -----------------------------------------------
bool tiny_chain(std::string& detail) {
  const Mesh mesh = build_mesh(0.5, 0.3, 0.6, 0.5);  // one interior node
  ProblemSpec spec;
  spec.p = 2.0;  // beta = 1
  spec.psi1 = ScalarField::constant(-kInactiveObstacle);
  spec.psi2 = ScalarField::constant(kInactiveObstacle);
  spec.f = ScalarField("f", [](double x, double y) { return x + 2.0 * y * y + 0.3; });
  const Coefficients coeff = coefficients(spec.p);
  const long x0 = mesh.index_at(0, 0);

  const auto stencil = stencil_of(mesh, x0);
  double fsum = 0.0;
  for (long member : stencil) {
    if (mesh.is_interior(member)) continue;
    const Point pt = mesh.coord(member);
    fsum += spec.f(pt.x, pt.y);
  }
  const double bk = coeff.beta / static_cast<double>(stencil.size());
  const double exact = bk * fsum / (1.0 - bk);

  const GridFunction zeros(static_cast<std::size_t>(mesh.node_count()), 0.0);
  StopRule off;
  off.stop_I.assign(zeros.size(), 0);
  off.stop_II.assign(zeros.size(), 0);
  const GameContext ctx =
      make_game_context(mesh, coeff, spec, greedy_strategies(mesh, zeros), off);

  const long runs = 100000;
  double sum = 0.0, sumsq = 0.0;
  long cap_hits = 0;
  for (long r = 0; r < runs; ++r) {
    Rng rng(Rng::substream_seed(7, static_cast<std::uint64_t>(r)));
    const GameOutcome out = simulate_run(ctx, x0, rng);
    if (out.capped()) ++cap_hits;
    sum += out.payoff;
    sumsq += out.payoff * out.payoff;
  }
  const double mean = sum / runs;
  const double var = (sumsq - runs * mean * mean) / (runs - 1);
  const double se = std::sqrt(var / runs);
  std::ostringstream msg;
  msg << "exact " << exact << ", mc " << mean << " +- " << se << ", cap hits "
      << cap_hits;
  detail = msg.str();
  return std::abs(mean - exact) <= 3.0 * se && cap_hits == 0;
}

// ---- 10. refinement trend ----------------------------------------------------
bool refinement_trend(std::string& detail) {
  const ProblemSpec spec = builtin_dataset("try1_p2");
  const RefinementReport report =
      refinement_study(spec, 0.0125, {15, 10, 5}, 1e-3, 1.0, 0.2, worker_threads());
  std::ostringstream msg;
  msg << "diff(15->10)=" << report.successive_diffs[0]
      << " diff(10->5)=" << report.successive_diffs[1];
  detail = msg.str();
  return report.successive_diffs.size() == 2 &&
         report.successive_diffs[0] > 0.0 && report.successive_diffs[1] > 0.0 &&
         report.successive_diffs[1] <= report.successive_diffs[0];
}

// ---- 11. p-sweep ordering -----------------------------------------------------
bool psweep_ordering(std::string& detail) {
  const Mesh mesh = build_mesh(0.1, 1.0, 0.4, 0.3);
  long iters[2] = {0, 0};
  const double ps[2] = {3.0, 100.0};
  for (int t = 0; t < 2; ++t) {
    const ProblemSpec spec = t == 0 ? builtin_dataset("try1_p2") : builtin_dataset("try1_p100");
    ProblemSpec swept = spec;
    swept.p = ps[t];
    auto [u, report] = solve_bracket(mesh, coefficients(ps[t]), swept, 1e-3, 500000);
    iters[t] = report.iterations;
  }
  std::ostringstream msg;
  msg << "iterations p=3: " << iters[0] << ", p=100: " << iters[1];
  detail = msg.str();
  return iters[1] < iters[0];
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::atoi(argv[a]));

  const std::vector<Criterion> criteria = {
      {1, "stencil-counts", stencil_counts},
      {2, "harmonic-quadratic-error", [](std::string& d) {
         return known_solution("harmonic_quadratic_p2", 1e-6, d);
       }},
      {3, "harmonic-expsin-error", [](std::string& d) {
         return known_solution("harmonic_expsin_p2", 1e-4, d);
       }},
      {4, "bracket-invariants", bracket_invariants},
      {5, "comparison-principle", comparison_principle},
      {6, "operator-properties", operator_properties},
      {7, "oracle-equivalence", oracle_equivalence},
      {8, "game-cross-validation", game_cross_validation},
      {9, "tiny-chain-exactness", tiny_chain},
      {10, "refinement-trend", refinement_trend},
      {11, "psweep-ordering", psweep_ordering},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && only.count(c.id) == 0) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-26s (%.2f s) %s\n", ok ? "PASS" : "FAIL", c.id,
                c.name, secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
