#include "dop/game.hpp"

#include <cmath>
#include <utility>

#include "dop/parallel.hpp"

namespace dop {

StrategyPair greedy_strategies(const Mesh& mesh, const GridFunction& u) {
  const std::size_t count = static_cast<std::size_t>(mesh.node_count());
  if (u.size() != count) {
    throw ShapeMismatch("grid function does not match the mesh");
  }
  StrategyPair s;
  s.to_max.assign(count, -1);
  s.to_min.assign(count, -1);
  const auto& deltas = mesh.stencil_deltas();
  for (long node : mesh.interior_nodes()) {
    long arg_hi = node + deltas[0];
    long arg_lo = arg_hi;
    double hi = u[static_cast<std::size_t>(arg_hi)];
    double lo = hi;
    for (std::size_t t = 1; t < deltas.size(); ++t) {
      const long cand = node + deltas[t];
      const double val = u[static_cast<std::size_t>(cand)];
      if (val > hi) { hi = val; arg_hi = cand; }
      if (val < lo) { lo = val; arg_lo = cand; }
    }
    s.to_max[static_cast<std::size_t>(node)] = arg_hi;
    s.to_min[static_cast<std::size_t>(node)] = arg_lo;
  }
  return s;
}

StopRule contact_stop_rule(const Mesh& mesh, const ProblemSpec& spec,
                           const GridFunction& u, double eta) {
  const std::size_t count = static_cast<std::size_t>(mesh.node_count());
  if (u.size() != count) {
    throw ShapeMismatch("grid function does not match the mesh");
  }
  StopRule rule;
  rule.eta = eta;
  rule.stop_I.assign(count, 0);
  rule.stop_II.assign(count, 0);
  for (long node : mesh.interior_nodes()) {
    const Point pt = mesh.coord(node);
    const std::size_t s = static_cast<std::size_t>(node);
    if (std::abs(u[s] - eval_field(spec.psi1, pt.x, pt.y)) <= eta) rule.stop_I[s] = 1;
    if (std::abs(u[s] - eval_field(spec.psi2, pt.x, pt.y)) <= eta) rule.stop_II[s] = 1;
  }
  return rule;
}

MoveKind draw_move(const Coefficients& coeff, Rng& rng) {
  const double roll = rng.uniform();
  if (roll < 0.5 * coeff.alpha) return MoveKind::PlayerI;
  if (roll < coeff.alpha) return MoveKind::PlayerII;
  return MoveKind::Noise;
}

long noise_target(const Mesh& mesh, long node, Rng& rng) {
  const auto& deltas = mesh.stencil_deltas();
  return node + deltas[static_cast<std::size_t>(
                    rng.uniform_index(static_cast<long>(deltas.size())))];
}

GameContext make_game_context(const Mesh& mesh, const Coefficients& coeff,
                              const ProblemSpec& spec, StrategyPair strategies,
                              StopRule stops, long max_steps) {
  GameContext ctx;
  ctx.mesh = &mesh;
  ctx.coeff = coeff;
  ctx.psi1 = sample_field(spec.psi1, mesh);
  ctx.psi2 = sample_field(spec.psi2, mesh);
  ctx.f = sample_field(spec.f, mesh);
  ctx.strategies = std::move(strategies);
  ctx.stops = std::move(stops);
  ctx.max_steps = max_steps;
  return ctx;
}

GameOutcome simulate_run(const GameContext& ctx, long x0, Rng& rng) {
  const Mesh& mesh = *ctx.mesh;
  long cur = x0;
  long steps = 0;
  if (!mesh.is_interior(cur)) {
    return {ctx.f[static_cast<std::size_t>(cur)], 0, Terminal::ExitBoundary};
  }
  for (;;) {
    const std::size_t s = static_cast<std::size_t>(cur);
    const bool fire_I = ctx.stops.stop_I[s] != 0;
    const bool fire_II = ctx.stops.stop_II[s] != 0;
    if (fire_I && !fire_II) return {ctx.psi1[s], steps, Terminal::StoppedByI};
    if (fire_II && !fire_I) return {ctx.psi2[s], steps, Terminal::StoppedByII};
    if (fire_I && fire_II) return {ctx.psi2[s], steps, Terminal::TieStop};
    if (steps >= ctx.max_steps) return {ctx.psi2[s], steps, Terminal::StepCap};

    switch (draw_move(ctx.coeff, rng)) {
      case MoveKind::PlayerI: cur = ctx.strategies.to_max[s]; break;
      case MoveKind::PlayerII: cur = ctx.strategies.to_min[s]; break;
      case MoveKind::Noise: cur = noise_target(mesh, cur, rng); break;
    }
    ++steps;
    if (!mesh.is_interior(cur)) {
      return {ctx.f[static_cast<std::size_t>(cur)], steps, Terminal::ExitBoundary};
    }
  }
}

GameOutcome simulate_run(const Mesh& mesh, const Coefficients& coeff,
                         const ProblemSpec& spec, const StrategyPair& strategies,
                         const StopRule& stops, long x0, Rng& rng, long max_steps) {
  const GameContext ctx =
      make_game_context(mesh, coeff, spec, strategies, stops, max_steps);
  return simulate_run(ctx, x0, rng);
}

ValueEstimate estimate_value(const Mesh& mesh, const Coefficients& coeff,
                             const ProblemSpec& spec, const GridFunction& u,
                             long x0, const EstimateOptions& options) {
  if (options.runs < 1) {
    throw Error("estimate_value: runs must be >= 1");
  }
  const double res = residual(mesh, coeff, spec, u);
  if (res > 10.0 * options.eta_stop) {
    throw NonSolvedInput("estimate_value: residual " + std::to_string(res) +
                         " too large; u is not a solved grid function");
  }
  const GameContext ctx =
      make_game_context(mesh, coeff, spec, greedy_strategies(mesh, u),
                        contact_stop_rule(mesh, spec, u, options.eta_stop),
                        options.max_steps);

  std::vector<double> payoffs(static_cast<std::size_t>(options.runs));
  std::vector<std::uint8_t> capped(static_cast<std::size_t>(options.runs), 0);
  parallel_for(options.runs, options.threads, [&](long lo, long hi) {
    for (long r = lo; r < hi; ++r) {
      Rng rng(Rng::substream_seed(options.seed, static_cast<std::uint64_t>(r)));
      const GameOutcome out = simulate_run(ctx, x0, rng);
      payoffs[static_cast<std::size_t>(r)] = out.payoff;
      capped[static_cast<std::size_t>(r)] = out.capped() ? 1 : 0;
    }
  });

  ValueEstimate est;
  est.runs = options.runs;
  double sum = 0.0;
  for (double v : payoffs) sum += v;
  est.mean = sum / static_cast<double>(options.runs);
  if (options.runs > 1) {
    double ss = 0.0;
    for (double v : payoffs) ss += (v - est.mean) * (v - est.mean);
    const double variance = ss / static_cast<double>(options.runs - 1);
    est.std_error = std::sqrt(variance / static_cast<double>(options.runs));
  }
  for (std::uint8_t c : capped) est.max_steps_hit += c;
  return est;
}

}  // namespace dop
