#pragma once

// Monte-Carlo simulator of the tug-of-war game with noise and double
// stopping. Each turn: with probability alpha/2 the maximizing player
// moves the token to his chosen stencil node, with alpha/2 the minimizing
// player does, with beta the token jumps uniformly over the stencil
// (center included), matching the discrete operator's mean term. A player
// stops where the solved grid function touches his obstacle; boundary
// exit pays F. Near-optimal play reproduces the solver's value, which is
// what the estimator cross-checks.

#include <cstdint>
#include <vector>

#include "dop/dpp.hpp"
#include "dop/fields.hpp"
#include "dop/mesh.hpp"
#include "dop/rng.hpp"

namespace dop {

// Markovian strategies: destination node per interior node (-1 on collar).
struct StrategyPair {
  std::vector<long> to_max;  // Player I, maximizer
  std::vector<long> to_min;  // Player II, minimizer
};

// Argmax/argmin of u over each interior stencil; ties break to the lowest
// node index.
StrategyPair greedy_strategies(const Mesh& mesh, const GridFunction& u);

// Node predicates; collar nodes always end the run regardless.
struct StopRule {
  std::vector<std::uint8_t> stop_I;
  std::vector<std::uint8_t> stop_II;
  double eta = 1e-3;
};

// Contact detection up to eta: player i stops where |u - psi_i| <= eta.
// (On admissible data this is the one-sided contact test; the symmetric
// form also behaves when the printed obstacles cross.)
StopRule contact_stop_rule(const Mesh& mesh, const ProblemSpec& spec,
                           const GridFunction& u, double eta);

enum class Terminal : std::uint8_t {
  ExitBoundary,
  StoppedByI,
  StoppedByII,
  TieStop,
  StepCap,  // aborted by the hard step cap; counted, never silently accepted
};

struct GameOutcome {
  double payoff;
  long steps;
  Terminal terminal;
  bool capped() const { return terminal == Terminal::StepCap; }
};

enum class MoveKind : std::uint8_t { PlayerI, PlayerII, Noise };

// The coin of the transition measure: alpha/2, alpha/2, beta.
MoveKind draw_move(const Coefficients& coeff, Rng& rng);

// Uniform draw over the stencil of an interior node.
long noise_target(const Mesh& mesh, long node, Rng& rng);

// Everything a run needs, sampled once.
struct GameContext {
  const Mesh* mesh;
  Coefficients coeff;
  GridFunction psi1, psi2, f;
  StrategyPair strategies;
  StopRule stops;
  long max_steps = 10'000'000;
};

GameContext make_game_context(const Mesh& mesh, const Coefficients& coeff,
                              const ProblemSpec& spec, StrategyPair strategies,
                              StopRule stops, long max_steps = 10'000'000);

GameOutcome simulate_run(const GameContext& ctx, long x0, Rng& rng);

// One-shot form matching the module contract.
GameOutcome simulate_run(const Mesh& mesh, const Coefficients& coeff,
                         const ProblemSpec& spec, const StrategyPair& strategies,
                         const StopRule& stops, long x0, Rng& rng,
                         long max_steps = 10'000'000);

struct ValueEstimate {
  double mean = 0;
  double std_error = 0;
  long runs = 0;
  long max_steps_hit = 0;
};

struct EstimateOptions {
  long runs = 10000;
  std::uint64_t seed = 1;
  double eta_stop = 1e-3;
  long max_steps = 10'000'000;
  int threads = 1;  // 0 = hardware concurrency
};

// Builds greedy strategies and contact stop rules from u and averages
// independent runs (one RNG substream per run index, so the estimate is
// identical for any worker count). Throws NonSolvedInput when u is not
// close to a fixed point (residual > 10 * eta_stop).
ValueEstimate estimate_value(const Mesh& mesh, const Coefficients& coeff,
                             const ProblemSpec& spec, const GridFunction& u,
                             long x0, const EstimateOptions& options);

}  // namespace dop
