#pragma once

// Run configuration: documented defaults, overridden by a key=value config
// file, overridden by --set pairs. Unknown keys are errors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dop/fields.hpp"
#include "dop/mesh.hpp"

namespace dop {

struct RunConfig {
  std::string command;  // solve | simulate | validate | bench

  // problem source: dataset name, or all three inline expressions (+ p)
  std::string dataset;
  std::string psi1_expr, psi2_expr, f_expr;
  std::optional<double> p;  // overrides the dataset exponent when set

  // mesh
  double h = 0.05;
  double a = 1.0;
  double collar = 0.2;
  int radius_units = 3;
  bool h_explicit = false;       // bench widens h/collar unless the user
  bool collar_explicit = false;  // pinned them (its radius table needs 15h < collar)

  // solver
  double tolerance = 1e-3;
  long max_iterations = 200000;

  // simulator
  std::uint64_t seed = 1;
  long runs = 10000;
  std::vector<Point> probes;         // empty -> origin
  double eta_stop = 0.0;             // 0 -> tolerance
  long max_steps = 10'000'000;

  // bench
  bool bench_quick = false;

  int threads = 1;                   // DPP_THREADS; 0 = auto
  std::string out_dir = ".";
};

// Parses `key = value` lines ('#' comments); overrides are "key=value"
// strings taking precedence over the file. Throws UnknownKey /
// BadValueType / MissingRequired.
RunConfig parse_config(const std::string& command,
                       const std::optional<std::string>& file_path,
                       const std::vector<std::string>& overrides);

// Materializes the configured problem; requires a dataset or a full inline
// triple with p.
ProblemSpec problem_from(const RunConfig& config);

double effective_eta_stop(const RunConfig& config);

}  // namespace dop
