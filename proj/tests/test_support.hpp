#pragma once

// Shared helpers for the unit and acceptance suites: deterministic random
// problem data, and a brute-force fixed-point oracle that never touches
// the solver's stencil machinery (neighbors by pairwise distances, plain
// iteration from the lower start).

#include <array>
#include <cmath>
#include <vector>

#include "dop/dpp.hpp"
#include "dop/fields.hpp"
#include "dop/mesh.hpp"
#include "dop/rng.hpp"

namespace testsup {

// Smooth random field: quadratic polynomial plus two waves.
inline dop::ScalarField random_field(dop::Rng& rng) {
  std::array<double, 10> c;
  for (double& v : c) v = 2.0 * rng.uniform() - 1.0;
  return dop::ScalarField("rand", [c](double x, double y) {
    return c[0] + c[1] * x + c[2] * y + c[3] * x * y + c[4] * x * x +
           c[5] * y * y + 0.5 * std::sin(c[6] * 3.0 * x + c[7] * 3.0 * y) +
           0.5 * std::cos(c[8] * 3.0 * x + c[9] * 3.0 * y);
  });
}

// Nonnegative random field with values in [0, hi].
inline dop::ScalarField random_nonneg_field(dop::Rng& rng, double hi) {
  const dop::ScalarField g = random_field(rng);
  return dop::ScalarField("rand+", [g, hi](double x, double y) {
    return 0.5 * hi * (1.0 + std::sin(g(x, y)));
  });
}

// Admissible random problem: psi1 <= psi2 with a gap >= 0.4 everywhere and
// f squeezed between them (clamped, so the ordering is exact in floating
// point).
inline dop::ProblemSpec random_valid_spec(dop::Rng& rng, double p) {
  const dop::ScalarField g1 = random_field(rng);
  const dop::ScalarField g2 = random_field(rng);
  const dop::ScalarField g3 = random_field(rng);
  dop::ProblemSpec spec;
  spec.p = p;
  spec.psi1 = dop::ScalarField("rand.psi1", [g1, g2](double x, double y) {
    return std::min(g1(x, y), g2(x, y)) - 0.2;
  });
  spec.psi2 = dop::ScalarField("rand.psi2", [g1, g2](double x, double y) {
    return std::max(g1(x, y), g2(x, y)) + 0.2;
  });
  const dop::ScalarField lo = spec.psi1;
  const dop::ScalarField hi = spec.psi2;
  spec.f = dop::ScalarField("rand.f", [lo, hi, g3](double x, double y) {
    const double t = 0.5 * (1.0 + std::sin(g3(x, y)));
    const double v = lo(x, y) + t * (hi(x, y) - lo(x, y));
    return std::min(std::max(v, lo(x, y)), hi(x, y));
  });
  return spec;
}

// Data dominating `base` node-wise: psi1~ >= psi1, psi2~ >= psi2,
// f~ >= f, still admissible.
inline dop::ProblemSpec dominating_spec(const dop::ProblemSpec& base, dop::Rng& rng) {
  const dop::ScalarField d1 = random_nonneg_field(rng, 0.1);
  const dop::ScalarField d2 = random_nonneg_field(rng, 0.1);
  const dop::ScalarField d0 = random_nonneg_field(rng, 0.1);
  dop::ProblemSpec out;
  out.p = base.p;
  const dop::ScalarField b1 = base.psi1, b2 = base.psi2, bf = base.f;
  out.psi1 = dop::ScalarField("dom.psi1", [b1, d1](double x, double y) {
    return b1(x, y) + d1(x, y);
  });
  out.psi2 = dop::ScalarField("dom.psi2", [b2, d2](double x, double y) {
    return b2(x, y) + d2(x, y);
  });
  const dop::ScalarField o1 = out.psi1, o2 = out.psi2;
  out.f = dop::ScalarField("dom.f", [bf, d0, o1, o2](double x, double y) {
    const double v = bf(x, y) + d0(x, y);
    return std::min(std::max(v, o1(x, y)), o2(x, y));
  });
  return out;
}

// Plain fixed-point iteration of the min-max recursion, from the lower
// start, with neighbors found by brute-force distance enumeration.
// Returns the iterate once the sweep-to-sweep change drops below `settle`
// (or after max_sweeps).
inline std::vector<double> oracle_fixed_point(const dop::Mesh& mesh,
                                              const dop::ProblemSpec& spec,
                                              long max_sweeps, double settle) {
  const long count = mesh.node_count();
  const double eps = mesh.epsilon() * (1.0 + 1e-9);

  std::vector<double> psi1(count), psi2(count), f(count);
  std::vector<bool> interior(count);
  for (long node = 0; node < count; ++node) {
    const dop::Point pt = mesh.coord(node);
    psi1[node] = spec.psi1(pt.x, pt.y);
    psi2[node] = spec.psi2(pt.x, pt.y);
    f[node] = spec.f(pt.x, pt.y);
    interior[node] = mesh.is_interior(node);
  }

  std::vector<std::vector<long>> neighbors(count);
  for (long p = 0; p < count; ++p) {
    if (!interior[p]) continue;
    const dop::Point a = mesh.coord(p);
    for (long q = 0; q < count; ++q) {
      const dop::Point b = mesh.coord(q);
      if (std::hypot(a.x - b.x, a.y - b.y) <= eps) neighbors[p].push_back(q);
    }
  }

  const double alpha = (spec.p - 2.0) / (spec.p + 2.0);
  const double beta = 1.0 - alpha;

  std::vector<double> u(count), next(count);
  for (long node = 0; node < count; ++node) {
    u[node] = interior[node] ? psi1[node] : f[node];
  }
  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (long node = 0; node < count; ++node) {
      if (!interior[node]) {
        next[node] = f[node];
        continue;
      }
      double mx = -1e300, mn = 1e300, sum = 0.0;
      for (long q : neighbors[node]) {
        mx = std::max(mx, u[q]);
        mn = std::min(mn, u[q]);
        sum += u[q];
      }
      const double k = static_cast<double>(neighbors[node].size());
      const double vbar = 0.5 * alpha * (mx + mn) + beta * sum / k;
      next[node] = std::max(psi1[node], std::min(psi2[node], vbar));
      change = std::max(change, std::abs(next[node] - u[node]));
    }
    u.swap(next);
    if (change < settle) break;
  }
  return u;
}

// 7x7-node mesh with a 5x5 interior (h=0.4, eps=h).
inline dop::Mesh toy_mesh() { return dop::build_mesh(0.4, 1.0, 0.5, 0.4); }

}  // namespace testsup
