#include "dop/mesh.hpp"

#include <cmath>
#include <cstdlib>

namespace dop {

namespace {

// Largest integer t with t*h < bound (mathematically). Snaps to the exact
// answer when bound is a lattice multiple, so node classification never
// depends on floating-point noise in bound/h.
long ticks_below(double bound, double h) {
  const double q = bound / h;
  const double r = std::round(q);
  if (std::abs(q - r) < 1e-9 * std::max(1.0, std::abs(q))) {
    return static_cast<long>(r) - 1;
  }
  return static_cast<long>(std::floor(q));
}

}  // namespace

Mesh build_mesh(double h, double a, double collar, double eps) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw NonPositiveSpacing("mesh spacing h must be positive");
  }
  if (!(a > 0.0) || !(collar > 0.0)) {
    throw NonPositiveSpacing("domain half-width and collar must be positive");
  }
  if (!(eps > 0.0) || eps >= collar) {
    throw RadiusExceedsCollar("ball radius eps must satisfy 0 < eps < collar");
  }
  const double ratio = eps / h;
  const double rm = std::round(ratio);
  if (rm < 1.0 || std::abs(ratio - rm) > 1e-9 * std::max(1.0, ratio)) {
    throw NonIntegerRadius("eps must be an integer multiple of h");
  }

  Mesh mesh;
  mesh.h_ = h;
  mesh.a_ = a;
  mesh.collar_ = collar;
  mesh.eps_ = eps;
  mesh.m_ = static_cast<int>(rm);
  mesh.n_ = ticks_below(a + collar, h);
  mesh.im_ = ticks_below(a, h);

  const long side = mesh.side();
  mesh.interior_.reserve(static_cast<std::size_t>((2 * mesh.im_ + 1) * (2 * mesh.im_ + 1)));
  for (long j = -mesh.im_; j <= mesh.im_; ++j) {
    for (long i = -mesh.im_; i <= mesh.im_; ++i) {
      mesh.interior_.push_back(mesh.index_at(i, j));
    }
  }

  // Offset pattern of the closed lattice ball di^2 + dj^2 <= m^2.
  const int m = mesh.m_;
  for (int dj = -m; dj <= m; ++dj) {
    int w = 0;
    while ((w + 1) * (w + 1) + dj * dj <= m * m) ++w;
    mesh.rows_.push_back({dj, -w, w});
    for (int di = -w; di <= w; ++di) {
      mesh.deltas_.push_back(static_cast<long>(dj) * side + di);
    }
  }
  mesh.k_ = static_cast<long>(mesh.deltas_.size());
  return mesh;
}

long Mesh::nearest_node(double x, double y) const {
  const auto snap = [this](double c) {
    long t = std::lround(c / h_);
    if (t < -n_) t = -n_;
    if (t > n_) t = n_;
    return t;
  };
  return index_at(snap(x), snap(y));
}

std::vector<long> stencil_of(const Mesh& mesh, long node) {
  if (!mesh.is_interior(node)) {
    throw NotInterior("stencil_of: node is not interior");
  }
  std::vector<long> out;
  out.reserve(static_cast<std::size_t>(mesh.stencil_size()));
  for (long d : mesh.stencil_deltas()) out.push_back(node + d);
  return out;
}

}  // namespace dop
