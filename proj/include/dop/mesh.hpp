#pragma once

// Square lattice over the extended domain X = Omega ∪ Gamma, where
// Omega = (-a,a)^2 and Gamma is a collar of width collar around it.
// Every node strictly inside X is kept; a node is Interior iff it lies in
// the open square (-a,a)^2, Collar otherwise. The discrete ball of radius
// eps = m*h (closed, center included) is the same offset pattern for every
// interior node, because eps < collar guarantees the ball never leaves X.

#include <cstdint>
#include <vector>

#include "dop/errors.hpp"

namespace dop {

enum class NodeClass : std::uint8_t { Interior, Collar };

struct Point {
  double x;
  double y;
};

// One lattice row of the stencil: j-offset dj, i-offsets di_lo..di_hi
// inclusive. Rows are stored with dj ascending, so walking them visits
// offsets in ascending node-index order.
struct StencilRow {
  int dj;
  int di_lo;
  int di_hi;
};

class Mesh {
 public:
  double spacing() const { return h_; }
  double half_width() const { return a_; }
  double collar_width() const { return collar_; }
  double epsilon() const { return eps_; }
  int radius_units() const { return m_; }

  // Nodes are ordered row-major by (y, then x) ascending. Lattice
  // coordinates (i, j) run over [-extent, extent]^2.
  long extent() const { return n_; }
  long side() const { return 2 * n_ + 1; }
  long node_count() const { return side() * side(); }
  long interior_extent() const { return im_; }

  long index_at(long i, long j) const { return (j + n_) * side() + (i + n_); }
  long lattice_i(long node) const { return node % side() - n_; }
  long lattice_j(long node) const { return node / side() - n_; }
  Point coord(long node) const {
    return {static_cast<double>(lattice_i(node)) * h_,
            static_cast<double>(lattice_j(node)) * h_};
  }

  bool is_interior(long node) const {
    return std::abs(lattice_i(node)) <= im_ && std::abs(lattice_j(node)) <= im_;
  }
  NodeClass node_class(long node) const {
    return is_interior(node) ? NodeClass::Interior : NodeClass::Collar;
  }
  const std::vector<long>& interior_nodes() const { return interior_; }

  // Nearest lattice node to an arbitrary point (clamped into X).
  long nearest_node(double x, double y) const;

  // Shared stencil pattern. deltas are node-index offsets, ascending;
  // cardinality k is identical for all interior nodes.
  long stencil_size() const { return k_; }
  const std::vector<long>& stencil_deltas() const { return deltas_; }
  const std::vector<StencilRow>& stencil_rows() const { return rows_; }

 private:
  friend Mesh build_mesh(double h, double a, double collar, double eps);
  Mesh() = default;

  double h_ = 0, a_ = 0, collar_ = 0, eps_ = 0;
  int m_ = 0;
  long n_ = 0, im_ = 0, k_ = 0;
  std::vector<long> interior_;
  std::vector<long> deltas_;
  std::vector<StencilRow> rows_;
};

// Builds the lattice and the stencil pattern.
// Requires h > 0, a > 0, 0 < eps < collar and eps an integer multiple of h.
Mesh build_mesh(double h, double a, double collar, double eps);

// Sorted node indices within distance eps of the given interior node
// (the node itself included). Throws NotInterior on collar nodes.
std::vector<long> stencil_of(const Mesh& mesh, long node);

}  // namespace dop
