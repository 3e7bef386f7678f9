#ifndef SHEAFCOORD_SHEAF_HPP
#define SHEAFCOORD_SHEAF_HPP

#include <Eigen/Core>

#include <vector>

#include "sheafcoord/cochain.hpp"
#include "sheafcoord/graph.hpp"

namespace sheafcoord {

/// The two restriction maps of one edge, each of shape
/// dim F(e) x dim F(endpoint).
struct EdgeRestriction {
  Eigen::MatrixXd from_tail;
  Eigen::MatrixXd from_head;
};

/// A cellular sheaf of Euclidean spaces on an undirected graph: a stalk
/// dimension per node and per edge, and a linear restriction map from each
/// endpoint stalk into the incident edge stalk.
///
/// Stalk dimensions may differ node to node (heterogeneous agents) and may
/// be zero. Immutable after construction; all operations on it are pure.
class CellularSheaf {
public:
  CellularSheaf(Graph graph, std::vector<int> node_stalk_dims,
                std::vector<int> edge_stalk_dims,
                std::vector<EdgeRestriction> restrictions);

  const Graph& graph() const { return graph_; }
  int node_count() const { return graph_.node_count(); }
  int edge_count() const { return graph_.edge_count(); }

  const std::vector<int>& node_stalk_dims() const { return node_dims_; }
  const std::vector<int>& edge_stalk_dims() const { return edge_dims_; }
  int node_stalk_dim(int i) const { return node_dims_[static_cast<size_t>(i)]; }
  int edge_stalk_dim(int e) const { return edge_dims_[static_cast<size_t>(e)]; }
  int total_node_dim() const { return total_node_dim_; }
  int total_edge_dim() const { return total_edge_dim_; }

  const EdgeRestriction& restriction(int e) const {
    return restrictions_[static_cast<size_t>(e)];
  }
  /// Restriction map F_{i <| e} for endpoint i of edge e.
  const Eigen::MatrixXd& restriction_from(int e, int node) const;

  /// Offset of node i's block in the flattened 0-cochain.
  int node_offset(int i) const { return node_offsets_[static_cast<size_t>(i)]; }
  /// Offset of edge e's block in the flattened 1-cochain.
  int edge_offset(int e) const { return edge_offsets_[static_cast<size_t>(e)]; }

  Cochain0 zero_cochain0() const { return Cochain0::zero(node_dims_); }
  Cochain1 zero_cochain1() const { return Cochain1::zero(edge_dims_); }

  /// Throws std::invalid_argument on block layout mismatch.
  void require_cochain0(const Cochain0& x) const;
  void require_cochain1(const Cochain1& y) const;

  Eigen::VectorXd flatten0(const Cochain0& x) const;
  Eigen::VectorXd flatten1(const Cochain1& y) const;
  Cochain0 unflatten0(const Eigen::VectorXd& v) const;
  Cochain1 unflatten1(const Eigen::VectorXd& v) const;

private:
  Graph graph_;
  std::vector<int> node_dims_;
  std::vector<int> edge_dims_;
  std::vector<EdgeRestriction> restrictions_;
  std::vector<int> node_offsets_;
  std::vector<int> edge_offsets_;
  int total_node_dim_ = 0;
  int total_edge_dim_ = 0;
};

/// The constant sheaf: every stalk R^k, every restriction the identity.
CellularSheaf constant_sheaf(const Graph& graph, int k);

/// Coboundary (delta x)_e = F_{tail <| e}(x_tail) - F_{head <| e}(x_head),
/// with the sign fixed by the canonical orientation tail < head.
Cochain1 coboundary(const CellularSheaf& sheaf, const Cochain0& x);

/// Adjoint of the coboundary w.r.t. the blockwise inner products:
/// <delta x, y> = <x, delta^T y> for all x, y.
Cochain0 coboundary_transpose(const CellularSheaf& sheaf, const Cochain1& y);

/// True iff the maximum edge-block norm of delta x is at most tol.
bool is_global_section(const CellularSheaf& sheaf, const Cochain0& x, double tol);

/// Dense matrix D with D * flatten0(x) = flatten1(coboundary(x)).
/// Assembly oracle for tests and pseudoinverse computations; desk scale.
Eigen::MatrixXd assemble_coboundary_matrix(const CellularSheaf& sheaf);

/// Result of the iterative minimum-norm least-squares solve of delta x ~ b.
struct MinNormPreimage {
  Cochain0 x;                  ///< least-squares minimum-norm solution
  bool converged = false;      ///< normal-equations residual reached tol
  int iterations = 0;
  double normal_residual = 0;  ///< ||delta^T (delta x - b)||
  bool in_image = true;        ///< false when ||delta x - b|| > tol (b outside image delta)
  double image_residual = 0;   ///< ||delta x - b||
};

/// Minimum-norm least-squares preimage of b under the coboundary, computed
/// by conjugate gradient on the normal equations started from zero (so the
/// iterates stay in image delta^T, giving exactly delta^+ b in the limit).
///
/// max_iters <= 0 picks a dimension-based default.
MinNormPreimage min_norm_preimage(const CellularSheaf& sheaf, const Cochain1& b,
                                  double tol, int max_iters = 0);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_SHEAF_HPP
