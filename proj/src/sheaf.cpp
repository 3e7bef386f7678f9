#include "sheafcoord/sheaf.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace sheafcoord {

CellularSheaf::CellularSheaf(Graph graph, std::vector<int> node_stalk_dims,
                             std::vector<int> edge_stalk_dims,
                             std::vector<EdgeRestriction> restrictions)
    : graph_(std::move(graph)),
      node_dims_(std::move(node_stalk_dims)),
      edge_dims_(std::move(edge_stalk_dims)),
      restrictions_(std::move(restrictions)) {
  const int n = graph_.node_count();
  const int m = graph_.edge_count();
  if (static_cast<int>(node_dims_.size()) != n) {
    throw std::invalid_argument("CellularSheaf: node stalk dim count mismatch");
  }
  if (static_cast<int>(edge_dims_.size()) != m) {
    throw std::invalid_argument("CellularSheaf: edge stalk dim count mismatch");
  }
  if (static_cast<int>(restrictions_.size()) != m) {
    throw std::invalid_argument("CellularSheaf: restriction count mismatch");
  }
  for (int d : node_dims_) {
    if (d < 0) throw std::invalid_argument("CellularSheaf: negative node stalk dim");
  }
  for (int e = 0; e < m; ++e) {
    const Edge& ed = graph_.edge(e);
    const EdgeRestriction& r = restrictions_[static_cast<size_t>(e)];
    const int de = edge_dims_[static_cast<size_t>(e)];
    if (de <= 0) throw std::invalid_argument("CellularSheaf: edge stalk dim must be positive");
    if (r.from_tail.rows() != de ||
        r.from_tail.cols() != node_dims_[static_cast<size_t>(ed.tail)] ||
        r.from_head.rows() != de ||
        r.from_head.cols() != node_dims_[static_cast<size_t>(ed.head)]) {
      throw std::invalid_argument("CellularSheaf: restriction shape mismatch on edge " +
                                  std::to_string(e));
    }
  }
  node_offsets_.resize(node_dims_.size());
  for (size_t i = 0; i < node_dims_.size(); ++i) {
    node_offsets_[i] = total_node_dim_;
    total_node_dim_ += node_dims_[i];
  }
  edge_offsets_.resize(edge_dims_.size());
  for (size_t e = 0; e < edge_dims_.size(); ++e) {
    edge_offsets_[e] = total_edge_dim_;
    total_edge_dim_ += edge_dims_[e];
  }
}

const Eigen::MatrixXd& CellularSheaf::restriction_from(int e, int node) const {
  const Edge& ed = graph_.edge(e);
  if (node == ed.tail) return restrictions_[static_cast<size_t>(e)].from_tail;
  if (node == ed.head) return restrictions_[static_cast<size_t>(e)].from_head;
  throw std::invalid_argument("CellularSheaf: node " + std::to_string(node) +
                              " is not an endpoint of edge " + std::to_string(e));
}

void CellularSheaf::require_cochain0(const Cochain0& x) const {
  if (!x.layout_matches(node_dims_)) {
    throw std::invalid_argument("cochain block layout does not match node stalks");
  }
}

void CellularSheaf::require_cochain1(const Cochain1& y) const {
  if (!y.layout_matches(edge_dims_)) {
    throw std::invalid_argument("cochain block layout does not match edge stalks");
  }
}

Eigen::VectorXd CellularSheaf::flatten0(const Cochain0& x) const {
  require_cochain0(x);
  Eigen::VectorXd v(total_node_dim_);
  for (int i = 0; i < node_count(); ++i) {
    v.segment(node_offset(i), node_stalk_dim(i)) = x.blocks[static_cast<size_t>(i)];
  }
  return v;
}

Eigen::VectorXd CellularSheaf::flatten1(const Cochain1& y) const {
  require_cochain1(y);
  Eigen::VectorXd v(total_edge_dim_);
  for (int e = 0; e < edge_count(); ++e) {
    v.segment(edge_offset(e), edge_stalk_dim(e)) = y.blocks[static_cast<size_t>(e)];
  }
  return v;
}

Cochain0 CellularSheaf::unflatten0(const Eigen::VectorXd& v) const {
  if (v.size() != total_node_dim_) {
    throw std::invalid_argument("unflatten0: dimension mismatch");
  }
  Cochain0 x = zero_cochain0();
  for (int i = 0; i < node_count(); ++i) {
    x.blocks[static_cast<size_t>(i)] = v.segment(node_offset(i), node_stalk_dim(i));
  }
  return x;
}

Cochain1 CellularSheaf::unflatten1(const Eigen::VectorXd& v) const {
  if (v.size() != total_edge_dim_) {
    throw std::invalid_argument("unflatten1: dimension mismatch");
  }
  Cochain1 y = zero_cochain1();
  for (int e = 0; e < edge_count(); ++e) {
    y.blocks[static_cast<size_t>(e)] = v.segment(edge_offset(e), edge_stalk_dim(e));
  }
  return y;
}

CellularSheaf constant_sheaf(const Graph& graph, int k) {
  if (k <= 0) throw std::invalid_argument("constant_sheaf: k must be >= 1");
  std::vector<int> node_dims(static_cast<size_t>(graph.node_count()), k);
  std::vector<int> edge_dims(static_cast<size_t>(graph.edge_count()), k);
  std::vector<EdgeRestriction> rest(
      static_cast<size_t>(graph.edge_count()),
      EdgeRestriction{Eigen::MatrixXd::Identity(k, k), Eigen::MatrixXd::Identity(k, k)});
  return CellularSheaf(graph, std::move(node_dims), std::move(edge_dims), std::move(rest));
}

Cochain1 coboundary(const CellularSheaf& sheaf, const Cochain0& x) {
  sheaf.require_cochain0(x);
  Cochain1 y = sheaf.zero_cochain1();
  for (int e = 0; e < sheaf.edge_count(); ++e) {
    const Edge& ed = sheaf.graph().edge(e);
    const EdgeRestriction& r = sheaf.restriction(e);
    y.blocks[static_cast<size_t>(e)] =
        r.from_tail * x.blocks[static_cast<size_t>(ed.tail)] -
        r.from_head * x.blocks[static_cast<size_t>(ed.head)];
  }
  return y;
}

Cochain0 coboundary_transpose(const CellularSheaf& sheaf, const Cochain1& y) {
  sheaf.require_cochain1(y);
  Cochain0 x = sheaf.zero_cochain0();
  for (int e = 0; e < sheaf.edge_count(); ++e) {
    const Edge& ed = sheaf.graph().edge(e);
    const EdgeRestriction& r = sheaf.restriction(e);
    const Eigen::VectorXd& ye = y.blocks[static_cast<size_t>(e)];
    x.blocks[static_cast<size_t>(ed.tail)].noalias() += r.from_tail.transpose() * ye;
    x.blocks[static_cast<size_t>(ed.head)].noalias() -= r.from_head.transpose() * ye;
  }
  return x;
}

bool is_global_section(const CellularSheaf& sheaf, const Cochain0& x, double tol) {
  if (tol < 0) throw std::invalid_argument("is_global_section: tol must be >= 0");
  return coboundary(sheaf, x).max_block_norm() <= tol;
}

Eigen::MatrixXd assemble_coboundary_matrix(const CellularSheaf& sheaf) {
  Eigen::MatrixXd D =
      Eigen::MatrixXd::Zero(sheaf.total_edge_dim(), sheaf.total_node_dim());
  for (int e = 0; e < sheaf.edge_count(); ++e) {
    const Edge& ed = sheaf.graph().edge(e);
    const EdgeRestriction& r = sheaf.restriction(e);
    D.block(sheaf.edge_offset(e), sheaf.node_offset(ed.tail), sheaf.edge_stalk_dim(e),
            sheaf.node_stalk_dim(ed.tail)) = r.from_tail;
    D.block(sheaf.edge_offset(e), sheaf.node_offset(ed.head), sheaf.edge_stalk_dim(e),
            sheaf.node_stalk_dim(ed.head)) = -r.from_head;
  }
  return D;
}

MinNormPreimage min_norm_preimage(const CellularSheaf& sheaf, const Cochain1& b,
                                  double tol, int max_iters) {
  sheaf.require_cochain1(b);
  if (tol <= 0) throw std::invalid_argument("min_norm_preimage: tol must be > 0");
  if (max_iters <= 0) max_iters = 4 * sheaf.total_node_dim() + 200;

  MinNormPreimage out;
  // CGLS on the normal equations delta^T delta x = delta^T b, started from
  // zero so every iterate lies in image delta^T and the limit is delta^+ b.
  Cochain0 x = sheaf.zero_cochain0();
  Cochain1 r = b;                                  // b - delta x
  Cochain0 s = coboundary_transpose(sheaf, r);     // normal-equations residual
  Cochain0 p = s;
  double gamma = s.squared_norm();
  const double tol2 = tol * tol;

  int it = 0;
  while (gamma > tol2 && it < max_iters) {
    Cochain1 q = coboundary(sheaf, p);
    const double qq = q.squared_norm();
    if (qq == 0.0) break;  // p in ker delta; nothing left to move
    const double alpha = gamma / qq;
    for (size_t k = 0; k < x.blocks.size(); ++k) x.blocks[k] += alpha * p.blocks[k];
    for (size_t k = 0; k < r.blocks.size(); ++k) r.blocks[k] -= alpha * q.blocks[k];
    s = coboundary_transpose(sheaf, r);
    const double gamma_next = s.squared_norm();
    const double beta = gamma_next / gamma;
    for (size_t k = 0; k < p.blocks.size(); ++k) {
      p.blocks[k] = s.blocks[k] + beta * p.blocks[k];
    }
    gamma = gamma_next;
    ++it;
  }

  out.x = std::move(x);
  out.iterations = it;
  out.normal_residual = std::sqrt(gamma);
  out.converged = out.normal_residual <= tol;
  Cochain1 dres = coboundary(sheaf, out.x);
  dres -= b;
  out.image_residual = dres.norm();
  out.in_image = out.image_residual <= tol;
  return out;
}

}  // namespace sheafcoord
