#include "sheafcoord/laplacian.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace sheafcoord {

Cochain0 apply_laplacian(const LaplacianContext& ctx, const Cochain0& x) {
  Cochain1 y = coboundary(ctx.sheaf, x);
  Cochain1 g = total_gradient(ctx.potentials, y);
  return coboundary_transpose(ctx.sheaf, g);
}

Eigen::VectorXd apply_laplacian_local(const LaplacianContext& ctx, int node,
                                      const Eigen::VectorXd& x_i,
                                      const std::map<int, Eigen::VectorXd>& neighbor_states) {
  const CellularSheaf& sheaf = ctx.sheaf;
  if (static_cast<int>(x_i.size()) != sheaf.node_stalk_dim(node)) {
    throw std::invalid_argument("apply_laplacian_local: x_i dimension mismatch");
  }
  const auto& neighbors = sheaf.graph().neighbors(node);
  if (neighbor_states.size() != neighbors.size()) {
    throw std::invalid_argument("apply_laplacian_local: neighbor_states must cover exactly N_i");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x_i.size());
  for (const Incidence& inc : sheaf.graph().incidences(node)) {
    const Edge& ed = sheaf.graph().edge(inc.edge);
    const int j = inc.is_tail ? ed.head : ed.tail;
    const auto it = neighbor_states.find(j);
    if (it == neighbor_states.end()) {
      throw std::invalid_argument("apply_laplacian_local: missing state for neighbor " +
                                  std::to_string(j));
    }
    const EdgeRestriction& r = sheaf.restriction(inc.edge);
    const Eigen::MatrixXd& own = inc.is_tail ? r.from_tail : r.from_head;
    const Eigen::MatrixXd& other = inc.is_tail ? r.from_head : r.from_tail;
    // Edge difference in canonical orientation (tail minus head).
    Eigen::VectorXd diff = inc.is_tail ? Eigen::VectorXd(own * x_i - other * it->second)
                                       : Eigen::VectorXd(other * it->second - own * x_i);
    const Eigen::VectorXd g = ctx.potentials.potential(inc.edge).gradient(diff);
    if (inc.is_tail) {
      out.noalias() += own.transpose() * g;
    } else {
      out.noalias() -= own.transpose() * g;
    }
  }
  return out;
}

double laplacian_potential(const LaplacianContext& ctx, const Cochain0& x) {
  return total_value(ctx.potentials, coboundary(ctx.sheaf, x));
}

double estimate_coboundary_norm_sq(const CellularSheaf& sheaf, int iters) {
  if (sheaf.total_node_dim() == 0 || sheaf.edge_count() == 0) return 0.0;
  std::mt19937_64 rng(0x5eafc0de);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Cochain0 v = sheaf.zero_cochain0();
  for (auto& b : v.blocks) {
    for (Eigen::Index k = 0; k < b.size(); ++k) b[k] = unif(rng);
  }
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    const double n = v.norm();
    if (n == 0.0) break;
    v *= 1.0 / n;
    Cochain0 w = coboundary_transpose(sheaf, coboundary(sheaf, v));
    lambda = v.dot(w);
    v = std::move(w);
  }
  return 1.1 * std::max(lambda, 0.0);
}

}  // namespace sheafcoord
