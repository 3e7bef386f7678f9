#include "sheafcoord/lti.hpp"

#include <stdexcept>

namespace sheafcoord {

void LTISystem::validate() const {
  if (A.rows() != A.cols() || B.rows() != A.rows() || A.rows() < 1 || B.cols() < 1) {
    throw std::invalid_argument("LTISystem: A must be n x n and B must be n x m");
  }
}

void DynamicsSheafSpec::validate() const {
  system.validate();
  if (horizon < 2) throw std::invalid_argument("DynamicsSheafSpec: horizon must be >= 2");
  if (initial_state.size() != system.state_dim()) {
    throw std::invalid_argument("DynamicsSheafSpec: initial state dimension mismatch");
  }
}

int DynamicsSheafSpec::trajectory_dim() const {
  const int n = system.state_dim();
  const int m = system.control_dim();
  return (horizon - 1) * (n + m) + n;
}

DynamicsSheaf build_dynamics_sheaf(const DynamicsSheafSpec& spec) {
  spec.validate();
  const int n = spec.system.state_dim();
  const int m = spec.system.control_dim();
  const int T = spec.horizon;

  Graph path = Graph::path(T + 1);
  std::vector<int> node_dims(static_cast<size_t>(T + 1), n + m);
  node_dims[0] = 0;
  node_dims[static_cast<size_t>(T)] = n;
  std::vector<int> edge_dims(static_cast<size_t>(T), n);

  Eigen::MatrixXd pi1 = Eigen::MatrixXd::Zero(n, n + m);  // (x, u) -> x
  pi1.leftCols(n).setIdentity();
  Eigen::MatrixXd dyn(n, n + m);  // (x, u) -> A x + B u
  dyn.leftCols(n) = spec.system.A;
  dyn.rightCols(m) = spec.system.B;

  std::vector<EdgeRestriction> rest;
  rest.reserve(static_cast<size_t>(T));
  rest.push_back({Eigen::MatrixXd::Zero(n, 0), pi1});  // e0: ! and pi1
  for (int t = 1; t + 1 < T; ++t) rest.push_back({dyn, pi1});
  rest.push_back({dyn, Eigen::MatrixXd::Identity(n, n)});

  auto sheaf = std::make_shared<CellularSheaf>(std::move(path), std::move(node_dims),
                                               std::move(edge_dims), std::move(rest));

  // (delta x)_{e0} = -x(1), so pinning x(1) = c means target -c.
  std::vector<EdgePotential> pots;
  pots.push_back(EdgePotential::displacement(-spec.initial_state));
  for (int t = 1; t < T; ++t) pots.push_back(EdgePotential::quadratic(n));
  auto pa = std::make_shared<PotentialAssignment>(*sheaf, std::move(pots));
  return {std::move(sheaf), std::move(pa)};
}

Eigen::MatrixXd rollout_states(const LTISystem& system, const Eigen::VectorXd& c,
                               const Eigen::MatrixXd& U) {
  system.validate();
  if (c.size() != system.state_dim() || U.rows() != system.control_dim()) {
    throw std::invalid_argument("rollout_states: shape mismatch");
  }
  const int T = static_cast<int>(U.cols()) + 1;
  Eigen::MatrixXd X(system.state_dim(), T);
  X.col(0) = c;
  for (int t = 0; t + 1 < T; ++t) {
    X.col(t + 1) = system.A * X.col(t) + system.B * U.col(t);
  }
  return X;
}

Cochain0 trajectory_cochain(const DynamicsSheafSpec& spec, const Eigen::MatrixXd& X,
                            const Eigen::MatrixXd& U) {
  spec.validate();
  const int n = spec.system.state_dim();
  const int m = spec.system.control_dim();
  const int T = spec.horizon;
  if (X.rows() != n || X.cols() != T || U.rows() != m || U.cols() != T - 1) {
    throw std::invalid_argument("trajectory_cochain: shape mismatch");
  }
  Cochain0 x;
  x.blocks.resize(static_cast<size_t>(T + 1));
  x.blocks[0] = Eigen::VectorXd::Zero(0);
  for (int t = 1; t < T; ++t) {
    Eigen::VectorXd blk(n + m);
    blk.head(n) = X.col(t - 1);
    blk.tail(m) = U.col(t - 1);
    x.blocks[static_cast<size_t>(t)] = std::move(blk);
  }
  x.blocks[static_cast<size_t>(T)] = X.col(T - 1);
  return x;
}

Eigen::VectorXd flatten_trajectory(const DynamicsSheafSpec& spec, const Eigen::MatrixXd& X,
                                   const Eigen::MatrixXd& U) {
  const int n = spec.system.state_dim();
  const int m = spec.system.control_dim();
  const int T = spec.horizon;
  if (X.rows() != n || X.cols() != T || U.rows() != m || U.cols() != T - 1) {
    throw std::invalid_argument("flatten_trajectory: shape mismatch");
  }
  Eigen::VectorXd v(spec.trajectory_dim());
  int at = 0;
  for (int t = 0; t + 1 < T; ++t) {
    v.segment(at, n) = X.col(t);
    v.segment(at + n, m) = U.col(t);
    at += n + m;
  }
  v.segment(at, n) = X.col(T - 1);
  return v;
}

Eigen::MatrixXd trajectory_states(const DynamicsSheafSpec& spec, const Eigen::VectorXd& traj) {
  const int n = spec.system.state_dim();
  const int m = spec.system.control_dim();
  const int T = spec.horizon;
  if (traj.size() != spec.trajectory_dim()) {
    throw std::invalid_argument("trajectory_states: dimension mismatch");
  }
  Eigen::MatrixXd X(n, T);
  for (int t = 0; t + 1 < T; ++t) X.col(t) = traj.segment(t * (n + m), n);
  X.col(T - 1) = traj.tail(n);
  return X;
}

Eigen::MatrixXd trajectory_controls(const DynamicsSheafSpec& spec, const Eigen::VectorXd& traj) {
  const int n = spec.system.state_dim();
  const int m = spec.system.control_dim();
  const int T = spec.horizon;
  if (traj.size() != spec.trajectory_dim()) {
    throw std::invalid_argument("trajectory_controls: dimension mismatch");
  }
  Eigen::MatrixXd U(m, T - 1);
  for (int t = 0; t + 1 < T; ++t) U.col(t) = traj.segment(t * (n + m) + n, m);
  return U;
}

double admissibility_defect(const DynamicsSheaf& ds, const Cochain0& x) {
  const Cochain1 d = coboundary(*ds.sheaf, x);
  const MinimizerCochain mc = minimizer_cochain(*ds.potentials);
  if (!mc.b) throw std::logic_error("admissibility_defect: dynamics potentials lack minimizers");
  double defect = 0.0;
  for (size_t e = 0; e < d.blocks.size(); ++e) {
    defect = std::max(defect, (d.blocks[e] - mc.b->blocks[e]).norm());
  }
  return defect;
}

}  // namespace sheafcoord
