#include "sheafcoord/agent.hpp"

#include <Eigen/Dense>

#include <limits>
#include <memory>
#include <stdexcept>

namespace sheafcoord {

LTISystem AgentModel::system() const {
  if (d < 1 || dt <= 0) throw std::invalid_argument("AgentModel: d >= 1 and dt > 0 required");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2 * d, 2 * d);
  A.topRightCorner(d, d) = dt * I;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2 * d, d);
  B.bottomRows(d) = dt * I;
  return {std::move(A), std::move(B)};
}

Eigen::VectorXd AgentModel::step(const Eigen::VectorXd& state,
                                 const Eigen::VectorXd& control) const {
  if (state.size() != 2 * d || control.size() != d) {
    throw std::invalid_argument("AgentModel::step: shape mismatch");
  }
  Eigen::VectorXd next(2 * d);
  next.head(d) = state.head(d) + dt * state.tail(d);
  next.tail(d) = state.tail(d) + dt * control;
  return next;
}

void AgentOCP::validate() const {
  spec.validate();
  const int n = spec.system.state_dim();
  const int m = spec.system.control_dim();
  if (Q.rows() != n || Q.cols() != n || x_ref.size() != n) {
    throw std::invalid_argument("AgentOCP: stage cost shape mismatch");
  }
  if (R.rows() != m || R.cols() != m) {
    throw std::invalid_argument("AgentOCP: control cost shape mismatch");
  }
  if (u_lo.size() != m || u_hi.size() != m) {
    throw std::invalid_argument("AgentOCP: control bounds shape mismatch");
  }
  if ((u_lo.array() > u_hi.array()).any()) {
    throw std::invalid_argument("AgentOCP: infeasible control bounds (lo > hi)");
  }
}

namespace {

/// Precomputed affine map traj = Phi u + phi and the trajectory quadratic of
/// the stage costs, shared by evaluate and prox.
struct TrajectoryQP {
  DynamicsSheafSpec spec;
  Eigen::MatrixXd Phi;      // trajectory_dim x (T-1)m
  Eigen::VectorXd phi;      // zero-control trajectory from c
  Eigen::MatrixXd Qtraj;    // stage-cost quadratic over the flat trajectory
  Eigen::VectorXd qtraj;    // stage-cost linear term
  double cost_offset = 0;   // constant so evaluate matches the stage-cost sum
  Eigen::MatrixXd H0;       // Phi^T Qtraj Phi
  Eigen::MatrixXd G;        // Phi^T Phi
  Eigen::MatrixXd PhiTQ;    // Phi^T Qtraj
  double lmax_H0 = 0;
  double lmax_G = 0;
  Eigen::VectorXd ulo, uhi;  // stacked per-step bounds
};

std::shared_ptr<const TrajectoryQP> build_trajectory_qp(const AgentOCP& ocp) {
  auto qp = std::make_shared<TrajectoryQP>();
  qp->spec = ocp.spec;
  const LTISystem& sys = ocp.spec.system;
  const int n = sys.state_dim();
  const int m = sys.control_dim();
  const int T = ocp.spec.horizon;
  const int nu = (T - 1) * m;
  const int dim = ocp.spec.trajectory_dim();

  const Eigen::MatrixXd U0 = Eigen::MatrixXd::Zero(m, T - 1);
  qp->phi = flatten_trajectory(ocp.spec, rollout_states(sys, ocp.spec.initial_state, U0),
                               U0);
  qp->Phi.resize(dim, nu);
  const Eigen::VectorXd c0 = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < nu; ++j) {
    Eigen::MatrixXd Uj = Eigen::MatrixXd::Zero(m, T - 1);
    Uj(j % m, j / m) = 1.0;
    qp->Phi.col(j) = flatten_trajectory(ocp.spec, rollout_states(sys, c0, Uj), Uj);
  }

  qp->Qtraj = Eigen::MatrixXd::Zero(dim, dim);
  qp->qtraj = Eigen::VectorXd::Zero(dim);
  qp->cost_offset = 0.0;
  for (int t = 0; t + 1 < T; ++t) {
    const int xs = t * (n + m);
    const int us = xs + n;
    qp->Qtraj.block(xs, xs, n, n) += ocp.Q;
    qp->Qtraj.block(us, us, m, m) += ocp.R;
    qp->qtraj.segment(xs, n) -= ocp.Q * ocp.x_ref;
    qp->cost_offset += 0.5 * ocp.x_ref.dot(ocp.Q * ocp.x_ref);
  }

  qp->PhiTQ = qp->Phi.transpose() * qp->Qtraj;
  qp->H0 = qp->PhiTQ * qp->Phi;
  qp->G = qp->Phi.transpose() * qp->Phi;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(qp->H0);
  qp->lmax_H0 = es0.eigenvalues().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esg(qp->G);
  qp->lmax_G = esg.eigenvalues().maxCoeff();

  qp->ulo.resize(nu);
  qp->uhi.resize(nu);
  for (int t = 0; t + 1 < T; ++t) {
    qp->ulo.segment(t * m, m) = ocp.u_lo;
    qp->uhi.segment(t * m, m) = ocp.u_hi;
  }
  return qp;
}

}  // namespace

NodeObjective agent_objective(const AgentOCP& ocp, double prox_tol, int prox_max_iters,
                              double feas_tol) {
  ocp.validate();
  const auto qp = build_trajectory_qp(ocp);

  NodeObjective obj;
  obj.dim = ocp.spec.trajectory_dim();

  obj.evaluate = [qp, feas_tol](const Eigen::VectorXd& traj) {
    const LTISystem& sys = qp->spec.system;
    const Eigen::MatrixXd X = trajectory_states(qp->spec, traj);
    const Eigen::MatrixXd U = trajectory_controls(qp->spec, traj);
    double defect = (X.col(0) - qp->spec.initial_state).lpNorm<Eigen::Infinity>();
    for (int t = 0; t + 1 < X.cols(); ++t) {
      defect = std::max(defect, (X.col(t + 1) - sys.A * X.col(t) - sys.B * U.col(t))
                                    .lpNorm<Eigen::Infinity>());
    }
    const Eigen::VectorXd uflat = Eigen::Map<const Eigen::VectorXd>(U.data(), U.size());
    defect = std::max(defect, (uflat - uflat.cwiseMax(qp->ulo).cwiseMin(qp->uhi))
                                  .lpNorm<Eigen::Infinity>());
    if (defect > feas_tol) return std::numeric_limits<double>::infinity();
    return 0.5 * traj.dot(qp->Qtraj * traj) + qp->qtraj.dot(traj) + qp->cost_offset;
  };

  obj.prox = [qp, prox_tol, prox_max_iters](const Eigen::VectorXd& v, double rho) -> Eigen::VectorXd {
    // minimize over u: (1/2)(Phi u + phi)^T Qtraj (.) + qtraj^T (.)
    //                  + (rho/2)||Phi u + phi - v||^2, u in the box.
    const Eigen::VectorXd b =
        qp->PhiTQ * qp->phi + qp->Phi.transpose() * (qp->qtraj + rho * (qp->phi - v));
    const Eigen::MatrixXd H = qp->H0 + rho * qp->G;
    const double h = 1.0 / (qp->lmax_H0 + rho * qp->lmax_G);
    // Start from the controls already in v (clamped): a warm start that
    // stays a pure function of the prox inputs.
    const Eigen::MatrixXd Uv = trajectory_controls(qp->spec, v);
    Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(Uv.data(), Uv.size())
                            .cwiseMax(qp->ulo)
                            .cwiseMin(qp->uhi);
    for (int it = 0; it < prox_max_iters; ++it) {
      const Eigen::VectorXd grad = H * u + b;
      const Eigen::VectorXd u_next =
          (u - h * grad).cwiseMax(qp->ulo).cwiseMin(qp->uhi);
      const double move = (u_next - u).lpNorm<Eigen::Infinity>();
      u = u_next;
      if (move <= prox_tol * h) break;
    }
    return Eigen::VectorXd(qp->Phi * u + qp->phi);
  };
  return obj;
}

HomologicalProgram single_agent_program(const AgentOCP& ocp) {
  ocp.validate();
  const int n = ocp.spec.system.state_dim();
  const int m = ocp.spec.system.control_dim();
  const int T = ocp.spec.horizon;
  DynamicsSheaf ds = build_dynamics_sheaf(ocp.spec);

  const double big = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd Qblk = Eigen::MatrixXd::Zero(n + m, n + m);
  Qblk.topLeftCorner(n, n) = ocp.Q;
  Qblk.bottomRightCorner(m, m) = ocp.R;
  Eigen::VectorXd qblk = Eigen::VectorXd::Zero(n + m);
  qblk.head(n) = -ocp.Q * ocp.x_ref;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n + m, -big);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(n + m, big);
  lo.tail(m) = ocp.u_lo;
  hi.tail(m) = ocp.u_hi;

  std::vector<NodeObjective> objectives;
  objectives.push_back(zero_objective(0));
  for (int t = 1; t < T; ++t) {
    objectives.push_back(box_quadratic_objective(Qblk, qblk, lo, hi));
  }
  objectives.push_back(zero_objective(n));
  return HomologicalProgram(ds.sheaf, ds.potentials, std::move(objectives));
}

}  // namespace sheafcoord
