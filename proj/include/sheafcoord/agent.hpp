#ifndef SHEAFCOORD_AGENT_HPP
#define SHEAFCOORD_AGENT_HPP

#include <Eigen/Core>

#include "sheafcoord/lti.hpp"
#include "sheafcoord/objectives.hpp"
#include "sheafcoord/program.hpp"

namespace sheafcoord {

/// Double-integrator agent in R^d, Euler-discretized with step dt:
/// p+ = p + dt v, v+ = v + dt u. State is vec(p, v) in R^{2d}.
struct AgentModel {
  int d = 2;
  double dt = 0.1;

  int state_dim() const { return 2 * d; }
  int control_dim() const { return d; }
  LTISystem system() const;
  /// One Euler step of the physical dynamics.
  Eigen::VectorXd step(const Eigen::VectorXd& state, const Eigen::VectorXd& control) const;
};

/// One agent's finite-horizon optimal control problem: dynamics sheaf data,
/// a constant quadratic stage cost
///   f^t(x, u) = (1/2)(x - x_ref)^T Q (x - x_ref) + (1/2) u^T R u
/// for t = 1..T-1, and a per-dimension control box.
struct AgentOCP {
  DynamicsSheafSpec spec;
  Eigen::MatrixXd Q;
  Eigen::VectorXd x_ref;
  Eigen::MatrixXd R;
  Eigen::VectorXd u_lo;
  Eigen::VectorXd u_hi;

  void validate() const;
};

/// The OCP as a NodeObjective over the flat trajectory variable: evaluate is
/// the stage-cost sum plus the indicator of the admissible set (dynamics
/// from c, control box); prox solves the box-constrained LQ trajectory
/// problem with states eliminated by rollout (projected gradient over the
/// controls).
NodeObjective agent_objective(const AgentOCP& ocp, double prox_tol = 1e-9,
                              int prox_max_iters = 20000, double feas_tol = 1e-6);

/// The OCP as a homological program over its own time-unrolled dynamics
/// sheaf: one node per time step carrying the stage cost (plus the control
/// box) as its objective, with the dynamics and the initial condition
/// enforced by the edge potentials. This is the single-agent form that the
/// distributed solver handles directly.
HomologicalProgram single_agent_program(const AgentOCP& ocp);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_AGENT_HPP
