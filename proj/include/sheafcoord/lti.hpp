#ifndef SHEAFCOORD_LTI_HPP
#define SHEAFCOORD_LTI_HPP

#include <Eigen/Core>

#include <memory>

#include "sheafcoord/potentials.hpp"
#include "sheafcoord/sheaf.hpp"

namespace sheafcoord {

/// Discrete LTI system x(t+1) = A x(t) + B u(t).
struct LTISystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;

  int state_dim() const { return static_cast<int>(A.rows()); }
  int control_dim() const { return static_cast<int>(B.cols()); }
  void validate() const;
};

/// The data of the dynamics-evolution sheaf on the path P_{T+1}: a system,
/// a horizon T >= 2 (states x(1..T), controls u(1..T-1)) and the initial
/// condition x(1) = c.
struct DynamicsSheafSpec {
  LTISystem system;
  int horizon = 2;  ///< T
  Eigen::VectorXd initial_state;

  void validate() const;
  /// Flattened trajectory dimension (T-1)(n+m) + n.
  int trajectory_dim() const;
};

/// Sheaf + potentials whose Laplacian zeros are exactly the admissible
/// trajectories from c: stalks R^0 at v0, R^n + R^m at v1..v_{T-1}, R^n at
/// v_T; restrictions [A B] into the next edge and the first projection back;
/// edge e0 carries a displacement potential pinning x(1) = c, all other
/// edges the consensus potential.
struct DynamicsSheaf {
  std::shared_ptr<const CellularSheaf> sheaf;
  std::shared_ptr<const PotentialAssignment> potentials;
};

DynamicsSheaf build_dynamics_sheaf(const DynamicsSheafSpec& spec);

/// States produced by rolling the controls out from c; column t is x(t+1).
/// U has one column per control step (m x T-1); result is n x T.
Eigen::MatrixXd rollout_states(const LTISystem& system, const Eigen::VectorXd& c,
                               const Eigen::MatrixXd& U);

/// Pack states (n x T) and controls (m x T-1) into a 0-cochain of the
/// dynamics sheaf (the R^0 block at v0 stays empty).
Cochain0 trajectory_cochain(const DynamicsSheafSpec& spec, const Eigen::MatrixXd& X,
                            const Eigen::MatrixXd& U);

/// Flat trajectory layout [x(1); u(1); ...; x(T-1); u(T-1); x(T)], the node
/// variable of a coordination program.
Eigen::VectorXd flatten_trajectory(const DynamicsSheafSpec& spec, const Eigen::MatrixXd& X,
                                   const Eigen::MatrixXd& U);
Eigen::MatrixXd trajectory_states(const DynamicsSheafSpec& spec, const Eigen::VectorXd& traj);
Eigen::MatrixXd trajectory_controls(const DynamicsSheafSpec& spec, const Eigen::VectorXd& traj);

/// Max edge-block norm of delta x - b over the dynamics sheaf: zero exactly
/// on admissible trajectories (the affine feasible set when c != 0).
double admissibility_defect(const DynamicsSheaf& ds, const Cochain0& x);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_LTI_HPP
