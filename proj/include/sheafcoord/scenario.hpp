#ifndef SHEAFCOORD_SCENARIO_HPP
#define SHEAFCOORD_SCENARIO_HPP

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sheafcoord/admm.hpp"
#include "sheafcoord/agent.hpp"

namespace sheafcoord {

enum class ScenarioKind {
  Consensus,
  StationaryFormation,
  Flocking,
  MovingFormation,
  Multidomain,
};

const char* to_string(ScenarioKind kind);

/// Named projections from an agent state vec(p, v) in R^{2d} onto a
/// coordination edge stalk.
enum class Selector {
  FullState,   ///< identity, R^{2d}
  Position,    ///< p, R^d
  Velocity,    ///< v, R^d
  XPosition,   ///< p_x, R^1
  PlanarLift,  ///< (p_x, p_y, 0), R^3; the planar agent seen in 3-space
};

const char* to_string(Selector sel);

/// The restriction matrix of a selector for an agent of spatial dimension d.
Eigen::MatrixXd selector_matrix(Selector sel, int d);
int selector_dim(Selector sel, int d);

/// How one agent starts: pinned, or drawn uniformly (positions and
/// velocities independently) from [-range, range].
struct InitialState {
  bool uniform = true;
  double range = 5.0;
  Eigen::VectorXd position;  ///< used when uniform is false
  Eigen::VectorXd velocity;
};

struct ScenarioAgent {
  AgentModel model;
  Eigen::MatrixXd Q;      ///< tracked-components weight (state_dim square)
  Eigen::VectorXd x_ref;  ///< tracking target
  double r_weight = 0.1;  ///< control-effort weight, R = r_weight * I
  InitialState init;
};

/// One coordination edge: endpoints in the communication graph, the
/// selector applied on each side, and the edge potential.
struct CoordinationEdge {
  int i = 0;
  int j = 0;
  Selector selector_i = Selector::FullState;
  Selector selector_j = Selector::FullState;
  EdgePotential potential = EdgePotential::zero(1);
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::Consensus;
  std::vector<ScenarioAgent> agents;
  std::vector<CoordinationEdge> edges;
  int horizon = 10;        ///< T
  double control_lo = -2.0;
  double control_hi = 2.0;
  AdmmParams admm;
  int mpc_steps = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draw (or copy) the initial state of every agent; uniform draws use the
/// scenario seed.
std::vector<Eigen::VectorXd> initial_states(const Scenario& scenario);

/// The multi-agent coordination program for the current states: node
/// variables are whole agent trajectories, node objectives are the agents'
/// OCPs, and the coordination sheaf acts on terminal states through the
/// selectors composed with terminal-state extraction.
HomologicalProgram build_coordination_program(const Scenario& scenario,
                                              const std::vector<Eigen::VectorXd>& states);

struct MpcStepResult {
  std::vector<Eigen::VectorXd> controls;  ///< first control input per agent, clamped
  AdmmReport report;
  bool solver_failed = false;  ///< fell back to zero controls
};

/// One MPC step: build the program, run the solver, extract and clamp each
/// agent's first control input. Solver failures fall back to zero controls
/// with the flag set.
MpcStepResult mpc_step(const Scenario& scenario, const std::vector<Eigen::VectorXd>& states);

struct StepRecord {
  int step = 0;
  std::vector<Eigen::VectorXd> states;    ///< state before applying the control
  std::vector<Eigen::VectorXd> controls;  ///< applied control
  std::vector<std::pair<std::string, double>> metrics;
  int admm_iterations = 0;
  double admm_primal_residual = 0.0;
  bool solver_failed = false;
  std::vector<AdmmIterate> admm_iterates;
};

struct TrajectoryLog {
  std::string scenario_name;
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;
  std::vector<Eigen::VectorXd> final_states;
};

/// Coordination metrics recomputed from states only.
std::vector<std::pair<std::string, double>> scenario_metrics(
    const Scenario& scenario, const std::vector<Eigen::VectorXd>& states);

/// Run the configured number of MPC steps from the (seeded) initial states,
/// propagating each agent with its own dynamics and logging one record per
/// executed step. Step failures are recorded and the partial log returned.
TrajectoryLog run_mpc(const Scenario& scenario);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_SCENARIO_HPP
