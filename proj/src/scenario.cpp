#include "sheafcoord/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

namespace sheafcoord {

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Consensus: return "consensus";
    case ScenarioKind::StationaryFormation: return "stationary_formation";
    case ScenarioKind::Flocking: return "flocking";
    case ScenarioKind::MovingFormation: return "moving_formation";
    case ScenarioKind::Multidomain: return "multidomain";
  }
  return "unknown";
}

const char* to_string(Selector sel) {
  switch (sel) {
    case Selector::FullState: return "full_state";
    case Selector::Position: return "position";
    case Selector::Velocity: return "velocity";
    case Selector::XPosition: return "x_position";
    case Selector::PlanarLift: return "planar_lift";
  }
  return "unknown";
}

int selector_dim(Selector sel, int d) {
  switch (sel) {
    case Selector::FullState: return 2 * d;
    case Selector::Position: return d;
    case Selector::Velocity: return d;
    case Selector::XPosition: return 1;
    case Selector::PlanarLift: return 3;
  }
  return 0;
}

Eigen::MatrixXd selector_matrix(Selector sel, int d) {
  const int n = 2 * d;
  switch (sel) {
    case Selector::FullState:
      return Eigen::MatrixXd::Identity(n, n);
    case Selector::Position: {
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, n);
      S.leftCols(d).setIdentity();
      return S;
    }
    case Selector::Velocity: {
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, n);
      S.rightCols(d).setIdentity();
      return S;
    }
    case Selector::XPosition: {
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(1, n);
      S(0, 0) = 1.0;
      return S;
    }
    case Selector::PlanarLift: {
      if (d < 2) throw std::invalid_argument("planar_lift needs d >= 2");
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(3, n);
      S(0, 0) = 1.0;
      S(1, 1) = 1.0;
      return S;
    }
  }
  throw std::invalid_argument("unknown selector");
}

void Scenario::validate() const {
  if (agents.empty()) throw std::invalid_argument("Scenario: no agents");
  if (horizon < 2) throw std::invalid_argument("Scenario: horizon must be >= 2");
  if (control_lo > control_hi) throw std::invalid_argument("Scenario: control_lo > control_hi");
  if (mpc_steps < 1) throw std::invalid_argument("Scenario: mpc_steps must be >= 1");
  admm.validate();
  const int N = static_cast<int>(agents.size());
  for (const auto& a : agents) {
    const int n = a.model.state_dim();
    if (a.Q.rows() != n || a.Q.cols() != n || a.x_ref.size() != n) {
      throw std::invalid_argument("Scenario: agent stage cost shape mismatch");
    }
    if (!a.init.uniform &&
        (a.init.position.size() != a.model.d || a.init.velocity.size() != a.model.d)) {
      throw std::invalid_argument("Scenario: fixed initial state shape mismatch");
    }
  }
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= N || e.j >= N || e.i == e.j) {
      throw std::invalid_argument("Scenario: bad edge endpoints");
    }
    const int di = selector_dim(e.selector_i, agents[static_cast<size_t>(e.i)].model.d);
    const int dj = selector_dim(e.selector_j, agents[static_cast<size_t>(e.j)].model.d);
    if (di != dj) {
      throw std::invalid_argument("Scenario: selector dims disagree on an edge");
    }
    if (e.potential.dim() != di) {
      throw std::invalid_argument("Scenario: potential dim does not match edge stalk");
    }
  }
}

std::vector<Eigen::VectorXd> initial_states(const Scenario& scenario) {
  std::mt19937_64 rng(scenario.seed);
  std::vector<Eigen::VectorXd> states;
  states.reserve(scenario.agents.size());
  for (const auto& agent : scenario.agents) {
    const int d = agent.model.d;
    Eigen::VectorXd s(2 * d);
    if (agent.init.uniform) {
      std::uniform_real_distribution<double> unif(-agent.init.range, agent.init.range);
      for (int k = 0; k < 2 * d; ++k) s(k) = unif(rng);
    } else {
      s.head(d) = agent.init.position;
      s.tail(d) = agent.init.velocity;
    }
    states.push_back(std::move(s));
  }
  return states;
}

namespace {

DynamicsSheafSpec agent_spec(const Scenario& scenario, int i, const Eigen::VectorXd& state) {
  const auto& agent = scenario.agents[static_cast<size_t>(i)];
  return {agent.model.system(), scenario.horizon, state};
}

AgentOCP agent_ocp(const Scenario& scenario, int i, const Eigen::VectorXd& state) {
  const auto& agent = scenario.agents[static_cast<size_t>(i)];
  const int m = agent.model.control_dim();
  AgentOCP ocp;
  ocp.spec = agent_spec(scenario, i, state);
  ocp.Q = agent.Q;
  ocp.x_ref = agent.x_ref;
  ocp.R = agent.r_weight * Eigen::MatrixXd::Identity(m, m);
  ocp.u_lo = Eigen::VectorXd::Constant(m, scenario.control_lo);
  ocp.u_hi = Eigen::VectorXd::Constant(m, scenario.control_hi);
  return ocp;
}

/// Terminal-state extraction composed with the coordination selector.
Eigen::MatrixXd lifted_restriction(const Scenario& scenario, int agent_idx, Selector sel) {
  const auto& agent = scenario.agents[static_cast<size_t>(agent_idx)];
  const int n = agent.model.state_dim();
  const int m = agent.model.control_dim();
  const int T = scenario.horizon;
  const int traj_dim = (T - 1) * (n + m) + n;
  const Eigen::MatrixXd S = selector_matrix(sel, agent.model.d);
  Eigen::MatrixXd lifted = Eigen::MatrixXd::Zero(S.rows(), traj_dim);
  lifted.rightCols(n) = S;
  return lifted;
}

}  // namespace

HomologicalProgram build_coordination_program(const Scenario& scenario,
                                              const std::vector<Eigen::VectorXd>& states) {
  scenario.validate();
  const int N = static_cast<int>(scenario.agents.size());
  if (static_cast<int>(states.size()) != N) {
    throw std::invalid_argument("build_coordination_program: one state per agent required");
  }

  std::vector<std::pair<int, int>> edge_pairs;
  edge_pairs.reserve(scenario.edges.size());
  for (const auto& e : scenario.edges) edge_pairs.emplace_back(e.i, e.j);
  Graph comm(N, edge_pairs);

  std::vector<int> node_dims(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    node_dims[static_cast<size_t>(i)] = agent_spec(scenario, i, states[static_cast<size_t>(i)])
                                            .trajectory_dim();
  }
  std::vector<int> edge_dims;
  std::vector<EdgeRestriction> restrictions;
  std::vector<EdgePotential> potentials;
  for (size_t k = 0; k < scenario.edges.size(); ++k) {
    const CoordinationEdge& ce = scenario.edges[k];
    const Edge& canonical = comm.edge(static_cast<int>(k));
    const bool flipped = canonical.tail != ce.i;
    const Selector sel_tail = flipped ? ce.selector_j : ce.selector_i;
    const Selector sel_head = flipped ? ce.selector_i : ce.selector_j;
    edge_dims.push_back(ce.potential.dim());
    restrictions.push_back({lifted_restriction(scenario, canonical.tail, sel_tail),
                            lifted_restriction(scenario, canonical.head, sel_head)});
    // Canonical delta takes tail minus head; a flipped edge negates the
    // difference, which only matters for asymmetric potentials.
    if (flipped && ce.potential.kind() == PotentialKind::Displacement) {
      potentials.push_back(EdgePotential::displacement(-ce.potential.target(),
                                                       ce.potential.scale()));
    } else {
      potentials.push_back(ce.potential);
    }
  }

  auto sheaf = std::make_shared<CellularSheaf>(std::move(comm), std::move(node_dims),
                                               std::move(edge_dims), std::move(restrictions));
  auto pa = std::make_shared<PotentialAssignment>(*sheaf, std::move(potentials));

  std::vector<NodeObjective> objectives;
  objectives.reserve(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    objectives.push_back(agent_objective(agent_ocp(scenario, i, states[static_cast<size_t>(i)])));
  }
  return HomologicalProgram(std::move(sheaf), std::move(pa), std::move(objectives));
}

MpcStepResult mpc_step(const Scenario& scenario, const std::vector<Eigen::VectorXd>& states) {
  MpcStepResult out;
  const int N = static_cast<int>(scenario.agents.size());
  out.controls.resize(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    out.controls[static_cast<size_t>(i)] =
        Eigen::VectorXd::Zero(scenario.agents[static_cast<size_t>(i)].model.control_dim());
  }
  try {
    if (scenario.edges.empty()) {
      // No coordination constraint: solve each agent's optimal control
      // problem as its own time-unrolled homological program.
      for (int i = 0; i < N; ++i) {
        HomologicalProgram prog = single_agent_program(agent_ocp(
            scenario, i, states[static_cast<size_t>(i)]));
        AdmmSolution sol = admm_solve(prog, scenario.admm);
        const int m = scenario.agents[static_cast<size_t>(i)].model.control_dim();
        out.controls[static_cast<size_t>(i)] =
            sol.z.blocks[1]
                .tail(m)
                .cwiseMax(Eigen::VectorXd::Constant(m, scenario.control_lo))
                .cwiseMin(Eigen::VectorXd::Constant(m, scenario.control_hi));
        if (sol.report.iterates.size() > out.report.iterates.size()) {
          out.report = std::move(sol.report);
        }
      }
      return out;
    }
    HomologicalProgram prog = build_coordination_program(scenario, states);
    // Warm start z with each agent's zero-control rollout: feasible for the
    // dynamics and deterministic.
    Cochain0 z0 = prog.sheaf().zero_cochain0();
    for (int i = 0; i < N; ++i) {
      const DynamicsSheafSpec spec = {scenario.agents[static_cast<size_t>(i)].model.system(),
                                      scenario.horizon, states[static_cast<size_t>(i)]};
      const Eigen::MatrixXd U0 = Eigen::MatrixXd::Zero(spec.system.control_dim(),
                                                       scenario.horizon - 1);
      z0.blocks[static_cast<size_t>(i)] =
          flatten_trajectory(spec, rollout_states(spec.system, states[static_cast<size_t>(i)], U0),
                             U0);
    }
    AdmmSolution sol = admm_solve(prog, scenario.admm, z0);
    out.report = std::move(sol.report);
    for (int i = 0; i < N; ++i) {
      const DynamicsSheafSpec spec = {scenario.agents[static_cast<size_t>(i)].model.system(),
                                      scenario.horizon, states[static_cast<size_t>(i)]};
      const Eigen::MatrixXd U = trajectory_controls(spec, sol.z.blocks[static_cast<size_t>(i)]);
      out.controls[static_cast<size_t>(i)] =
          U.col(0)
              .cwiseMax(Eigen::VectorXd::Constant(U.rows(), scenario.control_lo))
              .cwiseMin(Eigen::VectorXd::Constant(U.rows(), scenario.control_hi));
    }
  } catch (const std::exception&) {
    out.solver_failed = true;  // keep the zero-control fallback
  }
  return out;
}

std::vector<std::pair<std::string, double>> scenario_metrics(
    const Scenario& scenario, const std::vector<Eigen::VectorXd>& states) {
  const int N = static_cast<int>(states.size());
  const auto spread_over = [&](auto component_of, int count) {
    double spread = 0.0;
    for (int k = 0; k < count; ++k) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (int i = 0; i < N; ++i) {
        const double v = component_of(i, k);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      spread = std::max(spread, hi - lo);
    }
    return spread;
  };

  const auto position = [&](int i) {
    const int d = scenario.agents[static_cast<size_t>(i)].model.d;
    return Eigen::VectorXd(states[static_cast<size_t>(i)].head(d));
  };
  const auto velocity = [&](int i) {
    const int d = scenario.agents[static_cast<size_t>(i)].model.d;
    return Eigen::VectorXd(states[static_cast<size_t>(i)].tail(d));
  };

  int min_d = std::numeric_limits<int>::max();
  int max_d = 0;
  for (const auto& a : scenario.agents) {
    min_d = std::min(min_d, a.model.d);
    max_d = std::max(max_d, a.model.d);
  }

  std::vector<std::pair<std::string, double>> metrics;

  const double x_spread = spread_over([&](int i, int) { return position(i)(0); }, 1);
  metrics.emplace_back("x_spread", x_spread);

  const double velocity_spread = spread_over(
      [&](int i, int k) {
        const Eigen::VectorXd v = velocity(i);
        return k < v.size() ? v(k) : 0.0;  // planar agents have zero out-of-plane motion
      },
      max_d);
  metrics.emplace_back("velocity_spread", velocity_spread);

  // Pairwise distances in the common (zero-padded) position space.
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      Eigen::VectorXd pi = Eigen::VectorXd::Zero(max_d);
      Eigen::VectorXd pj = Eigen::VectorXd::Zero(max_d);
      pi.head(position(i).size()) = position(i);
      pj.head(position(j).size()) = position(j);
      const double dist = (pi - pj).norm();
      dmin = std::min(dmin, dist);
      dmax = std::max(dmax, dist);
    }
  }
  if (N > 1) {
    metrics.emplace_back("min_pairwise_distance", dmin);
    metrics.emplace_back("max_pairwise_distance", dmax);
  }

  // Formation error: max over displacement edges of the position-component
  // defect of the selector difference against the target.
  double formation_error = 0.0;
  bool has_formation_edge = false;
  for (const auto& e : scenario.edges) {
    if (e.potential.kind() != PotentialKind::Displacement) continue;
    has_formation_edge = true;
    const int di = scenario.agents[static_cast<size_t>(e.i)].model.d;
    const int dj = scenario.agents[static_cast<size_t>(e.j)].model.d;
    const Eigen::VectorXd yi = selector_matrix(e.selector_i, di) * states[static_cast<size_t>(e.i)];
    const Eigen::VectorXd yj = selector_matrix(e.selector_j, dj) * states[static_cast<size_t>(e.j)];
    const Eigen::VectorXd defect = yi - yj - e.potential.target();
    // Position components of the stalk: all of it for position selectors,
    // the leading d entries for full-state stalks.
    int pos_len = static_cast<int>(defect.size());
    if (e.selector_i == Selector::FullState) pos_len = di;
    if (e.selector_i == Selector::Velocity) pos_len = 0;
    if (pos_len > 0) {
      formation_error = std::max(formation_error, defect.head(pos_len).norm());
    }
  }
  if (has_formation_edge) metrics.emplace_back("formation_error", formation_error);

  return metrics;
}

TrajectoryLog run_mpc(const Scenario& scenario) {
  scenario.validate();
  TrajectoryLog log;
  log.scenario_name = scenario.name;
  log.seed = scenario.seed;

  std::vector<Eigen::VectorXd> states = initial_states(scenario);
  for (int step = 0; step < scenario.mpc_steps; ++step) {
    MpcStepResult result = mpc_step(scenario, states);
    StepRecord rec;
    rec.step = step;
    rec.states = states;
    rec.controls = result.controls;
    rec.metrics = scenario_metrics(scenario, states);
    rec.solver_failed = result.solver_failed;
    if (!result.report.iterates.empty()) {
      rec.admm_iterations = static_cast<int>(result.report.iterates.size());
      rec.admm_primal_residual = result.report.iterates.back().primal_residual;
    }
    rec.admm_iterates = result.report.iterates;
    log.steps.push_back(std::move(rec));

    for (size_t i = 0; i < states.size(); ++i) {
      states[i] = scenario.agents[i].model.step(states[i], result.controls[i]);
    }
  }
  log.final_states = states;
  return log;
}

}  // namespace sheafcoord
