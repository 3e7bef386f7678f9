#include "sheafcoord/multidomain.hpp"

#include <stdexcept>

namespace sheafcoord {

namespace {

ScenarioAgent actuation_only_agent(int d, double dt) {
  ScenarioAgent a;
  a.model = AgentModel{d, dt};
  a.Q = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  a.x_ref = Eigen::VectorXd::Zero(2 * d);
  a.r_weight = 0.1;
  a.init.uniform = true;
  a.init.range = 5.0;
  return a;
}

/// Velocity-consensus potential on a full-state stalk (p, v) in R^{2d}.
EdgePotential velocity_consensus(int d) {
  std::vector<PotentialTerm> terms;
  terms.push_back({d, EdgePotential::quadratic(d)});
  return EdgePotential::sum(2 * d, std::move(terms));
}

}  // namespace

Scenario build_multidomain_scenario(const MultidomainSpec& spec) {
  if (spec.uav_count < 1 || spec.usv_count < 1 || spec.uuv_count < 1) {
    throw std::invalid_argument("build_multidomain_scenario: every team needs at least one vehicle");
  }

  Scenario sc;
  sc.name = "multidomain";
  sc.kind = ScenarioKind::Multidomain;
  sc.horizon = spec.horizon;
  sc.mpc_steps = spec.mpc_steps;
  sc.seed = spec.seed;
  sc.admm = spec.admm;

  // Node layout: UAVs, then USVs, then UUVs.
  const int uav0 = 0;
  const int usv0 = spec.uav_count;
  const int uuv0 = spec.uav_count + spec.usv_count;
  for (int i = 0; i < spec.uav_count; ++i) sc.agents.push_back(actuation_only_agent(3, spec.dt));
  for (int i = 0; i < spec.usv_count; ++i) sc.agents.push_back(actuation_only_agent(2, spec.dt));
  for (int i = 0; i < spec.uuv_count; ++i) sc.agents.push_back(actuation_only_agent(3, spec.dt));

  // UAV team: dense network, velocity consensus on full-state stalks.
  for (int a = 0; a < spec.uav_count; ++a) {
    for (int b = a + 1; b < spec.uav_count; ++b) {
      sc.edges.push_back({uav0 + a, uav0 + b, Selector::FullState, Selector::FullState,
                          velocity_consensus(3)});
    }
  }

  // USV team: line formation on consecutive pairs, idle links otherwise.
  for (int a = 0; a < spec.usv_count; ++a) {
    for (int b = a + 1; b < spec.usv_count; ++b) {
      if (b == a + 1) {
        Eigen::VectorXd target(2);
        target << -spec.usv_spacing, 0.0;  // p_a - p_b for a left-to-right line
        sc.edges.push_back({usv0 + a, usv0 + b, Selector::Position, Selector::Position,
                            EdgePotential::displacement(target)});
      } else {
        sc.edges.push_back({usv0 + a, usv0 + b, Selector::Position, Selector::Position,
                            EdgePotential::zero(2)});
      }
    }
  }

  // UUV team: velocity consensus plus pairwise distance keeping.
  for (int a = 0; a < spec.uuv_count; ++a) {
    for (int b = a + 1; b < spec.uuv_count; ++b) {
      std::vector<PotentialTerm> terms;
      terms.push_back({0, EdgePotential::fixed_distance_sq(3, spec.r_uuv_sq)});
      terms.push_back({3, EdgePotential::quadratic(3)});
      sc.edges.push_back({uuv0 + a, uuv0 + b, Selector::FullState, Selector::FullState,
                          EdgePotential::sum(6, std::move(terms))});
    }
  }

  // Cross-team relays through the designated USV (round robin), comparing
  // 3-space positions against the planar lift of the surface vehicle.
  for (int a = 0; a < spec.uav_count; ++a) {
    const int usv = usv0 + (a % spec.usv_count);
    sc.edges.push_back({uav0 + a, usv, Selector::Position, Selector::PlanarLift,
                        EdgePotential::fixed_distance_norm(3, spec.r_uav_usv)});
  }
  for (int a = 0; a < spec.uuv_count; ++a) {
    const int usv = usv0 + (a % spec.usv_count);
    sc.edges.push_back({uuv0 + a, usv, Selector::Position, Selector::PlanarLift,
                        EdgePotential::fixed_distance_sq(3, spec.r_uuv_usv_sq)});
  }

  sc.validate();
  return sc;
}

}  // namespace sheafcoord
