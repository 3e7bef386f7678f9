#ifndef SHEAFCOORD_MULTIDOMAIN_HPP
#define SHEAFCOORD_MULTIDOMAIN_HPP

#include "sheafcoord/scenario.hpp"

namespace sheafcoord {

/// Multi-domain vehicle team: UAVs and UUVs move in 3-space, USVs on the
/// surface plane. Teams are internally fully connected; each UAV and each
/// UUV holds a link to a designated USV (round robin).
struct MultidomainSpec {
  int uav_count = 2;
  int usv_count = 2;
  int uuv_count = 2;
  double r_uav_usv = 3.0;      ///< desired UAV-USV communication distance
  double r_uuv_usv_sq = 9.0;   ///< squared UUV-USV communication distance
  double r_uuv_sq = 4.0;       ///< squared UUV-UUV distance
  double usv_spacing = 2.0;    ///< USV line-formation spacing
  double dt = 0.1;
  int horizon = 10;
  int mpc_steps = 10;
  std::uint64_t seed = 0;
  AdmmParams admm;
};

/// Heterogeneous-stalk scenario over the UAV/USV/UUV topology: USV grid
/// formation (displacement on planar positions), UAV and UUV velocity
/// consensus, UUV pairwise distance keeping, and cross-team fixed-distance
/// potentials through position / planar-lift restrictions.
Scenario build_multidomain_scenario(const MultidomainSpec& spec);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_MULTIDOMAIN_HPP
