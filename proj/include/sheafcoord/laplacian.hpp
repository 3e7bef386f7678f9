#ifndef SHEAFCOORD_LAPLACIAN_HPP
#define SHEAFCOORD_LAPLACIAN_HPP

#include <Eigen/Core>

#include <map>

#include "sheafcoord/potentials.hpp"
#include "sheafcoord/sheaf.hpp"

namespace sheafcoord {

/// A sheaf together with its edge potentials. The induced nonlinear
/// Laplacian is L = delta^T o grad U o delta; with quadratic potentials
/// everywhere it reduces to the linear Laplacian delta^T delta.
struct LaplacianContext {
  const CellularSheaf& sheaf;
  const PotentialAssignment& potentials;
};

/// L x = delta^T (grad U (delta x)).
Cochain0 apply_laplacian(const LaplacianContext& ctx, const Cochain0& x);

/// Block i of the Laplacian computed from local data only:
///   (L x)_i = sum_{j in N_i} +/- F_{i <| ij}^T grad U_ij(delta-block of ij),
/// where the gradient is evaluated at the canonically oriented difference
/// and the sign is + when i is the edge tail, - otherwise. This matches the
/// global form for every potential, including ones without odd gradients.
///
/// neighbor_states must cover exactly N_i; throws on a missing neighbor.
Eigen::VectorXd apply_laplacian_local(const LaplacianContext& ctx, int node,
                                      const Eigen::VectorXd& x_i,
                                      const std::map<int, Eigen::VectorXd>& neighbor_states);

/// Psi(x) = U(delta x), the Lyapunov function of the diffusion dynamics.
double laplacian_potential(const LaplacianContext& ctx, const Cochain0& x);

/// Power-iteration estimate of ||delta||^2 = lambda_max(delta^T delta),
/// padded by 10%. Deterministic (fixed internal seed).
double estimate_coboundary_norm_sq(const CellularSheaf& sheaf, int iters = 60);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_LAPLACIAN_HPP
