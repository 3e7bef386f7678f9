#ifndef SHEAFCOORD_ADMM_HPP
#define SHEAFCOORD_ADMM_HPP

#include <optional>
#include <string>
#include <vector>

#include "sheafcoord/diffusion.hpp"
#include "sheafcoord/program.hpp"

namespace sheafcoord {

/// Inputs of the distributed ADMM solve.
struct AdmmParams {
  double rho = 1.0;    ///< step size
  double alpha = 1.0;  ///< diffusivity of the inner projection
  double eps1 = 1e-4;  ///< primal stop: ||x - z||_inf < eps1
  double eps2 = 1e-6;  ///< inner (diffusion / relaxed z) stationarity tolerance
  int max_outer = 500;            ///< K
  int diffusion_max_iters = 20000;
  /// Multiplier applied to eps2 after each outer iteration (> 0). 1 keeps
  /// the inner tolerance fixed; < 1 tightens it as the outer loop converges,
  /// > 1 loosens it.
  double eps2_growth = 1.0;

  void validate() const;
};

enum class AdmmStatus {
  Converged,        ///< primal gap dropped below eps1
  MaxIterations,    ///< hit K without reaching eps1 (a status, not an error)
  InnerSolverIssue, ///< some z-update did not reach its tolerance
};

struct AdmmIterate {
  int iter = 0;
  double primal_residual = 0.0;  ///< ||x - z||_inf
  double dual_residual = 0.0;    ///< rho * ||z - z_prev||
  double objective = 0.0;        ///< sum_i f_i(z_i)
  bool z_update_converged = true;
  double z_update_residual = 0.0;
};

struct AdmmReport {
  std::vector<AdmmIterate> iterates;
  AdmmStatus status = AdmmStatus::MaxIterations;
  bool projection_mode = true;  ///< false when the relaxed z-update ran
  std::string note;
};

struct AdmmSolution {
  Cochain0 z;
  Cochain0 y;
  Cochain0 x;
  AdmmReport report;
};

/// x-update: block i = prox_{f_i}(z_i - y_i, rho). Blocks are independent.
Cochain0 x_update(const HomologicalProgram& prog, const Cochain0& z, const Cochain0& y,
                  double rho);

/// Projection z-update: orthogonal projection of v onto C = ker L realized
/// by sheaf diffusion (valid when every potential is strongly convex).
DiffusionResult z_update_projection(const HomologicalProgram& prog, const Cochain0& v,
                                    const AdmmParams& params, double eps2);

struct RelaxedZResult {
  Cochain0 z;
  int iterations = 0;
  double grad_inf_norm = 0.0;
  bool converged = false;
};

/// Relaxed z-update for potentials violating the strong-convexity
/// assumption: gradient descent with backtracking on
///   g(z) = U(delta z) + (rho/2)||v - z||^2,   grad g(z) = L z + rho (z - v),
/// run until ||grad g||_inf <= eps2 or the iteration cap.
RelaxedZResult z_update_relaxed(const HomologicalProgram& prog, const Cochain0& v,
                                double rho, const AdmmParams& params, double eps2);

/// Scaled dual ascent y <- y + x - z.
Cochain0 y_update(const Cochain0& y, const Cochain0& x, const Cochain0& z);

/// Algorithm: loop x-update, z-update (projection mode when every potential
/// is strongly convex, relaxed mode otherwise), break once
/// ||x - z||_inf < eps1 (before the y-update), else y-update; at most
/// max_outer iterations.
AdmmSolution admm_solve(const HomologicalProgram& prog, const AdmmParams& params,
                        std::optional<Cochain0> z0 = std::nullopt,
                        std::optional<Cochain0> y0 = std::nullopt);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_ADMM_HPP
