#ifndef SHEAFCOORD_DIFFUSION_HPP
#define SHEAFCOORD_DIFFUSION_HPP

#include <vector>

#include "sheafcoord/laplacian.hpp"

namespace sheafcoord {

/// Parameters of the sheaf-diffusion integrator for xdot = -alpha L x.
struct DiffusionParams {
  double alpha = 1.0;      ///< diffusivity, > 0
  double step = 0.0;       ///< Euler step h, > 0
  double tol = 1e-8;       ///< stationarity tolerance on ||L x||_inf
  int max_iters = 20000;
  bool record_trace = false;  ///< keep the x iterates (for conservation checks)

  /// step = 0.5 / (alpha * ||delta||^2), a stable default for the linear case.
  static DiffusionParams defaults(const CellularSheaf& sheaf, double alpha = 1.0,
                                  double tol = 1e-8, int max_iters = 20000);

  void validate() const;
};

struct DiffusionResult {
  Cochain0 x_final;
  int iterations = 0;
  double residual = 0.0;          ///< ||L x_final||_inf
  std::vector<double> psi_trace;  ///< Psi(x) = U(delta x) per accepted iterate
  bool converged = false;
  bool step_underflow = false;    ///< backtracking could not find a descent step
  std::vector<Cochain0> x_trace;  ///< populated when record_trace is set
};

/// Explicit Euler on xdot = -alpha L x with backtracking step halving
/// whenever Psi would increase, run until ||L x||_inf <= tol or max_iters.
///
/// With strongly convex potentials whose minimizer cochain b lies in
/// image delta, the limit is the orthogonal projection of x0 onto
/// delta^+ b + ker delta. For nonconvex potentials this is plain gradient
/// flow of Psi; only local stationarity is claimed.
DiffusionResult diffuse(const LaplacianContext& ctx, const Cochain0& x0,
                        const DiffusionParams& params);

/// Direct computation of proj_{ker delta}(x0) + delta^+ b via a dense SVD
/// of the assembled coboundary. Requires a strongly convex assignment
/// (throws otherwise). Independent of the iterative diffusion path; serves
/// as its oracle.
Cochain0 harmonic_projection_oracle(const LaplacianContext& ctx, const Cochain0& x0);

/// Max over the trace of || proj_{ker delta}(x(t)) - proj_{ker delta}(x(0)) ||.
/// The diffusion velocity lies in image delta^T, so this deviation is a
/// conserved quantity up to roundoff.
double kernel_conservation_check(const LaplacianContext& ctx,
                                 const std::vector<Cochain0>& trace);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_DIFFUSION_HPP
