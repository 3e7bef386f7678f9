#include "sheafcoord/diffusion.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace sheafcoord {

DiffusionParams DiffusionParams::defaults(const CellularSheaf& sheaf, double alpha,
                                          double tol, int max_iters) {
  DiffusionParams p;
  p.alpha = alpha;
  const double lam = estimate_coboundary_norm_sq(sheaf);
  p.step = lam > 0 ? 0.5 / (alpha * lam) : 1.0;
  p.tol = tol;
  p.max_iters = max_iters;
  return p;
}

void DiffusionParams::validate() const {
  if (alpha <= 0 || step <= 0 || tol <= 0 || max_iters <= 0) {
    throw std::invalid_argument("DiffusionParams: alpha, step, tol, max_iters must be positive");
  }
}

DiffusionResult diffuse(const LaplacianContext& ctx, const Cochain0& x0,
                        const DiffusionParams& params) {
  params.validate();
  ctx.sheaf.require_cochain0(x0);

  DiffusionResult res;
  Cochain0 x = x0;
  double psi = laplacian_potential(ctx, x);
  res.psi_trace.push_back(psi);
  if (params.record_trace) res.x_trace.push_back(x);

  const double min_step = params.step * 1e-12;
  double h = params.step;

  Cochain0 lx = apply_laplacian(ctx, x);
  res.residual = lx.inf_norm();
  int it = 0;
  while (res.residual > params.tol && it < params.max_iters) {
    // Backtrack until Psi does not increase (gradient flow is a descent
    // direction for Psi, so sufficiently small h always works).
    bool accepted = false;
    while (h >= min_step) {
      Cochain0 trial = x;
      for (size_t k = 0; k < trial.blocks.size(); ++k) {
        trial.blocks[k] -= (params.alpha * h) * lx.blocks[k];
      }
      const double psi_trial = laplacian_potential(ctx, trial);
      if (psi_trial <= psi) {
        x = std::move(trial);
        psi = psi_trial;
        accepted = true;
        break;
      }
      h *= 0.5;
    }
    if (!accepted) {
      res.step_underflow = true;
      break;
    }
    ++it;
    res.psi_trace.push_back(psi);
    if (params.record_trace) res.x_trace.push_back(x);
    lx = apply_laplacian(ctx, x);
    res.residual = lx.inf_norm();
    // Let the step recover after a backtrack, capped at the base step.
    h = std::min(2.0 * h, params.step);
  }

  res.x_final = std::move(x);
  res.iterations = it;
  res.converged = res.residual <= params.tol;
  return res;
}

namespace {

/// Dense pseudoinverse application helpers built on one SVD of the
/// assembled coboundary.
struct DenseCoboundary {
  Eigen::MatrixXd D;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  double rank_tol;

  explicit DenseCoboundary(const CellularSheaf& sheaf)
      : D(assemble_coboundary_matrix(sheaf)),
        svd(D, Eigen::ComputeThinU | Eigen::ComputeThinV) {
    rank_tol = 1e-12 * std::max(D.rows(), D.cols()) *
               (svd.singularValues().size() > 0 ? svd.singularValues()(0) : 1.0);
  }

  Eigen::VectorXd pinv_apply(const Eigen::VectorXd& rhs) const {
    const auto& sv = svd.singularValues();
    Eigen::VectorXd coeff = svd.matrixU().transpose() * rhs;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      coeff(k) = sv(k) > rank_tol ? coeff(k) / sv(k) : 0.0;
    }
    return svd.matrixV() * coeff;
  }
};

}  // namespace

Cochain0 harmonic_projection_oracle(const LaplacianContext& ctx, const Cochain0& x0) {
  ctx.sheaf.require_cochain0(x0);
  const MinimizerCochain mc = minimizer_cochain(ctx.potentials);
  if (!mc.b) {
    throw std::invalid_argument("harmonic_projection_oracle: " + mc.diagnostic);
  }
  const DenseCoboundary dense(ctx.sheaf);
  const Eigen::VectorXd x0f = ctx.sheaf.flatten0(x0);
  const Eigen::VectorXd bf = ctx.sheaf.flatten1(*mc.b);
  // x_parallel = x0 - delta^+ (delta x0); result = x_parallel + delta^+ b.
  const Eigen::VectorXd x_par = x0f - dense.pinv_apply(dense.D * x0f);
  return ctx.sheaf.unflatten0(x_par + dense.pinv_apply(bf));
}

double kernel_conservation_check(const LaplacianContext& ctx,
                                 const std::vector<Cochain0>& trace) {
  if (trace.empty()) return 0.0;
  const DenseCoboundary dense(ctx.sheaf);
  const auto proj_kernel = [&](const Cochain0& x) {
    const Eigen::VectorXd xf = ctx.sheaf.flatten0(x);
    return Eigen::VectorXd(xf - dense.pinv_apply(dense.D * xf));
  };
  const Eigen::VectorXd p0 = proj_kernel(trace.front());
  double max_dev = 0.0;
  for (const Cochain0& x : trace) {
    max_dev = std::max(max_dev, (proj_kernel(x) - p0).norm());
  }
  return max_dev;
}

}  // namespace sheafcoord
