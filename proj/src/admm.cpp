#include "sheafcoord/admm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sheafcoord {

void AdmmParams::validate() const {
  if (rho <= 0 || alpha <= 0 || eps1 <= 0 || eps2 <= 0 || max_outer < 1 ||
      diffusion_max_iters < 1 || eps2_growth <= 0.0) {
    throw std::invalid_argument("AdmmParams: parameters out of range");
  }
}

Cochain0 x_update(const HomologicalProgram& prog, const Cochain0& z, const Cochain0& y,
                  double rho) {
  if (rho <= 0) throw std::invalid_argument("x_update: rho must be positive");
  prog.sheaf().require_cochain0(z);
  prog.sheaf().require_cochain0(y);
  Cochain0 x = prog.sheaf().zero_cochain0();
  for (int i = 0; i < prog.sheaf().node_count(); ++i) {
    const size_t k = static_cast<size_t>(i);
    const Eigen::VectorXd v = z.blocks[k] - y.blocks[k];
    Eigen::VectorXd xi = prog.objective(i).prox(v, rho);
    if (!xi.allFinite()) {
      throw std::runtime_error("x_update: prox failed at node " + std::to_string(i));
    }
    x.blocks[k] = std::move(xi);
  }
  return x;
}

DiffusionResult z_update_projection(const HomologicalProgram& prog, const Cochain0& v,
                                    const AdmmParams& params, double eps2) {
  DiffusionParams dp = DiffusionParams::defaults(prog.sheaf(), params.alpha, eps2,
                                                 params.diffusion_max_iters);
  return diffuse(prog.laplacian_context(), v, dp);
}

RelaxedZResult z_update_relaxed(const HomologicalProgram& prog, const Cochain0& v,
                                double rho, const AdmmParams& params, double eps2) {
  prog.sheaf().require_cochain0(v);
  const LaplacianContext ctx = prog.laplacian_context();

  RelaxedZResult res;
  Cochain0 z = v;
  auto g_value = [&](const Cochain0& w) {
    Cochain0 d = w;
    d -= v;
    return laplacian_potential(ctx, w) + 0.5 * rho * d.squared_norm();
  };

  const double lam = estimate_coboundary_norm_sq(prog.sheaf());
  double h = 1.0 / (rho + std::max(lam, 1e-12));
  const double h_min = h * 1e-14;

  double gz = g_value(z);
  Cochain0 grad = apply_laplacian(ctx, z);
  for (size_t k = 0; k < grad.blocks.size(); ++k) {
    grad.blocks[k] += rho * (z.blocks[k] - v.blocks[k]);
  }
  res.grad_inf_norm = grad.inf_norm();

  int it = 0;
  while (res.grad_inf_norm > eps2 && it < params.diffusion_max_iters) {
    bool accepted = false;
    while (h >= h_min) {
      Cochain0 trial = z;
      for (size_t k = 0; k < trial.blocks.size(); ++k) {
        trial.blocks[k] -= h * grad.blocks[k];
      }
      const double g_trial = g_value(trial);
      if (g_trial <= gz) {
        z = std::move(trial);
        gz = g_trial;
        accepted = true;
        break;
      }
      h *= 0.5;
    }
    if (!accepted) break;
    grad = apply_laplacian(ctx, z);
    for (size_t k = 0; k < grad.blocks.size(); ++k) {
      grad.blocks[k] += rho * (z.blocks[k] - v.blocks[k]);
    }
    res.grad_inf_norm = grad.inf_norm();
    h *= 2.0;
    ++it;
  }
  res.z = std::move(z);
  res.iterations = it;
  res.converged = res.grad_inf_norm <= eps2;
  return res;
}

Cochain0 y_update(const Cochain0& y, const Cochain0& x, const Cochain0& z) {
  Cochain0 out = y;
  out += x;
  out -= z;
  return out;
}

AdmmSolution admm_solve(const HomologicalProgram& prog, const AdmmParams& params,
                        std::optional<Cochain0> z0, std::optional<Cochain0> y0) {
  params.validate();
  const CellularSheaf& sheaf = prog.sheaf();

  AdmmSolution sol;
  sol.z = z0 ? std::move(*z0) : sheaf.zero_cochain0();
  sol.y = y0 ? std::move(*y0) : sheaf.zero_cochain0();
  sheaf.require_cochain0(sol.z);
  sheaf.require_cochain0(sol.y);

  const bool projection_mode = prog.potentials().all_strongly_convex();
  sol.report.projection_mode = projection_mode;

  bool any_inner_issue = false;
  double eps2 = params.eps2;
  for (int k = 0; k < params.max_outer; ++k) {
    sol.x = x_update(prog, sol.z, sol.y, params.rho);

    Cochain0 v = sol.x;
    v += sol.y;
    const Cochain0 z_prev = sol.z;
    AdmmIterate rec;
    rec.iter = k;
    if (projection_mode) {
      DiffusionResult dr = z_update_projection(prog, v, params, eps2);
      sol.z = std::move(dr.x_final);
      rec.z_update_converged = dr.converged;
      rec.z_update_residual = dr.residual;
    } else {
      RelaxedZResult rr = z_update_relaxed(prog, v, params.rho, params, eps2);
      sol.z = std::move(rr.z);
      rec.z_update_converged = rr.converged;
      rec.z_update_residual = rr.grad_inf_norm;
    }
    any_inner_issue = any_inner_issue || !rec.z_update_converged;
    if (!rec.z_update_converged && sol.report.note.empty()) {
      sol.report.note = "z-update missed its tolerance first at iteration " +
                        std::to_string(k) + " (residual " +
                        std::to_string(rec.z_update_residual) + ")";
    }

    Cochain0 gap = sol.x;
    gap -= sol.z;
    rec.primal_residual = gap.inf_norm();
    Cochain0 dz = sol.z;
    dz -= z_prev;
    rec.dual_residual = params.rho * dz.norm();
    rec.objective = prog.objective_value(sol.z);
    sol.report.iterates.push_back(rec);

    if (rec.primal_residual < params.eps1) {
      sol.report.status = AdmmStatus::Converged;
      break;
    }
    sol.y = y_update(sol.y, sol.x, sol.z);
    eps2 = std::clamp(eps2 * params.eps2_growth, 1e-9 * params.eps2, 1e6 * params.eps2);
  }
  if (sol.report.status != AdmmStatus::Converged && any_inner_issue) {
    sol.report.status = AdmmStatus::InnerSolverIssue;
  }
  return sol;
}

}  // namespace sheafcoord
