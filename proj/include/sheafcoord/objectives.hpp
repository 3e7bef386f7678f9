#ifndef SHEAFCOORD_OBJECTIVES_HPP
#define SHEAFCOORD_OBJECTIVES_HPP

#include <Eigen/Core>

#include <functional>

namespace sheafcoord {

/// A per-node objective f_i: R^dim -> R u {+inf} together with its proximal
/// operator prox(v, rho) = argmin_x f(x) + (rho/2)||x - v||^2.
///
/// Value semantics; evaluate/prox must be pure. evaluate may return +inf
/// outside an indicator's feasible set.
struct NodeObjective {
  int dim = 0;
  std::function<double(const Eigen::VectorXd&)> evaluate;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> prox;
  bool convex = true;
  bool closed_proper = true;
};

/// f = 0; prox is the identity.
NodeObjective zero_objective(int dim);

/// f(x) = (1/2) x^T Q x + q^T x with Q symmetric PSD. Closed-form prox via
/// a linear solve of (Q + rho I) x = rho v - q.
NodeObjective quadratic_objective(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q);

/// f(x) = (1/2)(x - a)^T W (x - a), W symmetric PSD.
NodeObjective quadratic_tracking_objective(const Eigen::MatrixXd& W,
                                           const Eigen::VectorXd& a);

/// Quadratic plus a box indicator lo <= x <= hi (componentwise). Prox by
/// projected gradient with backtracking; first-order stationarity residual
/// is driven below stat_tol.
NodeObjective box_quadratic_objective(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q,
                                      const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                      double stat_tol = 1e-9, int max_iters = 5000);

/// Generic first-order fallback for a differentiable convex f given by
/// value/gradient callbacks. Prox by gradient descent with backtracking.
NodeObjective first_order_objective(int dim,
                                    std::function<double(const Eigen::VectorXd&)> f,
                                    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad,
                                    double stat_tol = 1e-9, int max_iters = 5000);

/// Componentwise clamp onto [lo, hi].
Eigen::VectorXd project_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                            const Eigen::VectorXd& hi);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_OBJECTIVES_HPP
