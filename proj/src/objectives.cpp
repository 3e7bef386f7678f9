#include "sheafcoord/objectives.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <limits>
#include <stdexcept>

namespace sheafcoord {

namespace {

double largest_eigenvalue(const Eigen::MatrixXd& Q) {
  if (Q.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

Eigen::VectorXd project_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                            const Eigen::VectorXd& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

NodeObjective zero_objective(int dim) {
  NodeObjective obj;
  obj.dim = dim;
  obj.evaluate = [](const Eigen::VectorXd&) { return 0.0; };
  obj.prox = [](const Eigen::VectorXd& v, double) { return v; };
  return obj;
}

NodeObjective quadratic_objective(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q) {
  if (Q.rows() != Q.cols() || Q.rows() != q.size()) {
    throw std::invalid_argument("quadratic_objective: shape mismatch");
  }
  NodeObjective obj;
  obj.dim = static_cast<int>(q.size());
  obj.evaluate = [Q, q](const Eigen::VectorXd& x) {
    return 0.5 * x.dot(Q * x) + q.dot(x);
  };
  obj.prox = [Q, q](const Eigen::VectorXd& v, double rho) {
    const Eigen::MatrixXd M =
        Q + rho * Eigen::MatrixXd::Identity(Q.rows(), Q.cols());
    return Eigen::VectorXd(M.ldlt().solve(rho * v - q));
  };
  return obj;
}

NodeObjective quadratic_tracking_objective(const Eigen::MatrixXd& W,
                                           const Eigen::VectorXd& a) {
  NodeObjective obj = quadratic_objective(W, Eigen::VectorXd(-W * a));
  const double offset = 0.5 * a.dot(W * a);
  auto base_eval = obj.evaluate;
  obj.evaluate = [base_eval, offset](const Eigen::VectorXd& x) {
    return base_eval(x) + offset;
  };
  return obj;
}

NodeObjective box_quadratic_objective(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q,
                                      const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                      double stat_tol, int max_iters) {
  if (Q.rows() != Q.cols() || Q.rows() != q.size() || lo.size() != q.size() ||
      hi.size() != q.size()) {
    throw std::invalid_argument("box_quadratic_objective: shape mismatch");
  }
  if ((lo.array() > hi.array()).any()) {
    throw std::invalid_argument("box_quadratic_objective: lo > hi");
  }
  NodeObjective obj;
  obj.dim = static_cast<int>(q.size());
  obj.evaluate = [Q, q, lo, hi](const Eigen::VectorXd& x) {
    if ((x.array() < lo.array() - 1e-12).any() || (x.array() > hi.array() + 1e-12).any()) {
      return std::numeric_limits<double>::infinity();
    }
    return 0.5 * x.dot(Q * x) + q.dot(x);
  };
  const double lmax = largest_eigenvalue(Q);
  obj.prox = [Q, q, lo, hi, lmax, stat_tol, max_iters](const Eigen::VectorXd& v,
                                                       double rho) {
    // Projected gradient on F(x) = (1/2)x^T Q x + q^T x + (rho/2)||x - v||^2.
    Eigen::VectorXd x = project_box(v, lo, hi);
    double h = 1.0 / (lmax + rho);
    auto F = [&](const Eigen::VectorXd& z) {
      return 0.5 * z.dot(Q * z) + q.dot(z) + 0.5 * rho * (z - v).squaredNorm();
    };
    double fx = F(x);
    for (int it = 0; it < max_iters; ++it) {
      const Eigen::VectorXd grad = Q * x + q + rho * (x - v);
      const Eigen::VectorXd x_next = project_box(x - h * grad, lo, hi);
      if ((x_next - x).lpNorm<Eigen::Infinity>() <= stat_tol * h) break;
      const double f_next = F(x_next);
      if (f_next <= fx) {
        x = x_next;
        fx = f_next;
      } else {
        h *= 0.5;
        if (h < 1e-18) break;
      }
    }
    return x;
  };
  return obj;
}

NodeObjective first_order_objective(int dim,
                                    std::function<double(const Eigen::VectorXd&)> f,
                                    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad,
                                    double stat_tol, int max_iters) {
  NodeObjective obj;
  obj.dim = dim;
  obj.evaluate = f;
  obj.prox = [f, grad, stat_tol, max_iters](const Eigen::VectorXd& v, double rho) {
    Eigen::VectorXd x = v;
    double h = 1.0 / rho;
    auto F = [&](const Eigen::VectorXd& z) {
      return f(z) + 0.5 * rho * (z - v).squaredNorm();
    };
    double fx = F(x);
    for (int it = 0; it < max_iters; ++it) {
      const Eigen::VectorXd g = grad(x) + rho * (x - v);
      if (g.lpNorm<Eigen::Infinity>() <= stat_tol) break;
      Eigen::VectorXd x_next = x - h * g;
      double f_next = F(x_next);
      bool ok = f_next <= fx;
      while (!ok && h > 1e-18) {
        h *= 0.5;
        x_next = x - h * g;
        f_next = F(x_next);
        ok = f_next <= fx;
      }
      if (!ok) break;
      x = std::move(x_next);
      fx = f_next;
      h *= 2.0;
    }
    return x;
  };
  return obj;
}

}  // namespace sheafcoord
