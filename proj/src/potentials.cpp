#include "sheafcoord/potentials.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sheafcoord {

namespace {

constexpr double kEigTol = 1e-10;

double checked_scale(double scale) {
  if (scale <= 0) throw std::invalid_argument("EdgePotential: scale must be positive");
  return scale;
}

void require_dim(const EdgePotential& p, const Eigen::VectorXd& y) {
  if (static_cast<int>(y.size()) != p.dim()) {
    throw std::invalid_argument("EdgePotential: argument dimension mismatch");
  }
}

}  // namespace

const char* to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Zero: return "zero";
    case PotentialKind::Quadratic: return "quadratic";
    case PotentialKind::MatrixWeighted: return "matrix_weighted";
    case PotentialKind::Dissensus: return "dissensus";
    case PotentialKind::Displacement: return "displacement";
    case PotentialKind::FixedDistanceSq: return "fixed_distance_sq";
    case PotentialKind::FixedDistanceNorm: return "fixed_distance_norm";
    case PotentialKind::Sum: return "sum";
  }
  return "unknown";
}

EdgePotential EdgePotential::zero(int dim) {
  EdgePotential p;
  p.kind_ = PotentialKind::Zero;
  p.dim_ = dim;
  p.convex_ = true;
  p.strongly_convex_ = false;
  return p;
}

EdgePotential EdgePotential::quadratic(int dim, double scale) {
  EdgePotential p;
  p.kind_ = PotentialKind::Quadratic;
  p.dim_ = dim;
  p.scale_ = checked_scale(scale);
  p.convex_ = true;
  p.strongly_convex_ = true;
  p.b_ = Eigen::VectorXd::Zero(dim);
  return p;
}

EdgePotential EdgePotential::matrix_weighted(const Eigen::MatrixXd& A, double scale) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("matrix_weighted: A must be square");
  }
  EdgePotential p;
  p.kind_ = PotentialKind::MatrixWeighted;
  p.dim_ = static_cast<int>(A.rows());
  p.scale_ = checked_scale(scale);
  p.A_ = A;
  const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const double min_eig = es.eigenvalues().minCoeff();
  p.convex_ = min_eig >= -kEigTol;
  p.strongly_convex_ = min_eig > kEigTol;
  if (p.strongly_convex_) p.b_ = Eigen::VectorXd::Zero(p.dim_);
  return p;
}

EdgePotential EdgePotential::dissensus(int dim, double scale) {
  EdgePotential p;
  p.kind_ = PotentialKind::Dissensus;
  p.dim_ = dim;
  p.scale_ = checked_scale(scale);
  p.convex_ = false;
  p.strongly_convex_ = false;
  return p;
}

EdgePotential EdgePotential::displacement(const Eigen::VectorXd& b, double scale) {
  EdgePotential p;
  p.kind_ = PotentialKind::Displacement;
  p.dim_ = static_cast<int>(b.size());
  p.scale_ = checked_scale(scale);
  p.convex_ = true;
  p.strongly_convex_ = true;
  p.b_ = b;
  return p;
}

EdgePotential EdgePotential::fixed_distance_sq(int dim, double r_squared, double scale) {
  if (r_squared <= 0) {
    throw std::invalid_argument("fixed_distance_sq: r^2 must be positive");
  }
  EdgePotential p;
  p.kind_ = PotentialKind::FixedDistanceSq;
  p.dim_ = dim;
  p.scale_ = checked_scale(scale);
  p.r_squared_ = r_squared;
  p.r_ = std::sqrt(r_squared);
  p.convex_ = false;
  p.strongly_convex_ = false;
  return p;
}

EdgePotential EdgePotential::fixed_distance_norm(int dim, double r, double scale) {
  if (r <= 0) throw std::invalid_argument("fixed_distance_norm: r must be positive");
  EdgePotential p;
  p.kind_ = PotentialKind::FixedDistanceNorm;
  p.dim_ = dim;
  p.scale_ = checked_scale(scale);
  p.r_ = r;
  p.r_squared_ = r * r;
  p.convex_ = false;
  p.strongly_convex_ = false;
  return p;
}

EdgePotential EdgePotential::sum(int dim, std::vector<PotentialTerm> terms) {
  std::vector<bool> used(static_cast<size_t>(dim), false);
  for (const auto& t : terms) {
    if (t.offset < 0 || t.offset + t.potential.dim() > dim) {
      throw std::invalid_argument("sum potential: term range out of bounds");
    }
    for (int k = t.offset; k < t.offset + t.potential.dim(); ++k) {
      if (used[static_cast<size_t>(k)]) {
        throw std::invalid_argument("sum potential: overlapping term ranges");
      }
      used[static_cast<size_t>(k)] = true;
    }
  }
  EdgePotential p;
  p.kind_ = PotentialKind::Sum;
  p.dim_ = dim;
  p.convex_ = true;
  // Strong convexity of the sum needs strongly convex terms covering every
  // coordinate; the minimizer then stacks.
  bool covered = true;
  for (bool u : used) covered = covered && u;
  p.strongly_convex_ = covered && !terms.empty();
  for (const auto& t : terms) {
    p.convex_ = p.convex_ && t.potential.convex();
    p.strongly_convex_ = p.strongly_convex_ && t.potential.strongly_convex();
  }
  if (p.strongly_convex_) {
    p.b_ = Eigen::VectorXd::Zero(dim);
    for (const auto& t : terms) {
      p.b_.segment(t.offset, t.potential.dim()) = *t.potential.minimizer();
    }
  }
  p.terms_ = std::move(terms);
  return p;
}

double EdgePotential::value(const Eigen::VectorXd& y) const {
  require_dim(*this, y);
  switch (kind_) {
    case PotentialKind::Zero:
      return 0.0;
    case PotentialKind::Quadratic:
      return scale_ * 0.5 * y.squaredNorm();
    case PotentialKind::MatrixWeighted:
      return scale_ * y.dot(A_ * y);
    case PotentialKind::Dissensus:
      return -scale_ * 0.5 * y.squaredNorm();
    case PotentialKind::Displacement:
      return scale_ * 0.5 * (y - b_).squaredNorm();
    case PotentialKind::FixedDistanceSq: {
      const double d = y.squaredNorm() - r_squared_;
      return scale_ * d * d;
    }
    case PotentialKind::FixedDistanceNorm: {
      const double d = y.norm() - r_;
      return scale_ * 0.5 * d * d;
    }
    case PotentialKind::Sum: {
      double s = 0.0;
      for (const auto& t : terms_) {
        s += t.potential.value(y.segment(t.offset, t.potential.dim()));
      }
      return scale_ * s;
    }
  }
  return 0.0;
}

Eigen::VectorXd EdgePotential::gradient(const Eigen::VectorXd& y, bool* smooth) const {
  require_dim(*this, y);
  if (smooth) *smooth = true;
  switch (kind_) {
    case PotentialKind::Zero:
      return Eigen::VectorXd::Zero(dim_);
    case PotentialKind::Quadratic:
      return scale_ * y;
    case PotentialKind::MatrixWeighted:
      return scale_ * ((A_ + A_.transpose()) * y);
    case PotentialKind::Dissensus:
      return -scale_ * y;
    case PotentialKind::Displacement:
      return scale_ * (y - b_);
    case PotentialKind::FixedDistanceSq:
      return scale_ * 4.0 * (y.squaredNorm() - r_squared_) * y;
    case PotentialKind::FixedDistanceNorm: {
      const double n = y.norm();
      if (n == 0.0) {
        if (smooth) *smooth = false;
        return Eigen::VectorXd::Zero(dim_);
      }
      return scale_ * (1.0 - r_ / n) * y;
    }
    case PotentialKind::Sum: {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
      for (const auto& t : terms_) {
        bool term_smooth = true;
        g.segment(t.offset, t.potential.dim()) =
            t.potential.gradient(y.segment(t.offset, t.potential.dim()), &term_smooth);
        if (!term_smooth && smooth) *smooth = false;
      }
      return scale_ * g;
    }
  }
  return Eigen::VectorXd::Zero(dim_);
}

std::optional<Eigen::VectorXd> EdgePotential::minimizer() const {
  if (!strongly_convex_) return std::nullopt;
  return b_;
}

PotentialAssignment::PotentialAssignment(const CellularSheaf& sheaf,
                                         std::vector<EdgePotential> potentials)
    : potentials_(std::move(potentials)) {
  if (static_cast<int>(potentials_.size()) != sheaf.edge_count()) {
    throw std::invalid_argument("PotentialAssignment: one potential per edge required");
  }
  for (int e = 0; e < sheaf.edge_count(); ++e) {
    if (potentials_[static_cast<size_t>(e)].dim() != sheaf.edge_stalk_dim(e)) {
      throw std::invalid_argument("PotentialAssignment: potential dim mismatch on edge " +
                                  std::to_string(e));
    }
  }
}

bool PotentialAssignment::all_convex() const {
  for (const auto& p : potentials_) {
    if (!p.convex()) return false;
  }
  return true;
}

bool PotentialAssignment::all_strongly_convex() const {
  for (const auto& p : potentials_) {
    if (!p.strongly_convex()) return false;
  }
  return true;
}

bool PotentialAssignment::all_differentiable() const {
  for (const auto& p : potentials_) {
    if (!p.differentiable_everywhere()) return false;
  }
  return true;
}

double total_value(const PotentialAssignment& pa, const Cochain1& y) {
  if (y.block_count() != pa.edge_count()) {
    throw std::invalid_argument("total_value: cochain layout mismatch");
  }
  double s = 0.0;
  for (int e = 0; e < pa.edge_count(); ++e) {
    s += pa.potential(e).value(y.blocks[static_cast<size_t>(e)]);
  }
  return s;
}

Cochain1 total_gradient(const PotentialAssignment& pa, const Cochain1& y,
                        bool* any_nonsmooth) {
  if (y.block_count() != pa.edge_count()) {
    throw std::invalid_argument("total_gradient: cochain layout mismatch");
  }
  if (any_nonsmooth) *any_nonsmooth = false;
  Cochain1 g;
  g.blocks.resize(y.blocks.size());
  for (int e = 0; e < pa.edge_count(); ++e) {
    bool smooth = true;
    g.blocks[static_cast<size_t>(e)] =
        pa.potential(e).gradient(y.blocks[static_cast<size_t>(e)], &smooth);
    if (!smooth && any_nonsmooth) *any_nonsmooth = true;
  }
  return g;
}

MinimizerCochain minimizer_cochain(const PotentialAssignment& pa) {
  MinimizerCochain out;
  Cochain1 b;
  b.blocks.resize(static_cast<size_t>(pa.edge_count()));
  for (int e = 0; e < pa.edge_count(); ++e) {
    auto be = pa.potential(e).minimizer();
    if (!be) {
      out.offending_edge = e;
      out.diagnostic = std::string("edge ") + std::to_string(e) + " potential (" +
                       to_string(pa.potential(e).kind()) +
                       ") has no unique minimizer";
      return out;
    }
    b.blocks[static_cast<size_t>(e)] = *be;
  }
  out.b = std::move(b);
  return out;
}

}  // namespace sheafcoord
