#ifndef SHEAFCOORD_POTENTIALS_HPP
#define SHEAFCOORD_POTENTIALS_HPP

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "sheafcoord/cochain.hpp"
#include "sheafcoord/sheaf.hpp"

namespace sheafcoord {

/// Edge potential families. Each is defined on all of R^dim.
enum class PotentialKind {
  Zero,              ///< U(y) = 0
  Quadratic,         ///< U(y) = (1/2)||y||^2, consensus
  MatrixWeighted,    ///< U(y) = y^T A y
  Dissensus,         ///< U(y) = -(1/2)||y||^2
  Displacement,      ///< U(y) = (1/2)||y - b||^2, reach displacement of b
  FixedDistanceSq,   ///< U(y) = (||y||^2 - r^2)^2, reach distance of r
  FixedDistanceNorm, ///< U(y) = (1/2)(||y|| - r)^2
  Sum,               ///< sum of sub-potentials on disjoint index ranges
};

const char* to_string(PotentialKind kind);

/// One term of a Sum potential: a sub-potential applied to
/// y.segment(offset, term.dim()).
struct PotentialTerm;

/// A pairwise coordination objective on an edge stalk: scalar value,
/// gradient, convexity metadata, and (for strongly convex kinds) the unique
/// minimizer b_e with U(b_e) = 0.
///
/// Potentials are immutable value objects; evaluation is pure and reentrant.
/// The optional scale factor (> 0) multiplies value and gradient and is how
/// a relaxation weight gamma is folded into a potential.
class EdgePotential {
public:
  static EdgePotential zero(int dim);
  static EdgePotential quadratic(int dim, double scale = 1.0);
  /// Gradient uses (A + A^T) y so non-symmetric A is tolerated; convexity is
  /// decided by the eigenvalues of the symmetric part (tolerance 1e-10).
  static EdgePotential matrix_weighted(const Eigen::MatrixXd& A, double scale = 1.0);
  static EdgePotential dissensus(int dim, double scale = 1.0);
  static EdgePotential displacement(const Eigen::VectorXd& b, double scale = 1.0);
  static EdgePotential fixed_distance_sq(int dim, double r_squared, double scale = 1.0);
  static EdgePotential fixed_distance_norm(int dim, double r, double scale = 1.0);
  /// Sub-potentials on disjoint index ranges; ranges need not cover [0, dim).
  static EdgePotential sum(int dim, std::vector<PotentialTerm> terms);

  PotentialKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double scale() const { return scale_; }

  bool convex() const { return convex_; }
  bool strongly_convex() const { return strongly_convex_; }
  /// Every kind here is differentiable except FixedDistanceNorm at y = 0.
  bool differentiable_everywhere() const { return kind_ != PotentialKind::FixedDistanceNorm; }

  /// U_e(y). Throws on dimension mismatch.
  double value(const Eigen::VectorXd& y) const;

  /// Gradient of U_e at y. At the FixedDistanceNorm singularity y = 0 the
  /// zero subgradient is returned and *smooth (if given) is set to false.
  Eigen::VectorXd gradient(const Eigen::VectorXd& y, bool* smooth = nullptr) const;

  /// Unique minimizer b_e for strongly convex kinds, nullopt otherwise.
  std::optional<Eigen::VectorXd> minimizer() const;

  // kind-specific parameters (empty/zero when not applicable)
  const Eigen::MatrixXd& weight_matrix() const { return A_; }
  const Eigen::VectorXd& target() const { return b_; }
  double radius() const { return r_; }
  double radius_squared() const { return r_squared_; }
  const std::vector<PotentialTerm>& terms() const { return terms_; }

private:
  EdgePotential() = default;

  PotentialKind kind_ = PotentialKind::Zero;
  int dim_ = 0;
  double scale_ = 1.0;
  bool convex_ = true;
  bool strongly_convex_ = false;
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  double r_ = 0.0;
  double r_squared_ = 0.0;
  std::vector<PotentialTerm> terms_;
};

struct PotentialTerm {
  int offset = 0;
  EdgePotential potential;
};

/// One potential per edge of a sheaf; the aggregate is
/// U(y) = sum_e U_e(y_e).
class PotentialAssignment {
public:
  PotentialAssignment(const CellularSheaf& sheaf, std::vector<EdgePotential> potentials);

  int edge_count() const { return static_cast<int>(potentials_.size()); }
  const EdgePotential& potential(int e) const { return potentials_[static_cast<size_t>(e)]; }
  const std::vector<EdgePotential>& potentials() const { return potentials_; }

  bool all_convex() const;
  bool all_strongly_convex() const;
  bool all_differentiable() const;

private:
  std::vector<EdgePotential> potentials_;
};

/// U(y) = sum_e U_e(y_e).
double total_value(const PotentialAssignment& pa, const Cochain1& y);

/// Blockwise gradient of the aggregate potential. If any_nonsmooth is given
/// it is set to true when some block sat on a non-differentiable point.
Cochain1 total_gradient(const PotentialAssignment& pa, const Cochain1& y,
                        bool* any_nonsmooth = nullptr);

/// Stacked minimizer cochain b = vec(b_1, ..., b_|E|).
struct MinimizerCochain {
  std::optional<Cochain1> b;
  int offending_edge = -1;  ///< first edge without a unique minimizer, if any
  std::string diagnostic;
};

MinimizerCochain minimizer_cochain(const PotentialAssignment& pa);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_POTENTIALS_HPP
