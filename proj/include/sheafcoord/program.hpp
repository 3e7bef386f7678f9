#ifndef SHEAFCOORD_PROGRAM_HPP
#define SHEAFCOORD_PROGRAM_HPP

#include <memory>
#include <string>
#include <vector>

#include "sheafcoord/laplacian.hpp"
#include "sheafcoord/objectives.hpp"
#include "sheafcoord/potentials.hpp"
#include "sheafcoord/sheaf.hpp"

namespace sheafcoord {

/// A nonlinear homological program: a sheaf, one potential per edge, one
/// objective per node, posing
///   minimize sum_i f_i(x_i)  subject to  L^{grad U} x = 0.
class HomologicalProgram {
public:
  HomologicalProgram(std::shared_ptr<const CellularSheaf> sheaf,
                     std::shared_ptr<const PotentialAssignment> potentials,
                     std::vector<NodeObjective> objectives);

  const CellularSheaf& sheaf() const { return *sheaf_; }
  const PotentialAssignment& potentials() const { return *potentials_; }
  const std::vector<NodeObjective>& objectives() const { return objectives_; }
  const NodeObjective& objective(int i) const { return objectives_[static_cast<size_t>(i)]; }

  LaplacianContext laplacian_context() const { return {*sheaf_, *potentials_}; }

  double objective_value(const Cochain0& x) const;

private:
  std::shared_ptr<const CellularSheaf> sheaf_;
  std::shared_ptr<const PotentialAssignment> potentials_;
  std::vector<NodeObjective> objectives_;
};

/// Outcome of the convexity screen of a homological program.
struct ConvexityDiagnostic {
  bool potentials_convex = true;
  bool potentials_differentiable = true;
  bool potentials_strongly_convex = true;  ///< the projection z-update is exact
  bool objectives_convex = true;
  bool convex_program = false;
  std::vector<int> nonconvex_edges;
  std::vector<int> nonconvex_nodes;
  bool recommend_relaxed_mode = false;
  std::string summary;
};

/// Flags-based screen: the program is reported convex iff every edge
/// potential is differentiable and convex and every node objective is
/// convex. Purely diagnostic.
ConvexityDiagnostic check_convexity(const HomologicalProgram& prog);

}  // namespace sheafcoord

#endif  // SHEAFCOORD_PROGRAM_HPP
