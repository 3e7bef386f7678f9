#include "sheafcoord/program.hpp"

#include <sstream>
#include <stdexcept>

namespace sheafcoord {

HomologicalProgram::HomologicalProgram(std::shared_ptr<const CellularSheaf> sheaf,
                                       std::shared_ptr<const PotentialAssignment> potentials,
                                       std::vector<NodeObjective> objectives)
    : sheaf_(std::move(sheaf)),
      potentials_(std::move(potentials)),
      objectives_(std::move(objectives)) {
  if (!sheaf_ || !potentials_) {
    throw std::invalid_argument("HomologicalProgram: null sheaf or potentials");
  }
  if (static_cast<int>(objectives_.size()) != sheaf_->node_count()) {
    throw std::invalid_argument("HomologicalProgram: exactly one objective per node required");
  }
  for (int i = 0; i < sheaf_->node_count(); ++i) {
    if (objectives_[static_cast<size_t>(i)].dim != sheaf_->node_stalk_dim(i)) {
      throw std::invalid_argument("HomologicalProgram: objective dim mismatch at node " +
                                  std::to_string(i));
    }
  }
}

double HomologicalProgram::objective_value(const Cochain0& x) const {
  sheaf_->require_cochain0(x);
  double s = 0.0;
  for (int i = 0; i < sheaf_->node_count(); ++i) {
    s += objectives_[static_cast<size_t>(i)].evaluate(x.blocks[static_cast<size_t>(i)]);
  }
  return s;
}

ConvexityDiagnostic check_convexity(const HomologicalProgram& prog) {
  ConvexityDiagnostic d;
  const PotentialAssignment& pa = prog.potentials();
  for (int e = 0; e < pa.edge_count(); ++e) {
    const EdgePotential& p = pa.potential(e);
    if (!p.convex()) {
      d.potentials_convex = false;
      d.nonconvex_edges.push_back(e);
    }
    if (!p.differentiable_everywhere()) d.potentials_differentiable = false;
    if (!p.strongly_convex()) d.potentials_strongly_convex = false;
  }
  for (int i = 0; i < static_cast<int>(prog.objectives().size()); ++i) {
    if (!prog.objective(i).convex) {
      d.objectives_convex = false;
      d.nonconvex_nodes.push_back(i);
    }
  }
  d.convex_program =
      d.potentials_convex && d.potentials_differentiable && d.objectives_convex;
  d.recommend_relaxed_mode = !d.potentials_strongly_convex;

  std::ostringstream os;
  if (d.convex_program) {
    os << "convex program";
  } else {
    os << "not a convex program:";
    for (int e : d.nonconvex_edges) {
      os << " edge " << e << " (" << to_string(pa.potential(e).kind()) << ")";
    }
    for (int i : d.nonconvex_nodes) os << " node " << i;
  }
  if (d.recommend_relaxed_mode) {
    os << "; relaxed z-update recommended (some potential lacks a unique minimizer)";
  }
  d.summary = os.str();
  return d;
}

}  // namespace sheafcoord
