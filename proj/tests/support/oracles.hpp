#ifndef SHEAFCOORD_TESTS_ORACLES_HPP
#define SHEAFCOORD_TESTS_ORACLES_HPP

#include <Eigen/Core>

#include <functional>
#include <random>
#include <vector>

#include "sheafcoord/potentials.hpp"
#include "sheafcoord/sheaf.hpp"

// Test-only oracles, independent of the library paths they check.
namespace sheafcoord::testing {

/// Moore-Penrose pseudoinverse by full SVD with rank truncation.
Eigen::MatrixXd pinv(const Eigen::MatrixXd& M, double rank_tol_factor = 1e-12);

/// Orthonormal basis of ker M (columns), by SVD.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& M, double rank_tol_factor = 1e-12);

/// Central finite differences of a scalar function.
Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& y,
    double h = 1e-5);

/// Unnormalized graph Laplacian L_G = deg - adjacency, built from the edge
/// list directly.
Eigen::MatrixXd graph_laplacian(const Graph& graph);

/// Kronecker product, written out by hand.
Eigen::MatrixXd kronecker(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Signed incidence matrix of the graph under the tail < head convention
/// (one row per edge: +1 at tail, -1 at head).
Eigen::MatrixXd signed_incidence(const Graph& graph);

/// Solution of the equality-constrained QP
///   minimize (1/2) x^T Q x + q^T x  subject to  D x = b
/// by a least-squares solve of the KKT system. Returns primal, multiplier
/// and optimal value.
struct KktSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd nu;
  double value = 0.0;
};
KktSolution solve_equality_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q,
                              const Eigen::MatrixXd& D, const Eigen::VectorXd& b);

/// Connected random graph: a random spanning tree plus extra edges.
Graph random_connected_graph(std::mt19937_64& rng, int max_nodes);

/// Random sheaf on a random connected graph with stalk dims in
/// [1, max_stalk_dim] and dense restriction entries in [-1, 1].
CellularSheaf random_sheaf(std::mt19937_64& rng, int max_nodes, int max_stalk_dim);

/// Like random_sheaf, but resamples until the smallest positive eigenvalue
/// of delta^T delta is at least min_gap. Finite-iteration convergence
/// checks need instances whose slow modes decay at a bounded rate;
/// near-singular restriction draws would only test the iteration cap.
CellularSheaf random_sheaf_with_gap(std::mt19937_64& rng, int max_nodes,
                                    int max_stalk_dim, double min_gap = 1e-2);

Cochain0 random_cochain0(std::mt19937_64& rng, const CellularSheaf& sheaf,
                         double amplitude = 1.0);
Cochain1 random_cochain1(std::mt19937_64& rng, const CellularSheaf& sheaf,
                         double amplitude = 1.0);

}  // namespace sheafcoord::testing

#endif  // SHEAFCOORD_TESTS_ORACLES_HPP
