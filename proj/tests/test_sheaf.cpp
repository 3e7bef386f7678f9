#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <random>

#include "sheafcoord/sheaf.hpp"
#include "support/oracles.hpp"

using namespace sheafcoord;
namespace oracle = sheafcoord::testing;

namespace {

Eigen::VectorXd vec1(double a) {
  Eigen::VectorXd v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("graph rejects self-loops, duplicates, bad endpoints") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, {{0, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(0, {}), std::invalid_argument);
}

TEST_CASE("graph neighbor lists are symmetric") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_connected_graph(rng, 8);
    for (int i = 0; i < g.node_count(); ++i) {
      for (int j : g.neighbors(i)) {
        const auto& nj = g.neighbors(j);
        CHECK(std::find(nj.begin(), nj.end(), i) != nj.end());
      }
    }
  }
}

TEST_CASE("constant sheaf: path on 2 nodes, k=1") {
  CellularSheaf s = constant_sheaf(Graph::path(2), 1);
  CHECK(s.node_count() == 2);
  CHECK(s.edge_count() == 1);
  CHECK(s.node_stalk_dim(0) == 1);
  CHECK(s.edge_stalk_dim(0) == 1);
  CHECK(s.restriction(0).from_tail(0, 0) == 1.0);
  CHECK(s.restriction(0).from_head(0, 0) == 1.0);
}

TEST_CASE("constant sheaf: triangle, k=2") {
  CellularSheaf s = constant_sheaf(Graph::complete(3), 2);
  CHECK(s.node_count() == 3);
  CHECK(s.edge_count() == 3);
  for (int e = 0; e < 3; ++e) {
    CHECK(s.edge_stalk_dim(e) == 2);
    CHECK(s.restriction(e).from_tail.isIdentity(0.0));
    CHECK(s.restriction(e).from_head.isIdentity(0.0));
  }
}

TEST_CASE("constant sheaf rejects k = 0") {
  CHECK_THROWS_AS(constant_sheaf(Graph::path(2), 0), std::invalid_argument);
}

TEST_CASE("constant sheaf coboundary matrix is incidence kron identity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    Graph g = oracle::random_connected_graph(rng, 6);
    CellularSheaf s = constant_sheaf(g, 3);
    const Eigen::MatrixXd D = assemble_coboundary_matrix(s);
    const Eigen::MatrixXd expected =
        oracle::kronecker(oracle::signed_incidence(g), Eigen::MatrixXd::Identity(3, 3));
    CHECK((D - expected).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("coboundary on 2-node path") {
  CellularSheaf s = constant_sheaf(Graph::path(2), 1);

  Cochain0 equal(std::vector<Eigen::VectorXd>{vec1(5.0), vec1(5.0)});
  CHECK(coboundary(s, equal).blocks[0](0) == 0.0);

  Cochain0 x(std::vector<Eigen::VectorXd>{vec1(3.0), vec1(1.0)});
  CHECK(coboundary(s, x).blocks[0](0) == 2.0);
}

TEST_CASE("coboundary with hand-built restrictions") {
  // Node stalks R^2, edge stalk R^1, F_tail = [1 0], F_head = [0 1].
  Graph g(2, {{0, 1}});
  Eigen::MatrixXd ft(1, 2), fh(1, 2);
  ft << 1, 0;
  fh << 0, 1;
  CellularSheaf s(g, {2, 2}, {1}, {{ft, fh}});
  Eigen::VectorXd x0(2), x1(2);
  x0 << 1, 2;
  x1 << 3, 1;
  Cochain0 x(std::vector<Eigen::VectorXd>{x0, x1});
  CHECK(coboundary(s, x).blocks[0](0) == doctest::Approx(0.0));
}

TEST_CASE("coboundary rejects layout mismatch") {
  CellularSheaf s = constant_sheaf(Graph::path(2), 1);
  Cochain0 bad(std::vector<Eigen::VectorXd>{Eigen::VectorXd::Zero(2),
                                            Eigen::VectorXd::Zero(1)});
  CHECK_THROWS_AS(coboundary(s, bad), std::invalid_argument);
  Cochain1 bad1(std::vector<Eigen::VectorXd>{Eigen::VectorXd::Zero(3)});
  CHECK_THROWS_AS(coboundary_transpose(s, bad1), std::invalid_argument);
}

TEST_CASE("coboundary transpose on 2-node path") {
  CellularSheaf s = constant_sheaf(Graph::path(2), 1);
  Cochain1 y(std::vector<Eigen::VectorXd>{vec1(2.0)});
  Cochain0 xt = coboundary_transpose(s, y);
  CHECK(xt.blocks[0](0) == 2.0);
  CHECK(xt.blocks[1](0) == -2.0);

  Cochain1 zero(std::vector<Eigen::VectorXd>{vec1(0.0)});
  CHECK(coboundary_transpose(s, zero).norm() == 0.0);
}

TEST_CASE("adjointness <delta x, y> = <x, delta^T y> on random sheaves") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    CellularSheaf s = oracle::random_sheaf(rng, 5, 3);
    for (int rep = 0; rep < 5; ++rep) {
      Cochain0 x = oracle::random_cochain0(rng, s);
      Cochain1 y = oracle::random_cochain1(rng, s);
      const double lhs = coboundary(s, x).dot(y);
      const double rhs = x.dot(coboundary_transpose(s, y));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("coboundary is linear") {
  std::mt19937_64 rng(43);
  CellularSheaf s = oracle::random_sheaf(rng, 6, 4);
  Cochain0 x1 = oracle::random_cochain0(rng, s);
  Cochain0 x2 = oracle::random_cochain0(rng, s);
  const double a = 0.7, b = -1.3;
  Cochain0 combo = a * x1 + b * x2;
  Cochain1 lhs = coboundary(s, combo);
  Cochain1 rhs = a * coboundary(s, x1) + b * coboundary(s, x2);
  CHECK((lhs - rhs).inf_norm() <= 1e-12);
}

TEST_CASE("assembled matrix agrees with coboundary on random inputs") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    CellularSheaf s = oracle::random_sheaf(rng, 6, 4);
    const Eigen::MatrixXd D = assemble_coboundary_matrix(s);
    for (int rep = 0; rep < 10; ++rep) {
      Cochain0 x = oracle::random_cochain0(rng, s);
      const Eigen::VectorXd via_matrix = D * s.flatten0(x);
      const Eigen::VectorXd direct = s.flatten1(coboundary(s, x));
      CHECK((via_matrix - direct).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
}

TEST_CASE("assembled matrix of constant R^1 sheaf on 2-node path") {
  CellularSheaf s = constant_sheaf(Graph::path(2), 1);
  const Eigen::MatrixXd D = assemble_coboundary_matrix(s);
  REQUIRE(D.rows() == 1);
  REQUIRE(D.cols() == 2);
  CHECK(D(0, 0) == 1.0);
  CHECK(D(0, 1) == -1.0);
}

TEST_CASE("constant sheaf kernel has dimension k on connected graphs") {
  std::mt19937_64 rng(45);
  for (int k : {1, 2, 3}) {
    Graph g = oracle::random_connected_graph(rng, 6);
    CellularSheaf s = constant_sheaf(g, k);
    const Eigen::MatrixXd D = assemble_coboundary_matrix(s);
    const Eigen::MatrixXd kernel = oracle::kernel_basis(D);
    CHECK(kernel.cols() == k);
    // Per-component consensus vectors are sections.
    for (int c = 0; c < k; ++c) {
      Cochain0 x = s.zero_cochain0();
      for (auto& blk : x.blocks) blk(c) = 1.0;
      CHECK(is_global_section(s, x, 1e-12));
    }
  }
}

TEST_CASE("is_global_section on constant sheaves") {
  CellularSheaf s = constant_sheaf(Graph::path(3), 1);
  Cochain0 consensus(std::vector<Eigen::VectorXd>{vec1(4.0), vec1(4.0), vec1(4.0)});
  CHECK(is_global_section(s, consensus, 1e-9));
  Cochain0 not_consensus(std::vector<Eigen::VectorXd>{vec1(1.0), vec1(2.0), vec1(1.0)});
  CHECK_FALSE(is_global_section(s, not_consensus, 1e-9));
}

TEST_CASE("min_norm_preimage: zero maps to zero") {
  std::mt19937_64 rng(46);
  CellularSheaf s = oracle::random_sheaf(rng, 5, 3);
  MinNormPreimage r = min_norm_preimage(s, s.zero_cochain1(), 1e-10);
  CHECK(r.converged);
  CHECK(r.x.norm() == 0.0);
  CHECK(r.iterations == 0);
}

TEST_CASE("min_norm_preimage on 2-node path: b = (2) -> (1, -1)") {
  CellularSheaf s = constant_sheaf(Graph::path(2), 1);
  Cochain1 b(std::vector<Eigen::VectorXd>{vec1(2.0)});
  MinNormPreimage r = min_norm_preimage(s, b, 1e-12);
  CHECK(r.converged);
  CHECK(r.in_image);
  CHECK(r.x.blocks[0](0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.x.blocks[1](0) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("min_norm_preimage of consistent rhs solves exactly and is kernel-orthogonal") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    CellularSheaf s = oracle::random_sheaf(rng, 5, 3);
    Cochain0 x0 = oracle::random_cochain0(rng, s);
    Cochain1 b = coboundary(s, x0);
    MinNormPreimage r = min_norm_preimage(s, b, 1e-11);
    CHECK(r.converged);
    CHECK(r.in_image);
    Cochain1 back = coboundary(s, r.x);
    back -= b;
    CHECK(back.norm() <= 1e-7);
    // r.x is orthogonal to a kernel basis of the assembled matrix.
    const Eigen::MatrixXd kernel =
        oracle::kernel_basis(assemble_coboundary_matrix(s));
    if (kernel.cols() > 0) {
      CHECK((kernel.transpose() * s.flatten0(r.x)).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
    // And it matches the dense pseudoinverse solution.
    const Eigen::VectorXd dense =
        oracle::pinv(assemble_coboundary_matrix(s)) * s.flatten1(b);
    CHECK((dense - s.flatten0(r.x)).lpNorm<Eigen::Infinity>() <= 1e-7);
  }
}

TEST_CASE("min_norm_preimage flags rhs outside image delta") {
  // Triangle, constant R^1: image delta is 2-dimensional, cycles are not in it.
  CellularSheaf s = constant_sheaf(Graph::complete(3), 1);
  Cochain1 cycle(std::vector<Eigen::VectorXd>{vec1(1.0), vec1(-1.0), vec1(1.0)});
  MinNormPreimage r = min_norm_preimage(s, cycle, 1e-10);
  CHECK(r.converged);          // the least-squares problem itself is solved
  CHECK_FALSE(r.in_image);     // but b is not attainable
  CHECK(r.image_residual > 0.1);
}

TEST_CASE("flatten and unflatten round trip") {
  std::mt19937_64 rng(48);
  CellularSheaf s = oracle::random_sheaf(rng, 6, 4);
  Cochain0 x = oracle::random_cochain0(rng, s);
  Cochain0 back = s.unflatten0(s.flatten0(x));
  CHECK((back - x).inf_norm() == 0.0);
  Cochain1 y = oracle::random_cochain1(rng, s);
  CHECK((s.unflatten1(s.flatten1(y)) - y).inf_norm() == 0.0);
}
