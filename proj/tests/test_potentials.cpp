#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <random>

#include "sheafcoord/potentials.hpp"
#include "support/oracles.hpp"

using namespace sheafcoord;
namespace oracle = sheafcoord::testing;

namespace {

Eigen::VectorXd randvec(std::mt19937_64& rng, int n, double lo = -3.0, double hi = 3.0) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v(k) = unif(rng);
  return v;
}

// One random instance of every kind at the given dimension.
std::vector<EdgePotential> sample_kinds(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::MatrixXd A(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) A(r, c) = unif(rng);
  }
  std::vector<EdgePotential> out;
  out.push_back(EdgePotential::zero(dim));
  out.push_back(EdgePotential::quadratic(dim));
  out.push_back(EdgePotential::matrix_weighted(A));
  out.push_back(EdgePotential::dissensus(dim));
  out.push_back(EdgePotential::displacement(randvec(rng, dim)));
  out.push_back(EdgePotential::fixed_distance_sq(dim, 1.0 + 4.0 * std::abs(unif(rng))));
  out.push_back(EdgePotential::fixed_distance_norm(dim, 0.5 + 2.0 * std::abs(unif(rng))));
  if (dim >= 2) {
    std::vector<PotentialTerm> terms;
    terms.push_back({0, EdgePotential::fixed_distance_sq(1, 2.0)});
    terms.push_back({1, EdgePotential::quadratic(dim - 1)});
    out.push_back(EdgePotential::sum(dim, std::move(terms)));
  }
  return out;
}

}  // namespace

TEST_CASE("quadratic value and gradient") {
  EdgePotential p = EdgePotential::quadratic(2);
  Eigen::VectorXd y(2);
  y << 3, 4;
  CHECK(p.value(y) == doctest::Approx(12.5));
  CHECK((p.gradient(y) - y).norm() == 0.0);
  CHECK(p.convex());
  CHECK(p.strongly_convex());
  CHECK(p.minimizer()->norm() == 0.0);
}

TEST_CASE("fixed_distance_sq vanishes on the target shell") {
  EdgePotential p = EdgePotential::fixed_distance_sq(2, 5.0);
  Eigen::VectorXd y(2);
  y << 1, 2;  // ||y||^2 = 5
  CHECK(p.value(y) == doctest::Approx(0.0));
  CHECK(p.gradient(y).norm() == doctest::Approx(0.0));
  CHECK_FALSE(p.convex());
  CHECK_FALSE(p.minimizer().has_value());
}

TEST_CASE("displacement vanishes at its target") {
  Eigen::VectorXd b(2);
  b << 1, 0;
  EdgePotential p = EdgePotential::displacement(b);
  CHECK(p.value(b) == 0.0);
  CHECK(p.gradient(b).norm() == 0.0);
  CHECK((*p.minimizer() - b).norm() == 0.0);
}

TEST_CASE("dissensus is the negation of quadratic") {
  std::mt19937_64 rng(1);
  EdgePotential q = EdgePotential::quadratic(3);
  EdgePotential d = EdgePotential::dissensus(3);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::VectorXd y = randvec(rng, 3);
    CHECK(std::abs(q.value(y) + d.value(y)) <= 1e-12);
    CHECK((q.gradient(y) + d.gradient(y)).norm() <= 1e-12);
  }
  CHECK_FALSE(d.convex());
}

TEST_CASE("matrix_weighted convexity flags follow the symmetric part") {
  Eigen::MatrixXd psd(2, 2), indef(2, 2), skew(2, 2);
  psd << 2, 0, 0, 1;
  indef << 1, 0, 0, -1;
  skew << 0, 1, -1, 0;  // symmetric part zero: convex but not strongly
  CHECK(EdgePotential::matrix_weighted(psd).strongly_convex());
  CHECK_FALSE(EdgePotential::matrix_weighted(indef).convex());
  EdgePotential sk = EdgePotential::matrix_weighted(skew);
  CHECK(sk.convex());
  CHECK_FALSE(sk.strongly_convex());
}

TEST_CASE("fixed_distance_norm at zero returns the zero subgradient with a flag") {
  EdgePotential p = EdgePotential::fixed_distance_norm(3, 2.0);
  bool smooth = true;
  const Eigen::VectorXd g = p.gradient(Eigen::VectorXd::Zero(3), &smooth);
  CHECK(g.norm() == 0.0);
  CHECK_FALSE(smooth);
  smooth = false;
  p.gradient(Eigen::VectorXd::Ones(3), &smooth);
  CHECK(smooth);
}

TEST_CASE("value rejects dimension mismatch") {
  EdgePotential p = EdgePotential::quadratic(2);
  CHECK_THROWS_AS(p.value(Eigen::VectorXd::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(p.gradient(Eigen::VectorXd::Zero(1)), std::invalid_argument);
}

TEST_CASE("gradients match central finite differences for every kind") {
  std::mt19937_64 rng(2);
  int checked = 0;
  while (checked < 1000) {
    const int dim = 1 + static_cast<int>(rng() % 4);
    for (const EdgePotential& p : sample_kinds(rng, dim)) {
      Eigen::VectorXd y = randvec(rng, dim);
      if (p.kind() == PotentialKind::FixedDistanceNorm && y.norm() < 1e-3) continue;
      const Eigen::VectorXd g = p.gradient(y);
      const Eigen::VectorXd fd = oracle::finite_difference_gradient(
          [&](const Eigen::VectorXd& v) { return p.value(v); }, y);
      const double scale = std::max(1.0, g.norm());
      CHECK((g - fd).norm() <= 1e-6 * scale);
      ++checked;
    }
  }
}

TEST_CASE("strong convexity certificate with m = 1") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 1000; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    Eigen::VectorXd b = randvec(rng, dim);
    const EdgePotential quad = EdgePotential::quadratic(dim);
    const EdgePotential disp = EdgePotential::displacement(b);
    const Eigen::VectorXd y = randvec(rng, dim, -5.0, 5.0);
    CHECK(quad.value(y) >= 0.5 * y.squaredNorm() - 1e-12);
    CHECK(disp.value(y) >= 0.5 * (y - b).squaredNorm() - 1e-12);
  }
}

TEST_CASE("nonnegative kinds stay nonnegative") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 300; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const Eigen::VectorXd y = randvec(rng, dim, -10.0, 10.0);
    CHECK(EdgePotential::quadratic(dim).value(y) >= 0.0);
    CHECK(EdgePotential::displacement(randvec(rng, dim)).value(y) >= 0.0);
    CHECK(EdgePotential::fixed_distance_sq(dim, 3.0).value(y) >= 0.0);
    CHECK(EdgePotential::fixed_distance_norm(dim, 1.5).value(y) >= 0.0);
  }
}

TEST_CASE("total_value and total_gradient over an assignment") {
  CellularSheaf s = constant_sheaf(Graph::path(3), 1);
  PotentialAssignment pa(s, {EdgePotential::quadratic(1), EdgePotential::quadratic(1)});

  Cochain1 y = s.zero_cochain1();
  CHECK(total_value(pa, y) == 0.0);

  y.blocks[0](0) = 1.0;
  y.blocks[1](0) = 2.0;
  CHECK(total_value(pa, y) == doctest::Approx(2.5));
  Cochain1 g = total_gradient(pa, y);
  CHECK((g - y).inf_norm() == 0.0);  // all quadratic: identity map
}

TEST_CASE("total_value equals the blockwise sum on random assignments") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    CellularSheaf s = oracle::random_sheaf(rng, 5, 3);
    std::vector<EdgePotential> pots;
    for (int e = 0; e < s.edge_count(); ++e) {
      auto kinds = sample_kinds(rng, s.edge_stalk_dim(e));
      pots.push_back(kinds[rng() % kinds.size()]);
    }
    PotentialAssignment pa(s, pots);
    Cochain1 y = oracle::random_cochain1(rng, s);
    double direct = 0.0;
    for (int e = 0; e < s.edge_count(); ++e) {
      direct += pa.potential(e).value(y.blocks[static_cast<size_t>(e)]);
    }
    CHECK(total_value(pa, y) == doctest::Approx(direct).epsilon(1e-12));

    // gradient of the total matches finite differences through flatten
    Cochain1 g = total_gradient(pa, y);
    bool nonsmooth_zone = false;
    for (int e = 0; e < s.edge_count(); ++e) {
      if (pa.potential(e).kind() == PotentialKind::FixedDistanceNorm &&
          y.blocks[static_cast<size_t>(e)].norm() < 1e-3) {
        nonsmooth_zone = true;
      }
    }
    if (!nonsmooth_zone) {
      const Eigen::VectorXd yf = s.flatten1(y);
      const Eigen::VectorXd fd = oracle::finite_difference_gradient(
          [&](const Eigen::VectorXd& v) { return total_value(pa, s.unflatten1(v)); }, yf);
      const double scale = std::max(1.0, g.norm());
      CHECK((s.flatten1(g) - fd).norm() <= 1e-6 * scale);
    }
  }
}

TEST_CASE("total gradient vanishes at the minimizer cochain") {
  std::mt19937_64 rng(6);
  CellularSheaf s = oracle::random_sheaf(rng, 5, 3);
  std::vector<EdgePotential> pots;
  for (int e = 0; e < s.edge_count(); ++e) {
    if (e % 2 == 0) {
      pots.push_back(EdgePotential::displacement(randvec(rng, s.edge_stalk_dim(e))));
    } else {
      pots.push_back(EdgePotential::quadratic(s.edge_stalk_dim(e)));
    }
  }
  PotentialAssignment pa(s, pots);
  MinimizerCochain mc = minimizer_cochain(pa);
  REQUIRE(mc.b.has_value());
  CHECK(total_gradient(pa, *mc.b).inf_norm() <= 1e-15);
}

TEST_CASE("minimizer cochain: all quadratic gives zero, displacement stacks targets") {
  CellularSheaf s = constant_sheaf(Graph::path(3), 2);
  PotentialAssignment quad(s, {EdgePotential::quadratic(2), EdgePotential::quadratic(2)});
  auto mq = minimizer_cochain(quad);
  REQUIRE(mq.b.has_value());
  CHECK(mq.b->norm() == 0.0);

  Eigen::VectorXd t0(2), t1(2);
  t0 << 1, 2;
  t1 << -3, 4;
  PotentialAssignment disp(s, {EdgePotential::displacement(t0), EdgePotential::displacement(t1)});
  auto md = minimizer_cochain(disp);
  REQUIRE(md.b.has_value());
  CHECK((md.b->blocks[0] - t0).norm() == 0.0);
  CHECK((md.b->blocks[1] - t1).norm() == 0.0);
}

TEST_CASE("minimizer cochain undefined with a diagnostic for dissensus") {
  CellularSheaf s = constant_sheaf(Graph::path(3), 1);
  PotentialAssignment pa(s, {EdgePotential::quadratic(1), EdgePotential::dissensus(1)});
  auto mc = minimizer_cochain(pa);
  CHECK_FALSE(mc.b.has_value());
  CHECK(mc.offending_edge == 1);
  CHECK(mc.diagnostic.find("dissensus") != std::string::npos);
}

TEST_CASE("assignment rejects dim mismatch and wrong count") {
  CellularSheaf s = constant_sheaf(Graph::path(3), 2);
  CHECK_THROWS_AS(PotentialAssignment(s, {EdgePotential::quadratic(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      PotentialAssignment(s, {EdgePotential::quadratic(2), EdgePotential::quadratic(3)}),
      std::invalid_argument);
}

TEST_CASE("sum potential stacks minimizers when it covers all coordinates") {
  Eigen::VectorXd b(2);
  b << 5, -1;
  std::vector<PotentialTerm> terms;
  terms.push_back({0, EdgePotential::displacement(b)});
  terms.push_back({2, EdgePotential::quadratic(2)});
  EdgePotential p = EdgePotential::sum(4, std::move(terms));
  CHECK(p.strongly_convex());
  REQUIRE(p.minimizer().has_value());
  Eigen::VectorXd expected(4);
  expected << 5, -1, 0, 0;
  CHECK((*p.minimizer() - expected).norm() == 0.0);
  CHECK(p.value(expected) == 0.0);
}

TEST_CASE("sum potential rejects overlapping or out-of-range terms") {
  std::vector<PotentialTerm> overlap;
  overlap.push_back({0, EdgePotential::quadratic(2)});
  overlap.push_back({1, EdgePotential::quadratic(2)});
  CHECK_THROWS_AS(EdgePotential::sum(3, std::move(overlap)), std::invalid_argument);
  std::vector<PotentialTerm> oob;
  oob.push_back({2, EdgePotential::quadratic(2)});
  CHECK_THROWS_AS(EdgePotential::sum(3, std::move(oob)), std::invalid_argument);
}
