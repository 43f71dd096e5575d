#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lethargy/distance.hpp"
#include "test_util.hpp"

using namespace lethargy;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) out(i++) = e;
  return out;
}

Subspace span1(std::initializer_list<double> col) {
  Matrix b(static_cast<Eigen::Index>(col.size()), 1);
  b.col(0) = vec(col);
  return Subspace(b);
}

// Independent 1-D brute force: min over t in [-3, 3] of ||x - t b||.
double brute_force_line(const Vector& x, const Vector& b, const NormSpec& norm, int steps = 600001) {
  double best = kInf;
  for (int i = 0; i < steps; ++i) {
    const double t = -3.0 + 6.0 * i / (steps - 1);
    best = std::min(best, norm_eval(x - t * b, norm));
  }
  return best;
}

}  // namespace

TEST(Rho, L2Projection) {
  const DistanceResult r = rho(vec({1, 1}), span1({1, 0}), NormSpec::l2());
  EXPECT_NEAR(r.value, 1.0, 1e-14);
  EXPECT_EQ(r.solver, DistanceSolver::closed_form_l2);
  ASSERT_EQ(r.witness_coeffs.size(), 1);
  EXPECT_NEAR(std::abs(r.witness_coeffs(0)), 1.0, 1e-14);
  EXPECT_TRUE(best_approximant(vec({1, 1}), span1({1, 0}), NormSpec::l2()).isApprox(vec({1, 0}), 1e-14));
}

TEST(Rho, SupNormAgainstBruteForce) {
  const Vector x = vec({1, -1});
  const double oracle = brute_force_line(x, vec({1, 1}), NormSpec::sup());
  EXPECT_NEAR(oracle, 1.0, 1e-5);
  const DistanceResult r = rho(x, span1({1, 1}), NormSpec::sup());
  EXPECT_NEAR(r.value, oracle, 1e-5);
  EXPECT_NEAR(r.value, 1.0, 1e-8);
  EXPECT_NEAR(r.witness_coeffs(0), 0.0, 1e-8);
  EXPECT_EQ(r.solver, DistanceSolver::linear_program);
}

TEST(Rho, L1FlatOfMinimizers) {
  const Vector x = vec({1, -1});
  const double oracle = brute_force_line(x, vec({1, 1}), NormSpec::l1());
  EXPECT_NEAR(oracle, 2.0, 1e-9);
  const DistanceResult r = rho(x, span1({1, 1}), NormSpec::l1());
  EXPECT_NEAR(r.value, 2.0, 1e-8);
  // Any y0 = c(1,1) with c in [-1, 1] is optimal.
  const Vector y0 = best_approximant(x, span1({1, 1}), NormSpec::l1());
  EXPECT_NEAR(y0(0), y0(1), 1e-12);
  EXPECT_LE(std::abs(y0(0)), 1.0 + 1e-8);
}

TEST(Rho, ZeroSubspaceGivesNorm) {
  test_support::Rng rng(3);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const Vector x = rng.vector(4);
    const DistanceResult r = rho(x, Subspace::zero(4), NormSpec(p));
    EXPECT_DOUBLE_EQ(r.value, norm_eval(x, NormSpec(p)));
    EXPECT_EQ(r.witness_coeffs.size(), 0);
    EXPECT_EQ(r.solver, DistanceSolver::zero_subspace);
  }
  EXPECT_TRUE(best_approximant(vec({2, 0, 0}), Subspace::zero(3), NormSpec::l2()).isZero());
}

TEST(Rho, ErrorsOnBadInput) {
  EXPECT_THROW(rho(vec({1, 2, 3}), span1({1, 0}), NormSpec::l2()), DimensionError);
  EXPECT_THROW(rho(vec({1, 2}), span1({1, 0}), NormSpec::l2(), 0.0), InputError);
  EXPECT_THROW(rho(vec({1, std::nan("")}), span1({1, 0}), NormSpec::l2()), InputError);
}

TEST(Rho, GeneralExponentAgainstBruteForce) {
  const Vector x = vec({0.3, -1.2, 0.8});
  const Vector b = vec({0.6, 0.0, 0.8});
  for (double p : {1.5, 3.0, 4.5}) {
    const NormSpec norm(p);
    const double oracle = brute_force_line(x, b, norm);
    const DistanceResult r = rho(x, span1({0.6, 0.0, 0.8}), norm);
    EXPECT_EQ(r.solver, DistanceSolver::convex_descent);
    EXPECT_LE(r.value, oracle + 1e-7);
    EXPECT_NEAR(r.value, oracle, 2e-5);
    EXPECT_LE(r.achieved_tol, 1e-7);
  }
}

TEST(Rho, CertificateIsDualFeasibleAndTight) {
  test_support::Rng rng(21);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const NormSpec norm(p);
    for (int t = 0; t < 30; ++t) {
      const auto m = static_cast<std::size_t>(rng.integer(2, 8));
      const auto k = static_cast<std::size_t>(rng.integer(1, static_cast<int>(m) - 1));
      const Subspace y(rng.matrix(m, k));
      const Vector x = rng.vector(m, -2, 2);
      const DistanceResult r = rho(x, y, norm);
      EXPECT_NEAR(norm_eval(r.dual_certificate, norm.dual()), 1.0, 1e-9);
      EXPECT_LE((y.basis().transpose() * r.dual_certificate).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_NEAR(r.dual_certificate.dot(x), r.value, default_distance_tol(norm) + 1e-12);
      EXPECT_LE(norm_eval(x - y.basis() * r.witness_coeffs, norm), r.value + r.achieved_tol + 1e-12);
      EXPECT_LE(r.value, norm_eval(x, norm) + 1e-12);
    }
  }
}

TEST(RhoOracle, Examples) {
  EXPECT_NEAR(rho_oracle(vec({1, 1}), span1({1, 0}), NormSpec::l2(), 3.0, 601), 1.0, 0.01);
  EXPECT_NEAR(rho_oracle(vec({1, -1}), span1({1, 1}), NormSpec::sup(), 3.0, 601), 1.0, 0.01);
  EXPECT_EQ(rho_oracle(vec({0, 0}), span1({1, 1}), NormSpec::l1(), 3.0, 601), 0.0);
}

TEST(RhoOracle, RejectsLargeRankAndCoarseGrid) {
  EXPECT_THROW(rho_oracle(Vector::Zero(5), Subspace::coordinate(5, 4), NormSpec::l2(), 1.0, 11), InputError);
  EXPECT_THROW(rho_oracle(Vector::Zero(2), span1({1, 0}), NormSpec::l2(), 1.0, 9), InputError);
}

TEST(RhoOracle, AgreesWithSolverOnSmallInstances) {
  test_support::Rng rng(7);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const NormSpec norm(p);
    for (int t = 0; t < 10; ++t) {
      const auto m = static_cast<std::size_t>(rng.integer(2, 4));
      const auto k = static_cast<std::size_t>(rng.integer(1, std::min<int>(2, static_cast<int>(m) - 1)));
      const Subspace y(rng.matrix(m, k));
      const Vector x = rng.vector(m);
      // Optimal coefficients satisfy |c_j| <= ||q_j||_dual * 2 ||x||.
      double radius = 0.0;
      for (Eigen::Index j = 0; j < y.basis().cols(); ++j)
        radius = std::max(radius, norm_eval(y.basis().col(j), norm.dual()) * 2.0 * norm_eval(x, norm));
      const int steps = 801;
      const double oracle = rho_oracle(x, y, norm, radius, steps);
      const double value = rho(x, y, norm).value;
      EXPECT_LE(value, oracle + 1e-7);
      EXPECT_LE(oracle - value, rho_oracle_resolution(y, norm, radius, steps) + 1e-7);
    }
  }
}

// Distance-function properties along random chains.
class DistanceProperties : public ::testing::TestWithParam<double> {};

TEST_P(DistanceProperties, Hold) {
  const NormSpec norm(GetParam());
  const double tol = default_distance_tol(norm);
  test_support::Rng rng(1234 + static_cast<unsigned>(std::isinf(GetParam()) ? 99 : GetParam() * 10));
  for (int t = 0; t < 20; ++t) {
    const Chain c = test_support::random_chain(rng, 6, 3, norm, true);
    const Vector x1 = rng.vector(6, -2, 2);
    const Vector x2 = rng.vector(6, -2, 2);
    double prev = kInf;
    for (std::size_t k = 1; k <= c.size(); ++k) {
      const Subspace& y = c.level(k);
      const double r1 = rho(x1, y, norm).value;
      EXPECT_LE(r1, prev + 2 * tol);
      prev = r1;
      const double r2 = rho(x2, y, norm).value;
      const double lam = rng.uniform(-4, 4);
      EXPECT_NEAR(rho(lam * x1, y, norm).value, std::abs(lam) * r1, tol * (1 + std::abs(lam)));
      const Vector v = y.is_zero() ? Vector::Zero(6) : Vector(y.basis() * rng.vector(y.rank(), -3, 3));
      EXPECT_NEAR(rho(x1 + v, y, norm).value, r1, 2 * tol);
      EXPECT_LE(rho(x1 + x2, y, norm).value, r1 + r2 + 3 * tol);
      EXPECT_LE(std::abs(r1 - r2), norm_eval(x1 - x2, norm) + 2 * tol);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, DistanceProperties, ::testing::Values(1.0, 1.5, 2.0, 3.0, kInf));
