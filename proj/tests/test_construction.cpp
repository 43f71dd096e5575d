#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lethargy/construction.hpp"
#include "test_util.hpp"

using namespace lethargy;
using test_support::hilbert_witness;

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

void expect_achieves(const ConstructionTrace& t, const Chain& c, double tol) {
  for (std::size_t k = 1; k <= t.targets.size(); ++k) {
    EXPECT_NEAR(rho(t.x, c.level(k), c.norm).value, t.targets.at(k), tol) << "level " << k;
  }
}

}  // namespace

TEST(NormalizeStep, CoordinateChain) {
  const Chain c = Chain::coordinate(3, 2, NormSpec::l2());
  const Vector y = normalize_step(c, 1);
  EXPECT_NEAR((y - vec({0, 1, 0})).norm(), 0.0, 1e-12);
}

TEST(NormalizeStep, ProjectionRemoved) {
  Matrix b(2, 2);
  b << 1, 1, 0, 1;
  for (double p : {2.0, 1.0}) {
    const Chain c{2, NormSpec(p), {span1({1, 0}), Subspace(b)}};
    const Vector y = normalize_step(c, 1);
    EXPECT_NEAR((y - vec({0, 1})).norm(), 0.0, 1e-8) << "p=" << p;
  }
}

TEST(NormalizeStep, UnitAndDistanceOne) {
  test_support::Rng rng(5);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const Chain c = test_support::random_chain(rng, 6, 3, NormSpec(p));
    for (std::size_t n = 0; n <= c.size(); ++n) {
      const Vector y = normalize_step(c, n);
      EXPECT_NEAR(norm_eval(y, c.norm), 1.0, 1e-12);
      EXPECT_NEAR(rho(y, c.extended_level(n), c.norm).value, 1.0, 1e-6);
      EXPECT_TRUE(contains(c.extended_level(n + 1), y, 1e-9));
    }
  }
}

TEST(FiniteConstruct, HilbertExample) {
  const Chain c = Chain::coordinate(3, 2, NormSpec::l2());
  const TargetSequence d = TargetSequence::finite({0.5, 0.2});
  const ConstructionTrace t = finite_construct(c, d);
  expect_achieves(t, c, 1e-8);
  const Vector oracle = hilbert_witness(3, d.values);
  EXPECT_NEAR(oracle(1), std::sqrt(0.25 - 0.04), 1e-15);
  EXPECT_NEAR(test_support::coordinate_distance_l2(oracle, 1), 0.5, 1e-15);
  EXPECT_NEAR(test_support::coordinate_distance_l2(oracle, 2), 0.2, 1e-15);
  EXPECT_LE(t.x.norm(), 0.5 + 1 + 1e-6);
}

TEST(FiniteConstruct, AllEqualTargets) {
  const Chain c = Chain::coordinate(5, 4, NormSpec::l2());
  const ConstructionTrace t = finite_construct(c, TargetSequence::finite({0.7, 0.7, 0.7, 0.7}));
  expect_achieves(t, c, 1e-8);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_EQ(t.coefficients[k - 1], 0.0);
  EXPECT_NEAR((t.x - 0.7 * vec({0, 0, 0, 0, 1})).norm(), 0.0, 1e-12);
}

TEST(FiniteConstruct, ZeroTargets) {
  const Chain c = Chain::coordinate(3, 2, NormSpec::sup());
  const ConstructionTrace t = finite_construct(c, TargetSequence::finite({0.0, 0.0}));
  EXPECT_TRUE(t.x.isZero(0.0));
  EXPECT_EQ(t.max_residual(), 0.0);
}

TEST(FiniteConstruct, ZeroTailLandsInNextLevel) {
  test_support::Rng rng(12);
  for (double p : {1.0, 2.0, kInf}) {
    const Chain c = test_support::random_chain(rng, 7, 5, NormSpec(p));
    const TargetSequence d = TargetSequence::finite({0.9, 0.4, 0.0, 0.0});
    const ConstructionTrace t = finite_construct(c, d);
    expect_achieves(t, c, 1e-5);
    EXPECT_TRUE(contains(c.level(3), t.x, 1e-8));
  }
}

TEST(FiniteConstruct, HilbertOracleRandom) {
  test_support::Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const auto levels = static_cast<std::size_t>(rng.integer(1, 6));
    const auto dim = static_cast<std::size_t>(rng.integer(static_cast<int>(levels) + 1, 10));
    const Chain c = Chain::coordinate(dim, levels, NormSpec::l2());
    const TargetSequence d = TargetSequence::finite(rng.decreasing(levels, 0.01, 1.0));
    const ConstructionTrace t = finite_construct(c, d);
    const Vector oracle = hilbert_witness(dim, d.values);
    for (std::size_t k = 1; k <= levels; ++k) {
      EXPECT_NEAR(test_support::coordinate_distance_l2(oracle, k), d.at(k), 1e-12);
      EXPECT_NEAR(test_support::coordinate_distance_l2(t.x, k), d.at(k), 1e-6);
    }
    EXPECT_GE(t.x.norm(), d.at(1) - 1e-6);
    EXPECT_LE(t.x.norm(), d.at(1) + 1 + 1e-6);
  }
}

TEST(FiniteConstruct, GeneralNormsAndRankGaps) {
  test_support::Rng rng(99);
  for (double p : {1.0, 1.5, 3.0, kInf}) {
    for (int trial = 0; trial < 4; ++trial) {
      const Chain c = test_support::random_chain(rng, 7, 3, NormSpec(p), trial % 2 == 0);
      const TargetSequence d = TargetSequence::finite(rng.decreasing(3, 0.05, 1.0));
      const ConstructionTrace t = finite_construct(c, d);
      EXPECT_LE(t.max_residual(), 1e-6) << "p=" << p;
      expect_achieves(t, c, 2e-6);
      EXPECT_LE(norm_eval(t.x, c.norm), d.at(1) + 1 + 1e-6);
    }
  }
}

TEST(FiniteConstruct, Errors) {
  const Chain c = Chain::coordinate(3, 2, NormSpec::l2());
  EXPECT_THROW(finite_construct(c, TargetSequence::finite({0.5, 0.3, 0.1})), InputError);
  EXPECT_THROW(finite_construct(c, TargetSequence::geometric(0.5, 0.3, 2)), InputError);
  const Chain full{2, NormSpec::l2(), {Subspace::coordinate(2, 1), Subspace::whole(2)}};
  EXPECT_THROW(finite_construct(full, TargetSequence::finite({0.5, 0.3})), InputError);
  EXPECT_NO_THROW(finite_construct(full, TargetSequence::finite({0.5, 0.0})));
}

TEST(InterpolatingFamily, EqualTargets) {
  const Subspace q1 = Subspace::coordinate(3, 1), q2 = Subspace::coordinate(3, 2), q3 = Subspace::whole(3);
  const InterpolationFamily f = interpolating_family(q1, q2, q3, NormSpec::l2(), {1.0}, {1.0});
  EXPECT_NEAR(f.members[0].mu, 1.0, 1e-9);
  EXPECT_NEAR(rho(f.members[0].q, q1, NormSpec::l2()).value, 1.0, 1e-8);
  EXPECT_NEAR(rho(f.members[0].q, q2, NormSpec::l2()).value, 1.0, 1e-8);
}

TEST(InterpolatingFamily, CoordinateTargets) {
  const Subspace q1 = Subspace::coordinate(3, 1), q2 = Subspace::coordinate(3, 2), q3 = Subspace::whole(3);
  const InterpolationFamily f = interpolating_family(q1, q2, q3, NormSpec::l2(), {1.25}, {1.0});
  EXPECT_NEAR(rho(f.members[0].q, q1, NormSpec::l2()).value, 1.25, 1e-6);
  EXPECT_NEAR(rho(f.members[0].q, q2, NormSpec::l2()).value, 1.0, 1e-6);
  // q = e3 + (mu - 1) e2 with mu - 1 = sqrt(1.25^2 - 1).
  EXPECT_NEAR(f.members[0].mu, 1.75, 1e-6);
}

TEST(InterpolatingFamily, DegenerateV) {
  const Subspace q1 = Subspace::coordinate(3, 1), q2 = Subspace::coordinate(3, 2), q3 = Subspace::whole(3);
  const InterpolationFamily f = interpolating_family(q1, q2, q3, NormSpec::l2(), {1.0}, {0.0});
  EXPECT_NEAR(rho(f.members[0].q, q2, NormSpec::l2()).value, 0.0, 1e-9);
  EXPECT_NEAR(rho(f.members[0].q, q1, NormSpec::l2()).value, 1.0, 1e-6);
}

TEST(InterpolatingFamily, RandomTriples) {
  test_support::Rng rng(314);
  for (double p : {1.0, 2.0, 3.0, kInf}) {
    for (int trial = 0; trial < 4; ++trial) {
      const Chain c = test_support::random_chain(rng, 6, 3, NormSpec(p), trial % 2 == 1);
      std::vector<double> u, v;
      for (int m = 0; m < 3; ++m) {
        v.push_back(rng.uniform(0.25, 1.0));
        u.push_back(v.back() + rng.uniform(0.0, 1.0));
      }
      const InterpolationFamily f = interpolating_family(c.level(1), c.level(2), c.level(3), c.norm, u, v);
      for (std::size_t m = 0; m < u.size(); ++m) {
        EXPECT_NEAR(rho(f.members[m].q, c.level(1), c.norm).value, u[m], 1e-5);
        EXPECT_NEAR(rho(f.members[m].q, c.level(2), c.norm).value, v[m], 1e-5);
        EXPECT_TRUE(contains(c.level(3), f.members[m].q, 1e-8));
        EXPECT_GE(f.members[m].mu, v[m] - 1e-12);
      }
    }
  }
}

TEST(InterpolatingFamily, Errors) {
  const Subspace q1 = Subspace::coordinate(3, 1), q2 = Subspace::coordinate(3, 2), q3 = Subspace::whole(3);
  EXPECT_THROW(interpolating_family(q2, q1, q3, NormSpec::l2(), {1.0}, {1.0}), InputError);
  EXPECT_THROW(interpolating_family(q1, q2, q3, NormSpec::l2(), {0.5}, {1.0}), InputError);
  EXPECT_THROW(interpolating_family(q1, q2, q3, NormSpec::l2(), {1.0, 2.0}, {1.0}), InputError);
}

TEST(Lipschitz, Examples) {
  const Subspace q1 = Subspace::coordinate(3, 1), q2 = Subspace::coordinate(3, 2), q3 = Subspace::whole(3);
  const InterpolationFamily eq = interpolating_family(q1, q2, q3, NormSpec::l2(), {1.0, 1.0}, {1.0, 1.0});
  const LipschitzReport r0 = lipschitz_check(eq, NormSpec::l2());
  EXPECT_TRUE(r0.holds);
  EXPECT_NEAR(norm_eval(eq.members[0].q - eq.members[1].q, NormSpec::l2()), 0.0, 1e-9);

  const InterpolationFamily two = interpolating_family(q1, q2, q3, NormSpec::l2(), {1.25, 1.1}, {1.0, 1.0});
  const LipschitzReport r1 = lipschitz_check(two, NormSpec::l2());
  const double bound = (norm_eval(two.z, NormSpec::l2()) + 2.0) * 0.25;
  EXPECT_TRUE(r1.holds);
  EXPECT_NEAR(r1.worst_slack, bound - norm_eval(two.members[0].q - two.members[1].q, NormSpec::l2()), 1e-12);

  const InterpolationFamily one = interpolating_family(q1, q2, q3, NormSpec::l2(), {1.3}, {1.0});
  EXPECT_TRUE(lipschitz_check(one, NormSpec::l2()).holds);
  EXPECT_EQ(lipschitz_check(one, NormSpec::l2()).pairs_checked, 0u);
}

TEST(ConstructPrefix, SingleLevel) {
  const Chain c = Chain::coordinate(3, 2, NormSpec::sup());
  const ConstructionTrace t = construct_prefix(c, TargetSequence::finite({0.6, 0.1}), 1);
  EXPECT_NEAR(rho(t.x, c.level(1), c.norm).value, 0.6, 1e-6);
  EXPECT_EQ(t.coefficients.size(), 1u);
  EXPECT_EQ(t.coefficients[0], 0.6);
}

TEST(ConstructPrefix, HilbertTwoLevels) {
  const Chain c = Chain::coordinate(4, 3, NormSpec::l2());
  const TargetSequence d = TargetSequence::finite({0.5, 0.2});
  const ConstructionTrace t = construct_prefix(c, d, 2);
  const Vector oracle = hilbert_witness(4, d.values);
  for (std::size_t k = 1; k <= 2; ++k) {
    EXPECT_NEAR(test_support::coordinate_distance_l2(t.x, k), test_support::coordinate_distance_l2(oracle, k),
                1e-6);
  }
  ASSERT_EQ(t.coefficient_checks.size(), 2u);
  EXPECT_EQ(t.coefficient_checks[1].lambda, 0.2);
}

TEST(ConstructPrefix, ZeroTargetRestricts) {
  const Chain c = Chain::coordinate(4, 3, NormSpec::l1());
  const ConstructionTrace t = construct_prefix(c, TargetSequence::finite({0.5, 0.3, 0.0}), 3);
  expect_achieves(t, c, 1e-5);
  EXPECT_TRUE(contains(c.level(3), t.x, 1e-9));
}

TEST(ConstructPrefix, RejectsFailingTailCondition) {
  const Chain c = Chain::coordinate(4, 3, NormSpec::l2());
  EXPECT_THROW(construct_prefix(c, TargetSequence::geometric(0.5, 0.5, 1), 2), InputError);
  EXPECT_NO_THROW(construct_prefix(c, TargetSequence::geometric(1.0, 0.4, 1), 3));
}

TEST(ConstructPrefix, GeneralNorms) {
  test_support::Rng rng(8);
  for (double p : {1.0, 1.5, 2.0, kInf}) {
    const Chain c = test_support::random_chain(rng, 7, 4, NormSpec(p));
    const TargetSequence d = TargetSequence::geometric(1.0, 0.3, 1);
    const ConstructionTrace t = construct_prefix(c, d, 3);
    expect_achieves(t, c, 2e-6);
    for (const auto& chk : t.coefficient_checks) EXPECT_TRUE(chk.within_dk || !chk.holds);
  }
}

TEST(ConstructSequence, ZeroTailStabilizes) {
  const Chain c = Chain::coordinate(6, 5, NormSpec::l2());
  const SequenceResult s = construct_sequence(c, TargetSequence::finite({0.8, 0.3, 0.0}), 5);
  ASSERT_TRUE(s.all_succeeded);
  for (Eigen::Index a = 1; a < 5; ++a) {
    for (Eigen::Index b = 1; b < 5; ++b) EXPECT_NEAR(s.differences(a, b), 0.0, 1e-12);
  }
}

TEST(ConstructSequence, SinglePrefix) {
  const Chain c = Chain::coordinate(3, 2, NormSpec::l2());
  const SequenceResult s = construct_sequence(c, TargetSequence::geometric(1.0, 0.3, 1), 1);
  EXPECT_TRUE(s.max_later.empty());
  EXPECT_TRUE(s.non_increasing);
}

TEST(ConstructSequence, GeometricThirdShrinks) {
  const Chain c = Chain::coordinate(10, 9, NormSpec::l2());
  const SequenceResult s = construct_sequence(c, TargetSequence::geometric(1.0, 1.0 / 3.0, 1), 8);
  ASSERT_TRUE(s.all_succeeded);
  EXPECT_TRUE(s.non_increasing);
  for (std::size_t n = 0; n < 8; ++n) expect_achieves(*s.traces[n], c, 1e-6);
}

TEST(SubspaceCondition, Examples) {
  const Chain c = Chain::coordinate(4, 3, NormSpec::l2());
  const TargetSequence d = TargetSequence::finite({1.0, 0.5, 0.25});
  const SubspaceConditionReport ok = check_subspace_condition(c, d, {vec({0, 0, 1, 0})}, 2);
  EXPECT_TRUE(ok.no_counterexample);
  EXPECT_NE(ok.message.find("sampled"), std::string::npos);

  const SubspaceConditionReport bad = check_subspace_condition(c, d, {vec({0, 0, 1, 0}), vec({1, 1, 0, 0})}, 2);
  EXPECT_FALSE(bad.no_counterexample);
  EXPECT_EQ(bad.first_counterexample, 1u);

  const Chain c2{2, NormSpec::l2(), {Subspace::zero(2), span1({1, 0})}};
  const SubspaceConditionReport r = check_subspace_condition(c2, TargetSequence::finite({2.0, 1.0}), {vec({1, 0.5})}, 2);
  EXPECT_DOUBLE_EQ(r.ratio, 2.0);
  EXPECT_NEAR(r.samples[0].rho, 0.5, 1e-12);
  EXPECT_FALSE(r.no_counterexample);

  EXPECT_THROW(check_subspace_condition(c, TargetSequence::finite({1.0, 0.0}), {}, 2), InputError);
  EXPECT_THROW(check_subspace_condition(c, d, {}, 1), InputError);
}
