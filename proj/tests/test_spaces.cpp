#include <cmath>

#include <gtest/gtest.h>

#include "conelab/rng.hpp"
#include "conelab/spaces.hpp"

using conelab::NormKind;
using conelab::Vector;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

constexpr NormKind kAllNorms[] = {NormKind::L2, NormKind::L1, NormKind::SUP, NormKind::TRIPLE};

}  // namespace

TEST(Norm, TripleOfFirstBasisVector) {
  EXPECT_DOUBLE_EQ(conelab::norm(Vector::unit(4, 1), NormKind::TRIPLE), 1.5);
}

TEST(Norm, TripleOfTwoThirdsE1IsOne) {
  const Vector x = (2.0 / 3.0) * Vector::unit(128, 1);
  EXPECT_NEAR(conelab::norm(x, NormKind::TRIPLE), 1.0, 1e-12);
}

TEST(Norm, ZeroVectorHasZeroNorm) {
  for (NormKind k : kAllNorms) EXPECT_EQ(conelab::norm(Vector::zero(5), k), 0.0);
}

TEST(Norm, MatchesHandComputedValues) {
  const Eigen::VectorXd x = vec({3.0, -4.0, 0.0});
  EXPECT_DOUBLE_EQ(conelab::norm(x, NormKind::L2), 5.0);
  EXPECT_DOUBLE_EQ(conelab::norm(x, NormKind::L1), 7.0);
  EXPECT_DOUBLE_EQ(conelab::norm(x, NormKind::SUP), 4.0);
  // 4 + sqrt((3/2)^2 + (4/4)^2)
  EXPECT_DOUBLE_EQ(conelab::norm(x, NormKind::TRIPLE), 4.0 + std::sqrt(2.25 + 1.0));
}

TEST(Vector, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Vector(Eigen::VectorXd()), conelab::InvalidInput);
  EXPECT_THROW(Vector(vec({1.0, NAN})), conelab::InvalidInput);
  EXPECT_THROW(Vector::unit(3, 4), conelab::InvalidInput);
}

TEST(Vector, MixedAmbientsDoNotCombine) {
  const Vector a = Vector::unit(3, 1, NormKind::L1);
  const Vector b = Vector::unit(3, 1, NormKind::L2);
  EXPECT_THROW(a + b, conelab::InvalidInput);
  EXPECT_THROW(a - Vector::unit(4, 1, NormKind::L1), conelab::InvalidInput);
}

TEST(ApplyT, BasisAndOnes) {
  const Eigen::VectorXd t1 = conelab::apply_T(Eigen::VectorXd(Eigen::VectorXd::Unit(4, 0)));
  EXPECT_EQ(t1, vec({0.5, 0.0, 0.0, 0.0}));
  const Eigen::VectorXd t = conelab::apply_T(Eigen::VectorXd(Eigen::VectorXd::Ones(4)));
  EXPECT_EQ(t, vec({0.5, 0.25, 0.125, 0.0625}));
  double s = 0.0;
  for (int n = 1; n <= 4; ++n) s += std::pow(4.0, -n);
  EXPECT_NEAR(t.norm(), std::sqrt(s), 1e-15);
  EXPECT_NEAR(t.norm(), 0.576222, 1e-6);
  EXPECT_LE(t.norm(), 1.0 / std::sqrt(3.0));
}

TEST(Inner, ReciprocalFunctionalAnnihilatesSlabWitness) {
  const long N = 12;
  Eigen::VectorXd f(N);
  for (long n = 1; n <= N; ++n) f(n - 1) = 1.0 / static_cast<double>(n);
  for (long n = 2; n <= N; ++n) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
    x(n - 1) = 1.0;
    x(0) -= 1.0 / static_cast<double>(n);
    EXPECT_NEAR(conelab::inner(Vector(f), Vector(x)), 0.0, 1e-15) << "n=" << n;
  }
  EXPECT_EQ(conelab::inner(Vector::unit(3, 1), Vector::unit(3, 2)), 0.0);
}

TEST(Inner, SelfPairingIsSquaredL2Norm) {
  conelab::Rng rng(7);
  const Vector x(rng.normal_vector(9));
  EXPECT_NEAR(conelab::inner(x, x), std::pow(conelab::norm(x, NormKind::L2), 2), 1e-12);
}

TEST(DualNorm, PairsByKind) {
  const Eigen::VectorXd f = vec({1.0, -2.0, 2.0});
  EXPECT_DOUBLE_EQ(conelab::dual_norm(f, NormKind::L2), 3.0);
  EXPECT_DOUBLE_EQ(conelab::dual_norm(f, NormKind::L1), 2.0);
  EXPECT_DOUBLE_EQ(conelab::dual_norm(f, NormKind::SUP), 5.0);
}

TEST(NormKind, NamesRoundTrip) {
  for (NormKind k : kAllNorms)
    EXPECT_EQ(conelab::norm_kind_from_string(conelab::to_string(k)), k);
  EXPECT_THROW(conelab::norm_kind_from_string("l7"), conelab::InvalidInput);
}

TEST(TripleAlpha, ClosedForm) {
  EXPECT_NEAR(conelab::triple_alpha(1), 1.5, 1e-15);
  EXPECT_NEAR(conelab::triple_alpha(128), 1.0 + 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(WeakNullGap, FlatFamilyDecaysOnProbesOnly) {
  const long N = 128;
  std::vector<Vector> fam;
  for (long n : {10L, 50L, 100L}) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(N);
    z(0) = -1.0 / (std::sqrt(2.0) * static_cast<double>(n));
    for (long k = 2; k <= n + 1; ++k) z(k - 1) = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
    fam.emplace_back(z);
  }
  const auto rows = conelab::weak_null_gap(fam, 3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[2].value("probe_max"), 1.0 / std::sqrt(200.0), 1e-15);
  EXPECT_NEAR(rows[2].value("probe_max"), 0.0707, 1e-4);
  for (const auto& r : rows) EXPECT_GE(r.value("norm"), 1.0 / std::sqrt(2.0));
  EXPECT_TRUE(rows[2].flag("pc_failure_witness"));
}

TEST(WeakNullGap, ConstantAndNormNullFamiliesAreNotWitnesses) {
  std::vector<Vector> constant, shrinking;
  for (int n = 1; n <= 20; ++n) {
    constant.push_back(Vector::unit(8, 1));
    shrinking.push_back((1.0 / n) * Vector::unit(8, 1));
  }
  for (const auto& r : conelab::weak_null_gap(constant, 3)) {
    EXPECT_EQ(r.value("probe_max"), 1.0);
    EXPECT_FALSE(r.flag("pc_failure_witness"));
  }
  const auto rows = conelab::weak_null_gap(shrinking, 3);
  for (const auto& r : rows) EXPECT_FALSE(r.flag("pc_failure_witness"));
  EXPECT_NEAR(rows.back().value("norm"), 0.05, 1e-15);
}

class NormProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(NormProperties, TripleIsSandwichedBySupNorm) {
  conelab::Rng rng(GetParam());
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index N = 1 + static_cast<Eigen::Index>(rng.uniform() * 64);
    const Eigen::VectorXd x = rng.normal_vector(N);
    const double sup = conelab::norm(x, NormKind::SUP);
    const double tri = conelab::norm(x, NormKind::TRIPLE);
    EXPECT_LE(sup, tri);
    EXPECT_LE(tri, conelab::triple_alpha(N) * sup * (1 + 1e-15));
    EXPECT_LE(conelab::triple_alpha(N), 1.0 + 1.0 / std::sqrt(3.0));
    EXPECT_LE(conelab::apply_T(x).norm(), sup / std::sqrt(3.0) * (1 + 1e-15));
  }
}

TEST_P(NormProperties, ApplyTIsLinear) {
  conelab::Rng rng(GetParam());
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd x = rng.normal_vector(16), y = rng.normal_vector(16);
    const double a = rng.normal(), b = rng.normal();
    const Eigen::VectorXd lhs = conelab::apply_T(Eigen::VectorXd(a * x + b * y));
    const Eigen::VectorXd rhs = a * conelab::apply_T(x) + b * conelab::apply_T(y);
    EXPECT_LE((lhs - rhs).lpNorm<Eigen::Infinity>(), 1e-14 * (1 + std::abs(a) + std::abs(b)) * 4);
  }
}

TEST_P(NormProperties, TriangleAndHomogeneity) {
  conelab::Rng rng(GetParam());
  for (NormKind k : kAllNorms) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = rng.normal_vector(10), y = rng.normal_vector(10);
      const double a = rng.normal();
      const double nx = conelab::norm(x, k), ny = conelab::norm(y, k);
      EXPECT_LE(conelab::norm(Eigen::VectorXd(x + y), k), (nx + ny) * (1 + 1e-14));
      EXPECT_NEAR(conelab::norm(Eigen::VectorXd(a * x), k), std::abs(a) * nx, 1e-13 * (1 + std::abs(a) * nx));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, NormProperties, ::testing::Values(1u, 2u, 3u));
