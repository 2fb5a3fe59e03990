#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "conelab/analysis.hpp"
#include "conelab/rng.hpp"

using conelab::ConeSpec;
using conelab::SetSpec;
using conelab::Vector;
using conelab::Verdict;
using Eigen::VectorXd;

namespace {

constexpr double kTol = 1e-9;

VectorXd positive_vector(conelab::Rng& rng, Eigen::Index n) {
  return (rng.normal_vector(n).array().abs() + 0.05).matrix();
}

std::vector<ConeSpec> random_cones(conelab::Rng& rng) {
  std::vector<ConeSpec> out;
  const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform() * 9);
  const ConeSpec o = ConeSpec::orthant(n);
  const ConeSpec s = ConeSpec::slanted(n);
  out.push_back(o);
  out.push_back(s);
  const auto bo = conelab::base_of(o, Vector(positive_vector(rng, n)), 1.0);
  out.push_back(conelab::dilate(o, bo, rng.uniform(0.05, 1.0) * conelab::max_dilation(bo)));
  const auto bs = conelab::base_of(s, Vector::unit(n, 1), 1.0);
  out.push_back(conelab::dilate(s, bs, rng.uniform(0.05, 1.0) * conelab::max_dilation(bs)));
  return out;
}

std::vector<SetSpec> families() {
  VectorXd normal = VectorXd::Ones(4) / 2.0;
  return {SetSpec::k_flat(4),      SetSpec::k_minus_p(6), SetSpec::k_slab(6),
          SetSpec::k_ball_triple(6), SetSpec::ball_2d(),  SetSpec::square_2d(),
          SetSpec::half_space_cap(normal, 0.5)};
}

}  // namespace

class Properties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Properties, ConeProjectionVariationalInequality) {
  conelab::Rng rng(GetParam());
  for (int round = 0; round < 5; ++round) {
    for (const ConeSpec& p : random_cones(rng)) {
      const auto samples = conelab::sample_cone(p, 100, GetParam() + round);
      for (int trial = 0; trial < 10; ++trial) {
        const Vector z(2.0 * rng.normal_vector(p.dim()));
        const Vector ps = conelab::cone_project(p, z).point;
        ASSERT_TRUE(conelab::cone_contains(p, ps, 10 * kTol));
        for (const Vector& q : samples)
          EXPECT_LE(conelab::inner(z - ps, q - ps), 10 * kTol * (1 + conelab::norm(q)));
      }
    }
  }
}

TEST_P(Properties, DualConsistency) {
  conelab::Rng rng(GetParam());
  int positives = 0;
  for (int round = 0; round < 5; ++round) {
    for (const ConeSpec& p : random_cones(rng)) {
      auto probes = conelab::cone_generators(p);
      for (const Vector& g : conelab::sample_cone(p, 200, GetParam() * 7 + round)) probes.push_back(g);
      for (int trial = 0; trial < 20; ++trial) {
        const Vector f(trial % 2 ? rng.normal_vector(p.dim()) : positive_vector(rng, p.dim()));
        const double m = conelab::dual_margin(p, f);
        if (!(m > 0)) continue;
        ++positives;
        EXPECT_TRUE(conelab::dual_strictly_positive(p, f, m / 2));
        for (const Vector& g : probes) EXPECT_GT(conelab::inner(f, g), 0.0);
      }
    }
  }
  EXPECT_GT(positives, 0);
}

TEST_P(Properties, DilationMonotonicity) {
  conelab::Rng rng(GetParam());
  for (int round = 0; round < 10; ++round) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform() * 9);
    const ConeSpec cones[] = {ConeSpec::orthant(n), ConeSpec::slanted(n)};
    for (const ConeSpec& p : cones) {
      const VectorXd fv = std::holds_alternative<conelab::Slanted>(p.family()) ? VectorXd(VectorXd::Unit(n, 0))
                                                                               : positive_vector(rng, n);
      const auto b = conelab::base_of(p, Vector(fv), 1.0);
      const double dmax = conelab::max_dilation(b);
      const double d1 = rng.uniform(0.01, 0.5) * dmax;
      const double d2 = rng.uniform(d1 / dmax, 1.0) * dmax;
      const ConeSpec p1 = conelab::dilate(p, b, d1);
      const ConeSpec p2 = conelab::dilate(p, b, d2);
      for (const Vector& x : conelab::sample_cone(p, 300, GetParam() + round))
        EXPECT_TRUE(conelab::cone_contains(p1, x, kTol * (1 + conelab::norm(x))));
      for (const Vector& x : conelab::sample_cone(p1, 300, GetParam() + round))
        EXPECT_TRUE(conelab::cone_contains(p2, x, kTol * (1 + conelab::norm(x))));
    }
  }
}

TEST_P(Properties, PosImpliesMax) {
  conelab::Rng rng(GetParam());
  int supported = 0;
  for (const SetSpec& k : families()) {
    const ConeSpec p = conelab::natural_cone(k);
    const auto pts = conelab::sample_set(k, 3, GetParam());
    for (int trial = 0; trial < 3; ++trial) {
      const Vector f(positive_vector(rng, k.dim()), k.ambient());
      const Vector at_max = conelab::linear_maximize(k, f).x;
      for (const Vector& x : {at_max, pts[static_cast<std::size_t>(trial)]}) {
        const auto c = conelab::pos_support_check(k, p, x, f);
        if (!c.holds()) continue;
        ++supported;
        EXPECT_EQ(conelab::is_maximal(k, p, x).verdict, Verdict::kMaximal) << conelab::to_string(k.family());
      }
    }
  }
  EXPECT_GT(supported, 0);
}

TEST_P(Properties, CertificateReplay) {
  conelab::Rng rng(GetParam());
  int dominated = 0, unsupported = 0;
  for (const SetSpec& k : families()) {
    const ConeSpec p = conelab::natural_cone(k);
    for (const Vector& x : conelab::sample_set(k, 3, GetParam() + 100)) {
      const auto c = conelab::is_maximal(k, p, x);
      if (c.verdict == Verdict::kDominated) {
        ++dominated;
        ASSERT_TRUE(c.witness.has_value());
        for (const char* name : {"set_violation", "cone_violation", "gap"})
          EXPECT_NEAR(conelab::replay_residual(k, p, x, c, name), c.residual(name), 1e-12) << name;
      }
      const Vector f(rng.normal_vector(k.dim()), k.ambient());
      const auto s = conelab::pos_support_check(k, p, x, f);
      if (!s.holds() && s.witness) {
        ++unsupported;
        EXPECT_NEAR(conelab::replay_residual(k, p, x, s, "witness_value"), s.residual("witness_value"), 1e-12);
        if (s.verdict == Verdict::kNotSupported) {
          EXPECT_LE(conelab::set_violation(k, *s.witness), kTol);
          EXPECT_GT(s.residual("witness_value"), conelab::inner(f, x) + kTol);
        } else {
          // A cone ray on which f is not strictly positive.
          EXPECT_TRUE(conelab::cone_contains(p, Vector(s.witness->coords(), p.ambient()), kTol));
          EXPECT_LE(s.residual("witness_value"), kTol * conelab::norm(*s.witness));
        }
      }
    }
  }
  EXPECT_GT(dominated, 0);
  EXPECT_GT(unsupported, 0);
}

TEST_P(Properties, ModulusAntiMonotoneAndStMaxImpliesMax) {
  conelab::Rng rng(GetParam());
  const ConeSpec o2 = ConeSpec::orthant(2);
  for (int trial = 0; trial < 4; ++trial) {
    const double th = rng.uniform(0.0, std::numbers::pi / 2);
    const Vector x(VectorXd(Eigen::Vector2d(std::cos(th), std::sin(th))));
    const double e1 = rng.uniform(0.1, 0.8), e2 = rng.uniform(e1, 1.2);
    const auto m1 = conelab::strict_max_modulus(SetSpec::ball_2d(), o2, x, e1);
    const auto m2 = conelab::strict_max_modulus(SetSpec::ball_2d(), o2, x, e2);
    EXPECT_LE(m1.delta_hat, m2.delta_hat + kTol);
    if (m1.delta_hat > 0 && m2.delta_hat > 0)
      EXPECT_EQ(conelab::is_maximal(SetSpec::ball_2d(), o2, x).verdict, Verdict::kMaximal);
  }
  const double e1 = rng.uniform(0.2, 0.5), e2 = rng.uniform(e1, 0.7);
  const auto a1 = conelab::strict_max_modulus(SetSpec::k_flat(8), ConeSpec::orthant(8), Vector::zero(8), e1);
  const auto a2 = conelab::strict_max_modulus(SetSpec::k_flat(8), ConeSpec::orthant(8), Vector::zero(8), e2);
  EXPECT_LE(a1.delta_hat, a2.delta_hat + kTol);
}

TEST_P(Properties, AbbIteratesArePositivePoints) {
  conelab::Rng rng(GetParam());
  const ConeSpec o2 = ConeSpec::orthant(2);
  const auto base = conelab::base_of(o2, Vector(VectorXd::Ones(2)), 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const double th = rng.uniform(0.0, std::numbers::pi / 2);
    const Vector xbar(VectorXd(Eigen::Vector2d(std::cos(th), std::sin(th))));
    const auto tr = conelab::abb_approximate(SetSpec::ball_2d(), o2, base, xbar,
                                             conelab::geometric_schedule(0.45, 0.5, 12));
    for (const auto& it : tr.iterates) {
      EXPECT_GT(conelab::dual_margin(o2, it.f), 0.0);
      EXPECT_LE(it.support_residual, 1e-8);
      const auto c = conelab::pos_support_check(SetSpec::ball_2d(), o2, it.x, it.f);
      EXPECT_TRUE(c.holds());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, Properties, ::testing::Values(1u, 2u, 3u));
