// Copyright (C) 2026 The swcyl authors. MIT License.

#include <gtest/gtest.h>

#include <random>

#include "swcyl/symbol.hpp"

using namespace swcyl;
using namespace swcyl::kernel;

TEST(Admissibility, RandomParametrizationsSatisfyIdentity)
{
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng);
    ASSERT_TRUE(check_params(p).ok());
    const auto s = build_symbol(p);
    const auto r = check_admissible(s);
    EXPECT_LT(r.traciality_residual, 1e-9);
    EXPECT_LT(r.hermitian_residual, 1e-9);
    EXPECT_TRUE(s.flags.tracial && s.flags.hermitian);
  }
}

TEST(Admissibility, ParityIsHermitianButNotTracial)
{
  const auto s = builtin::parity();
  EXPECT_TRUE(s.flags.hermitian);
  EXPECT_FALSE(s.flags.tracial);
  EXPECT_TRUE(s.flags.finite_trace);
  EXPECT_NEAR(check_admissible(s).traciality_residual, 2.0, 1e-12);  // |1|^2 + |1|^2 - 0 at theta = pi/2
}

TEST(Params, InvariantViolationsAreRejected)
{
  KernelParams odd_h{[](double t) { return 0.3 * std::sin(t); }, [](double) { return 0.0; }, "odd-h"};
  EXPECT_THROW(build_symbol(odd_h), InvariantViolation);
  KernelParams big_h{[](double t) { return 1.2 * std::cos(t); }, [](double) { return 0.0; }, "big-h"};
  EXPECT_THROW(build_symbol(big_h), InvariantViolation);
  KernelParams even_phi{[](double) { return 0.0; }, [](double t) { return std::cos(t); }, "even-phi"};
  EXPECT_THROW(build_symbol(even_phi), InvariantViolation);
  // h must flip sign under t -> t + pi
  KernelParams periodic_h{[](double t) { return 0.2 * std::cos(2.0 * t); }, [](double) { return 0.0; }, "h2"};
  EXPECT_THROW(build_symbol(periodic_h), InvariantViolation);
}

TEST(Builtins, FlagsAndConstants)
{
  const auto sc = builtin::by_name("sqrt-cos");
  EXPECT_NEAR(sc.isometry_measure, 0.5, 1e-12);
  EXPECT_NEAR(sc.edge_exponent, 0.5, 1e-3);
  EXPECT_EQ(sc.flags.injective, Injectivity::No);

  const auto hc = builtin::by_name("half-cos");
  EXPECT_NEAR(hc.isometry_measure, 1.0, 1e-12);
  EXPECT_EQ(hc.flags.injective, Injectivity::Yes);
  EXPECT_NEAR(std::abs(hc.value(0.0) - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(hc.value(pi)), 0.0, 1e-14);

  const auto tw = builtin::by_name("twisted-h");
  EXPECT_EQ(tw.flags.injective, Injectivity::Yes);

  const auto co = builtin::by_name("collision");
  const auto cp = builtin::params_by_name("collision");
  const auto an = analyze_injectivity(co, &*cp);
  EXPECT_EQ(an.verdict, Injectivity::No);
  EXPECT_TRUE(an.antipodal_shift_collision);
  ASSERT_TRUE(an.c.has_value());
  EXPECT_NEAR(*an.c, 2.0, 1e-9);

  const auto par = builtin::parity();
  EXPECT_NEAR(par.edge_exponent, 0.0, 1e-12);
  EXPECT_FALSE(exact_gram(par, 2).has_value());
  EXPECT_THROW(builtin::by_name("nope"), std::invalid_argument);
}

// G_{00} = int L_0(j)^2 dj. For sqrt-cos the reduced symbol is constant 1/sqrt(2),
// so P_0 = Q_0 = 1 and G_00 = 2.
TEST(ExactGram, SqrtCosClosedForm)
{
  const auto G = exact_gram(builtin::by_name("sqrt-cos"), 3);
  ASSERT_TRUE(G.has_value());
  EXPECT_NEAR(std::abs((*G)(3, 3) - 2.0), 0.0, 1e-12);
  EXPECT_LT(((*G) - G->transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ExactGram, SamplesAgreeWithClosedForm)
{
  const auto cf = builtin::by_name("half-cos");
  auto sm = symbol_from_samples(cf.a.samples, "half-cos-samples");
  const auto G1 = exact_gram(cf, 4), G2 = exact_gram(sm, 4);
  ASSERT_TRUE(G1 && G2);
  // uniform samples of a sqrt edge: algebraic convergence
  EXPECT_LT(((*G1) - (*G2)).cwiseAbs().maxCoeff(), 5e-3);
}

TEST(Injectivity, VerdictsFollowAntipodalRule)
{
  for (const auto & name : builtin::names()) {
    const auto s = builtin::by_name(name);
    const auto p = builtin::params_by_name(name);
    const auto an = analyze_injectivity(s, p ? &*p : nullptr);
    const bool expect_no = (name == "parity" || name == "sqrt-cos" || name == "collision");
    EXPECT_EQ(an.verdict == Injectivity::No, expect_no) << name << ": " << an.rule;
  }
}
