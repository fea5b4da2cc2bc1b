// Copyright (C) 2026 The swcyl authors. MIT License.

#include <gtest/gtest.h>

#include <random>

#include "oracles/adaptive_quad.hpp"
#include "swcyl/circle_ops.hpp"

using namespace swcyl;
using namespace swcyl::circle;

TEST(ModeBand, RejectsNonPositive)
{
  EXPECT_THROW(ModeBand(0), std::invalid_argument);
  EXPECT_EQ(ModeBand(3).size(), 7);
  EXPECT_TRUE(ModeBand(3).contains(-3));
  EXPECT_FALSE(ModeBand(3).contains(4));
}

TEST(FourierAnalyze, PureModeIsExact)
{
  const auto f = sample_function([](double t) { return std::polar(1.0, 3.0 * t); }, 64, ModeBand(8));
  for (int n = -8; n <= 8; ++n) EXPECT_NEAR(std::abs(f.coeff(n) - (n == 3 ? 1.0 : 0.0)), 0.0, 1e-14);
}

TEST(FourierAnalyze, UndersamplingThrows)
{
  std::vector<cplx> s(31, 1.0);
  EXPECT_THROW(fourier_analyze(s, ModeBand(8)), UndersamplingError);
  std::vector<cplx> ok(32, 1.0);
  EXPECT_NO_THROW(fourier_analyze(ok, ModeBand(8)));
}

// 2 sqrt|cos| has square-root edges: the uniform rule converges only algebraically,
// the split Gauss rule spectrally.
TEST(Quadrature, SqrtCosMeanUniformVsSplit)
{
  auto f = [](double t) { return cplx(2.0 * std::sqrt(std::abs(std::cos(t)))); };
  const cplx exact = oracle::integrate(f, -pi / 2, pi / 2, 1e-14) / pi;  // both halves are equal
  const auto uni = sample_function(f, 1024, ModeBand(16));
  EXPECT_LT(std::abs(uni.coeff(0) - exact), 2e-4);
  EXPECT_GT(std::abs(uni.coeff(0) - exact), 1e-6);  // not spectrally accurate
  const auto q = split_gauss_quadrature(256);
  cplx acc{};
  for (std::size_t i = 0; i < q.size(); ++i) acc += q.weight[i] * f(q.theta[i]);
  EXPECT_NEAR(std::abs(acc - exact), 0.0, 1e-12);
}

TEST(Quadrature, WeightsSumToOne)
{
  for (const auto & q : {uniform_quadrature(100), split_gauss_quadrature(40)}) {
    double s = 0.0;
    for (double w : q.weight) s += w;
    EXPECT_NEAR(s, 1.0, 1e-13) << q.name;
  }
}

TEST(FourierOperator, ShiftAndTransition)
{
  const ModeBand b(4);
  const auto S = FourierOperator::shift(b, 2);
  EXPECT_EQ(S(1, -1), cplx(1.0));
  EXPECT_EQ(S(-1, 1), cplx(0.0));
  const auto P = FourierOperator::transition(b, 1, -2);  // |-2><1|
  EXPECT_EQ(P(-2, 1), cplx(1.0));
  EXPECT_NEAR(max_norm(compose(P, P)), 0.0, 0.0);
  const auto P11 = FourierOperator::transition(b, 1, 1);
  EXPECT_NEAR(max_norm(compose(P11, P11) - P11), 0.0, 0.0);
}

TEST(FourierOperator, AlgebraProperties)
{
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  const ModeBand b(5);
  auto rnd = [&] {
    FourierOperator a(b);
    for (int m = -5; m <= 5; ++m)
      for (int n = -5; n <= 5; ++n) a(m, n) = {nd(rng), nd(rng)};
    return a;
  };
  const auto A = rnd(), B = rnd(), C = rnd();
  EXPECT_LT(max_norm(compose(compose(A, B), C) - compose(A, compose(B, C))), 1e-12);
  EXPECT_LT(max_norm(adjoint(compose(A, B)) - compose(adjoint(B), adjoint(A))), 1e-12);
  EXPECT_LT(max_norm(compose(FourierOperator::identity(b), A) - A), 0.0 + 1e-15);
  EXPECT_THROW(compose(A, FourierOperator(ModeBand(4))), BandMismatchError);
}

TEST(FourierOperator, InteriorAndRebanding)
{
  const ModeBand b(6);
  FourierOperator a(b);
  a(6, 6) = 5.0;
  a(1, -2) = 2.0;
  EXPECT_EQ(max_norm(a), 5.0);
  EXPECT_EQ(max_norm(a, default_interior(b)), 2.0);
  const auto big = rebanded(a, ModeBand(9));
  EXPECT_EQ(big(6, 6), cplx(5.0));
  EXPECT_EQ(big(9, 9), cplx(0.0));
  EXPECT_EQ(default_interior(ModeBand(7)), 3);
}

TEST(GeneralizedTrace, ModeSumPolicies)
{
  const ModeBand b(8);
  const auto id = FourierOperator::identity(b);
  EXPECT_THROW(generalized_trace(id, TraceConvention::ModeSum), NonConvergentTraceError);
  EXPECT_EQ(generalized_trace(id, TraceConvention::ModeSum, TracePolicy::Band), cplx(17.0));
  EXPECT_THROW(generalized_trace(id, TraceConvention::KernelDiagonal), MissingKernelFormError);
  const auto p = FourierOperator::transition(b, 0, 0);
  EXPECT_EQ(generalized_trace(p, TraceConvention::ModeSum), cplx(1.0));
}

TEST(GeneralizedTrace, KernelDiagonalOfReflection)
{
  ReflectionKernel k;
  k.matrix = FourierOperator(ModeBand(2));
  k.center = 0.4;
  k.amplitude = [](double t) { return cplx(1.0 + std::cos(t)); };
  EXPECT_NEAR(std::abs(generalized_trace(k, TraceConvention::KernelDiagonal) - cplx(1.0)), 0.0, 1e-15);
}
