// Copyright (C) 2026 The swcyl authors. MIT License.

#include <gtest/gtest.h>

#include <random>

#include "oracles/matrix_group.hpp"
#include "swcyl/euclid2.hpp"

using namespace swcyl;
using namespace swcyl::euclid;

namespace {

GroupElement random_element(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> u(-2.0, 2.0), ang(0.0, two_pi);
  return {u(rng), Vec2(u(rng), u(rng)), ang(rng)};
}

double group_distance(const GroupElement & x, const GroupElement & y)
{
  return std::max({std::abs(x.eta - y.eta), (x.a - y.a).norm(), circular_distance(x.phi, y.phi)});
}

}  // namespace

TEST(GroupLaw, MatchesMatrixExponentialRealization)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto g1 = random_element(rng), g2 = random_element(rng);
    const auto g = multiply(g1, g2);
    const Eigen::Matrix4d lhs = oracle::group_matrix(g.eta, g.a.x(), g.a.y(), g.phi);
    const Eigen::Matrix4d rhs = oracle::group_matrix(g1.eta, g1.a.x(), g1.a.y(), g1.phi) *
                                oracle::group_matrix(g2.eta, g2.a.x(), g2.a.y(), g2.phi);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(GroupLaw, AssociativeWithInverse)
{
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    EXPECT_LT(group_distance(multiply(multiply(a, b), c), multiply(a, multiply(b, c))), 1e-12);
    EXPECT_LT(group_distance(multiply(a, inverse(a)), GroupElement::identity()), 1e-12);
    EXPECT_LT(group_distance(multiply(inverse(a), a), GroupElement::identity()), 1e-12);
  }
}

TEST(Coadjoint, IsAnAction)
{
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_element(rng), h = random_element(rng);
    const CoadjointPoint x{u(rng), Vec2(u(rng), u(rng)), u(rng)};
    const auto l = coadjoint(multiply(g, h), x), r = coadjoint(g, coadjoint(h, x));
    EXPECT_LT(std::abs(l.beta - r.beta) + (l.p - r.p).norm() + std::abs(l.j - r.j), 1e-12);
    // the casimir p^2 - 2 beta j is invariant
    EXPECT_NEAR(classify_orbit(l).casimir, classify_orbit(x).casimir, 1e-10);
  }
}

TEST(Orbits, Classification)
{
  EXPECT_EQ(classify_orbit({1.0, Vec2(0.0, 0.0), 0.0}).tag, OrbitClass::Tag::Paraboloid);
  const auto c = classify_orbit({0.0, Vec2(3.0, 4.0), 0.2});
  EXPECT_EQ(c.tag, OrbitClass::Tag::Cylinder);
  EXPECT_DOUBLE_EQ(c.r, 5.0);
  const auto p = classify_orbit({0.0, Vec2(0.0, 0.0), 0.7});
  EXPECT_EQ(p.tag, OrbitClass::Tag::Point);
  EXPECT_DOUBLE_EQ(p.j, 0.7);
  EXPECT_THROW(canonical_coords({0.0, Vec2(0.0, 0.0), 0.7}), NotACylinderPointError);
}

TEST(Cylinder, CanonicalActionRotatesAndShifts)
{
  // rotation by phi moves alpha by phi; a translation orthogonal to p shifts j by r |a|
  const CylinderPoint u(0.3, -0.5);
  const auto v = act(GroupElement(0.0, Vec2::Zero(), 1.1), u, 2.0);
  EXPECT_NEAR(v.alpha, 1.4, 1e-14);
  EXPECT_NEAR(v.j, -0.5, 1e-14);
  const auto w = act(GroupElement(0.0, Vec2(0.0, 1.0), 0.0), CylinderPoint(0.0, 0.0), 2.0);
  EXPECT_NEAR(w.j, cross(Vec2(0.0, 1.0), Vec2(2.0, 0.0)), 1e-14);
  const auto k = kernel_chart::act(GroupElement(0.0, Vec2(0.0, 1.0), 0.0), CylinderPoint(0.0, 0.0), 2.0);
  EXPECT_NEAR(k.j, -w.j, 1e-14);
}

TEST(Representation, MatchesQuadratureAndIsUnitaryOnInterior)
{
  std::mt19937_64 rng(14);
  const circle::ModeBand band(24);
  for (int i = 0; i < 10; ++i) {
    const auto g = random_element(rng);
    const auto U = rep_matrix(g, 1.3, band);
    const auto Uq = rep_matrix_quadrature(g, 1.3, band, 512);
    EXPECT_LT(circle::max_norm(U - Uq), 1e-12);
    const auto UU = circle::compose(circle::adjoint(U), U);
    EXPECT_LT(circle::max_norm(UU - circle::FourierOperator::identity(band), 8), 1e-12);
  }
}

TEST(Representation, HomomorphismModuloCentre)
{
  std::mt19937_64 rng(15);
  const circle::ModeBand band(48);
  for (int i = 0; i < 10; ++i) {
    const auto g = random_element(rng), h = random_element(rng);
    const auto lhs = circle::compose(rep_matrix(g, 1.0, band), rep_matrix(h, 1.0, band));
    const auto rhs = rep_matrix(multiply(g, h), 1.0, band);
    EXPECT_LT(circle::max_norm(lhs - rhs, 16), 1e-12);
    const auto inv = circle::compose(rep_matrix(g, 1.0, band), rep_matrix(inverse(g), 1.0, band));
    EXPECT_LT(circle::max_norm(inv - circle::FourierOperator::identity(band), 16), 1e-12);
  }
}

TEST(Representation, RequiresPositiveRadius)
{
  EXPECT_THROW(rep_matrix(GroupElement(), 0.0, circle::ModeBand(2)), std::invalid_argument);
}
