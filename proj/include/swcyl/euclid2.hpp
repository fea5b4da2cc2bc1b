// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

#include "circle_ops.hpp"
#include "core.hpp"
#include "special.hpp"

/// The extended Euclidean group E(2) x_c R: g = e^{eta I} e^{a.P} e^{phi J}.
namespace swcyl::euclid {

using Vec2 = Eigen::Vector2d;

inline Vec2 rotate(const Vec2 & v, double phi)
{
  const double c = std::cos(phi), s = std::sin(phi);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

inline double cross(const Vec2 & x, const Vec2 & y) { return x.x() * y.y() - x.y() * y.x(); }

struct GroupElement
{
  double eta = 0.0;
  Vec2 a = Vec2::Zero();
  double phi = 0.0;

  GroupElement() = default;
  GroupElement(double eta_, Vec2 a_, double phi_) : eta(eta_), a(std::move(a_)), phi(wrap_angle(phi_)) {}

  static GroupElement identity() { return {}; }
};

/// (eta' + eta + a' x a^{phi'} / 2, a' + a^{phi'}, phi' + phi).
inline GroupElement multiply(const GroupElement & gp, const GroupElement & g)
{
  const Vec2 ar = rotate(g.a, gp.phi);
  return {gp.eta + g.eta + 0.5 * cross(gp.a, ar), gp.a + ar, gp.phi + g.phi};
}

inline GroupElement inverse(const GroupElement & g)
{
  return {-g.eta, -rotate(g.a, -g.phi), -g.phi};
}

struct CoadjointPoint
{
  double beta = 0.0;
  Vec2 p = Vec2::Zero();
  double j = 0.0;
};

inline CoadjointPoint coadjoint(const GroupElement & g, const CoadjointPoint & x)
{
  const Vec2 pr = rotate(x.p, g.phi);
  CoadjointPoint y;
  y.beta = x.beta;
  y.p = pr + x.beta * Vec2(-g.a.y(), g.a.x());
  y.j = x.j + cross(g.a, pr) + 0.5 * x.beta * g.a.squaredNorm();
  return y;
}

struct OrbitClass
{
  enum class Tag { Paraboloid, Cylinder, Point };
  Tag tag = Tag::Point;
  double r = 0.0;  // Cylinder radius
  double j = 0.0;  // Point value
  double beta = 0.0;
  double casimir = 0.0;  // p^2 - 2 beta j
};

inline const char * to_string(OrbitClass::Tag t)
{
  switch (t) {
  case OrbitClass::Tag::Paraboloid: return "paraboloid";
  case OrbitClass::Tag::Cylinder: return "cylinder";
  default: return "point";
  }
}

inline OrbitClass classify_orbit(const CoadjointPoint & x, double tol = 0.0)
{
  OrbitClass o;
  o.beta = x.beta;
  o.casimir = x.p.squaredNorm() - 2.0 * x.beta * x.j;
  const double pn = x.p.norm();
  if (std::abs(x.beta) > tol) {
    o.tag = OrbitClass::Tag::Paraboloid;
  } else if (pn > tol) {
    o.tag = OrbitClass::Tag::Cylinder;
    o.r = pn;
  } else {
    o.tag = OrbitClass::Tag::Point;
    o.j = x.j;
  }
  return o;
}

struct CylinderPoint
{
  double alpha = 0.0;
  double j = 0.0;

  CylinderPoint() = default;
  CylinderPoint(double alpha_, double j_) : alpha(wrap_angle(alpha_)), j(j_) {}
};

/// (alpha, j) = (Arg p, j).
inline CylinderPoint canonical_coords(const CoadjointPoint & x, double tol = 0.0)
{
  const OrbitClass o = classify_orbit(x, tol);
  if (o.tag != OrbitClass::Tag::Cylinder) {
    throw NotACylinderPointError(std::string("canonical_coords: point lies on a ") +
                                 to_string(o.tag) + " orbit");
  }
  return {std::atan2(x.p.y(), x.p.x()), x.j};
}

inline CoadjointPoint from_canonical(const CylinderPoint & u, double r)
{
  return {0.0, Vec2(r * std::cos(u.alpha), r * std::sin(u.alpha)), u.j};
}

/// Coadjoint action in canonical coordinates: (alpha + phi, j + a x p^phi).
inline CylinderPoint act(const GroupElement & g, const CylinderPoint & u, double r)
{
  return canonical_coords(coadjoint(g, from_canonical(u, r)));
}

/// Coordinates in which the reflection kernels
/// e^{2ij sin(theta - alpha)} a(theta - alpha) psi(2 alpha - theta) transform
/// covariantly: same alpha, j of opposite sign to the coadjoint j.
namespace kernel_chart {

inline CoadjointPoint to_coadjoint(const CylinderPoint & u, double r)
{
  return from_canonical(CylinderPoint(u.alpha, -u.j), r);
}

inline CylinderPoint from_coadjoint(const CoadjointPoint & x)
{
  const CylinderPoint c = canonical_coords(x);
  return {c.alpha, -c.j};
}

/// (alpha + phi, j - a x p^phi).
inline CylinderPoint act(const GroupElement & g, const CylinderPoint & u, double r)
{
  return from_coadjoint(coadjoint(g, to_coadjoint(u, r)));
}

}  // namespace kernel_chart

// ---------------------------------------------------------------------------
// U_r(g) psi(theta) = e^{i a.t(theta)} psi(theta - phi), t = r (cos, sin).

/// Jacobi-Anger: e^{i z cos(theta - chi)} = sum_k i^k J_k(z) e^{ik(theta - chi)}, so
/// <m|U|n> = e^{-in phi} i^{m-n} J_{m-n}(r|a|) e^{-i(m-n) Arg a}. eta does not enter.
inline circle::FourierOperator rep_matrix(const GroupElement & g, double r, circle::ModeBand band)
{
  if (!(r > 0.0)) throw std::invalid_argument("rep_matrix: orbit radius must be positive");
  const double z = r * g.a.norm();
  const double chi = z > 0.0 ? std::atan2(g.a.y(), g.a.x()) : 0.0;
  circle::FourierOperator u(band);
  std::vector<cplx> diag(2 * band.size() - 1);
  for (int k = -2 * band.N; k <= 2 * band.N; ++k)
    diag[k + 2 * band.N] = ipow(k) * bessel_j(k, z) * std::polar(1.0, -k * chi);
  for (int m = -band.N; m <= band.N; ++m)
    for (int n = -band.N; n <= band.N; ++n)
      u(m, n) = std::polar(1.0, -n * g.phi) * diag[m - n + 2 * band.N];
  return u;
}

/// Cross-check path: M-node trapezoid of (1/2pi) int e^{-im theta} e^{i a.t} e^{in(theta - phi)}.
inline circle::FourierOperator rep_matrix_quadrature(const GroupElement & g, double r,
                                                     circle::ModeBand band, int M)
{
  if (!(r > 0.0)) throw std::invalid_argument("rep_matrix_quadrature: orbit radius must be positive");
  circle::FourierOperator u(band);
  std::vector<cplx> f(M);
  for (int k = 0; k < M; ++k) {
    const double th = circle::uniform_node(k, M);
    f[k] = std::polar(1.0, r * (g.a.x() * std::cos(th) + g.a.y() * std::sin(th)));
  }
  for (int d = -2 * band.N; d <= 2 * band.N; ++d) {
    cplx c{};
    for (int k = 0; k < M; ++k) c += f[k] * std::polar(1.0, -d * circle::uniform_node(k, M));
    c /= static_cast<double>(M);
    for (int n = -band.N; n <= band.N; ++n)
      if (band.contains(n + d)) u(n + d, n) = std::polar(1.0, -n * g.phi) * c;
  }
  return u;
}

}  // namespace swcyl::euclid
