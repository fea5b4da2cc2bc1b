// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

/// Flat phase space R^2 (n = 1): Heisenberg group, Grossmann-Royer reflections and
/// the Moyal product on a uniform grid.
namespace swcyl::flat {

struct HeisenbergElement
{
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// g' g = (a' + a, b' + b, c' + c + (a' b - a b') / 2).
inline HeisenbergElement h_multiply(const HeisenbergElement & gp, const HeisenbergElement & g)
{
  return {gp.a + g.a, gp.b + g.b, gp.c + g.c + 0.5 * (gp.a * g.b - g.a * gp.b)};
}

inline HeisenbergElement h_inverse(const HeisenbergElement & g) { return {-g.a, -g.b, -g.c}; }

struct HeisenbergDual
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// (x + z b, y - z a, z).
inline HeisenbergDual h_coadjoint(const HeisenbergElement & g, const HeisenbergDual & v)
{
  return {v.x + v.z * g.b, v.y - v.z * g.a, v.z};
}

/// Phase-space point of a z = 1 dual vector: (q, p) = (y, -x). In this chart the
/// coadjoint action is the translation (q - a, p - b).
inline std::array<double, 2> phase_point(const HeisenbergDual & v) { return {v.y, -v.x / v.z}; }

// ---------------------------------------------------------------------------
// Grids

/// x_i = -Q + i h, h = 2Q / G, i = 0..G-1. Both phase-space axes use the same nodes.
struct LineGrid
{
  double Q = 8.0;
  int G = 256;

  [[nodiscard]] double h() const { return 2.0 * Q / G; }
  [[nodiscard]] double x(int i) const { return -Q + i * h(); }
  [[nodiscard]] double index_of(double v) const { return (v + Q) / h(); }
  bool operator==(const LineGrid & o) const { return G == o.G && std::abs(Q - o.Q) < 1e-12; }

  void validate() const
  {
    if (!(Q > 0.0) || G < 16) throw std::invalid_argument("LineGrid: Q > 0 and G >= 16 required");
  }

  [[nodiscard]] std::string describe() const
  {
    std::ostringstream os;
    os << "{Q=" << Q << ", G=" << G << "}";
    return os.str();
  }
};

using PhaseGrid = LineGrid;

/// values(i, k) = f(q_i, p_k).
struct PhaseGridFunction
{
  PhaseGrid grid;
  Eigen::MatrixXcd values;

  PhaseGridFunction() = default;
  explicit PhaseGridFunction(PhaseGrid g) : grid(g), values(Eigen::MatrixXcd::Zero(g.G, g.G)) {}

  template <class F>
  static PhaseGridFunction sample(PhaseGrid g, F && f)
  {
    PhaseGridFunction out(g);
    for (int i = 0; i < g.G; ++i)
      for (int k = 0; k < g.G; ++k) out.values(i, k) = f(g.x(i), g.x(k));
    return out;
  }

  void validate() const
  {
    if (values.rows() != grid.G || values.cols() != grid.G)
      throw std::invalid_argument("PhaseGridFunction: array shape does not match grid " + grid.describe());
  }
};

/// Kernel values K(x_i, x_j); (K phi)_i = sum_j K(x_i, x_j) phi_j h.
struct LineGridOperator
{
  LineGrid grid;
  Eigen::MatrixXcd kernel;

  LineGridOperator() = default;
  explicit LineGridOperator(LineGrid g) : grid(g), kernel(Eigen::MatrixXcd::Zero(g.G, g.G)) {}

  [[nodiscard]] Eigen::VectorXcd apply(const Eigen::VectorXcd & phi) const { return grid.h() * (kernel * phi); }
  [[nodiscard]] bool finite() const { return kernel.allFinite(); }
};

inline void require_same_grid(const LineGrid & a, const LineGrid & b, const char * what)
{
  if (!(a == b)) throw GridMismatchError(std::string(what) + ": grid mismatch " + a.describe() + " vs " + b.describe());
}

inline LineGridOperator compose(const LineGridOperator & A, const LineGridOperator & B)
{
  require_same_grid(A.grid, B.grid, "compose");
  LineGridOperator C(A.grid);
  C.kernel = A.grid.h() * (A.kernel * B.kernel);
  return C;
}

namespace detail {

inline constexpr int stencil = 8;

/// Lagrange weights of the 8 nodes around fractional index t, starting at `first`.
/// With clamp = false the stencil is not shifted at the ends and callers drop the
/// nodes outside [0, G - 1] (zero extension); the weights then depend only on the
/// offset of t from the stencil, which keeps reflection kernels exactly Hermitian.
inline bool lagrange(double t, int G, int & first, std::array<double, stencil> & w, bool clamp = true)
{
  if (clamp && (t < -1e-9 || t > G - 1 + 1e-9)) return false;
  if (!clamp && (t < -stencil || t > G - 1 + stencil)) return false;
  first = static_cast<int>(std::floor(t)) - stencil / 2 + 1;
  if (clamp) first = std::clamp(first, 0, G - stencil);
  for (int a = 0; a < stencil; ++a) {
    double num = 1.0, den = 1.0;
    for (int b = 0; b < stencil; ++b) {
      if (b == a) continue;
      num *= t - (first + b);
      den *= a - b;
    }
    w[a] = num / den;
  }
  return true;
}

/// Row m holds f(q, .) at q = -Q + m h / 2; odd rows are interpolated in q.
inline Eigen::MatrixXcd half_rows(const PhaseGridFunction & f)
{
  const int G = f.grid.G;
  Eigen::MatrixXcd R(2 * G - 1, G);
  for (int m = 0; m < 2 * G - 1; ++m) {
    if (m % 2 == 0) {
      R.row(m) = f.values.row(m / 2);
    } else {
      int first = 0;
      std::array<double, stencil> w{};
      lagrange(0.5 * m, G, first, w);
      R.row(m).setZero();
      for (int a = 0; a < stencil; ++a) R.row(m) += w[a] * f.values.row(first + a);
    }
  }
  return R;
}

inline double trapezoid_weight(int k, int G, double h) { return (k == 0 || k == G - 1) ? 0.5 * h : h; }

}  // namespace detail

/// K(q,p) phi(x) = 2 e^{2ip(x - q)} phi(2q - x), written in the symmetric form
/// 2 e^{ip(x - x')} delta(x + x' - 2q) so the discrete kernel stays Hermitian.
/// phi(2q - x) is read by 8-point Lagrange interpolation.
inline LineGridOperator grossmann_royer(double q, double p, const LineGrid & grid)
{
  grid.validate();
  if (std::abs(q) > grid.Q || std::abs(p) > grid.Q) {
    std::ostringstream os;
    os << "grossmann_royer: (" << q << ", " << p << ") outside extent [-" << grid.Q << ", " << grid.Q << "]^2";
    throw OutOfExtentError(os.str());
  }
  LineGridOperator K(grid);
  const double h = grid.h();
  for (int i = 0; i < grid.G; ++i) {
    int first = 0;
    std::array<double, detail::stencil> w{};
    if (!detail::lagrange(grid.index_of(2.0 * q - grid.x(i)), grid.G, first, w, false)) continue;
    for (int a = 0; a < detail::stencil; ++a) {
      const int j = first + a;
      if (j < 0 || j >= grid.G) continue;
      K.kernel(i, j) = 2.0 * w[a] / h * std::polar(1.0, p * (grid.x(i) - grid.x(j)));
    }
  }
  return K;
}

/// sum_ij K(x_i, x_j) eta(x_i - x_j) h^2 with eta a unit-mass Gaussian of width eps.
/// The diagonal of a reflection kernel is a delta, so only a mollified trace is defined.
inline cplx mollified_trace(const LineGridOperator & K, double eps)
{
  const double h = K.grid.h();
  cplx acc{};
  for (int i = 0; i < K.grid.G; ++i)
    for (int j = 0; j < K.grid.G; ++j) {
      const double d = K.grid.x(i) - K.grid.x(j);
      acc += K.kernel(i, j) * std::exp(-0.5 * d * d / (eps * eps)) / (eps * std::sqrt(two_pi));
    }
  return acc * h * h;
}

// ---------------------------------------------------------------------------
// Weyl correspondence

struct WeylDiagnostics
{
  double boundary_mass = 0.0;  // max |f| on the outer ring of the grid
  bool warning = false;
  std::string message;
};

/// W(f) = (1/2pi) int f(q,p) K(q,p) dq dp. The q integral against the delta is exact:
/// W(f)(x, x') = (1/2pi) int f((x + x')/2, p) e^{ip(x - x')} dp, trapezoid in p.
inline LineGridOperator weyl_map(const PhaseGridFunction & f, WeylDiagnostics * diag = nullptr,
                                 double boundary_tol = 1e-8)
{
  f.validate();
  const LineGrid & g = f.grid;
  const int G = g.G;
  const double h = g.h();

  double edge = 0.0;
  for (int i = 0; i < G; ++i)
    edge = std::max({edge, std::abs(f.values(i, 0)), std::abs(f.values(i, G - 1)), std::abs(f.values(0, i)),
                     std::abs(f.values(G - 1, i))});
  if (diag) {
    diag->boundary_mass = edge;
    diag->warning = edge > boundary_tol;
    if (diag->warning) {
      std::ostringstream os;
      os << "weyl_map: |f| reaches " << edge << " on the grid boundary (> " << boundary_tol << ")";
      diag->message = os.str();
    }
  }

  const Eigen::MatrixXcd R = detail::half_rows(f);  // row m: q = -Q + m h / 2
  Eigen::MatrixXcd E(G, 2 * G - 1);                  // column e: x - x' = (e - G + 1) h
  for (int k = 0; k < G; ++k)
    for (int e = 0; e < 2 * G - 1; ++e)
      E(k, e) = detail::trapezoid_weight(k, G, h) / two_pi * std::polar(1.0, g.x(k) * (e - G + 1) * h);
  const Eigen::MatrixXcd T = R * E;

  LineGridOperator A(g);
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) A.kernel(i, j) = T(i + j, i - j + G - 1);
  return A;
}

/// W^{-1}(A)(q, p) = int A(q + y/2, q - y/2) e^{-ipy} dy, sampled at y = 2kh.
inline PhaseGridFunction wigner_map(const LineGridOperator & A)
{
  const LineGrid & g = A.grid;
  const int G = g.G;
  const double h = g.h();
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(G, 2 * G - 1);  // column k + G - 1
  for (int i = 0; i < G; ++i) {
    const int kmax = std::min(i, G - 1 - i);
    for (int k = -kmax; k <= kmax; ++k) B(i, k + G - 1) = A.kernel(i + k, i - k);
  }
  Eigen::MatrixXcd E(2 * G - 1, G);
  for (int k = -(G - 1); k <= G - 1; ++k)
    for (int n = 0; n < G; ++n) E(k + G - 1, n) = 2.0 * h * std::polar(1.0, -2.0 * g.x(n) * k * h);
  PhaseGridFunction f(g);
  f.values = B * E;
  return f;
}

/// f * g = W^{-1}(W(f) W(g)).
inline PhaseGridFunction moyal_product(const PhaseGridFunction & f, const PhaseGridFunction & g)
{
  require_same_grid(f.grid, g.grid, "moyal_product");
  return wigner_map(compose(weyl_map(f), weyl_map(g)));
}

/// Direct double integral
///   (f * g)(u) = (1/pi^2) int int f(v) g(w) exp(2i [s(u,v) + s(v,w) + s(w,u)]) dv dw,
/// s(u,v) = u_q v_p - u_p v_q, evaluated at grid nodes (i, k) of f's grid. The w integral
/// is G(v - u) = int g(w) exp(2i s(v - u, w)) dw, tabulated on the difference lattice.
inline std::vector<cplx> moyal_product_direct(const PhaseGridFunction & f, const PhaseGridFunction & g,
                                              const std::vector<std::array<int, 2>> & nodes)
{
  require_same_grid(f.grid, g.grid, "moyal_product_direct");
  const LineGrid & gr = f.grid;
  const int G = gr.G, Z = 2 * G - 1;
  const double h = gr.h();
  auto dz = [&](int e) { return (e - G + 1) * h; };

  // Gz(e_q, e_p) = sum_{w} g(w) e^{2i(z_q w_p - z_p w_q)} h^2
  Eigen::MatrixXcd Ep(G, Z), Eq(Z, G);
  for (int k = 0; k < G; ++k)
    for (int e = 0; e < Z; ++e) {
      Ep(k, e) = std::polar(h, 2.0 * dz(e) * gr.x(k));
      Eq(e, k) = std::polar(h, -2.0 * dz(e) * gr.x(k));
    }
  const Eigen::MatrixXcd Gz = (g.values * Ep).transpose() * Eq.transpose();  // (e_q, e_p)

  std::vector<cplx> out(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t n) {
    const int iu = nodes[n][0], ku = nodes[n][1];
    const double uq = gr.x(iu), up = gr.x(ku);
    cplx acc{};
    for (int iv = 0; iv < G; ++iv)
      for (int kv = 0; kv < G; ++kv) {
        const double vq = gr.x(iv), vp = gr.x(kv);
        acc += f.values(iv, kv) * std::polar(1.0, 2.0 * (uq * vp - up * vq)) *
               Gz(iv - iu + G - 1, kv - ku + G - 1);
      }
    out[n] = acc * h * h / (pi * pi);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Schroedinger representation

/// [U(a,b,c) phi](xi) = e^{-i(c + b xi + ab/2)} phi(xi + a), phi(xi + a) by 8-point
/// Lagrange interpolation and zero outside the grid. |a| may not exceed `margin`.
inline Eigen::VectorXcd h_rep_apply(const HeisenbergElement & g, const Eigen::VectorXcd & phi, const LineGrid & grid,
                                    double margin = -1.0)
{
  if (phi.size() != grid.G) throw std::invalid_argument("h_rep_apply: sample count does not match grid");
  if (margin < 0.0) margin = 0.5 * grid.Q;
  if (std::abs(g.a) > margin) {
    std::ostringstream os;
    os << "h_rep_apply: translation |a| = " << std::abs(g.a) << " exceeds margin " << margin;
    throw OutOfExtentError(os.str());
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(grid.G);
  for (int i = 0; i < grid.G; ++i) {
    const double xi = grid.x(i);
    int first = 0;
    std::array<double, detail::stencil> w{};
    if (!detail::lagrange(grid.index_of(xi + g.a), grid.G, first, w, false)) continue;
    cplx v{};
    for (int a = 0; a < detail::stencil; ++a)
      if (first + a >= 0 && first + a < grid.G) v += w[a] * phi(first + a);
    out(i) = std::polar(1.0, -(g.c + g.b * xi + 0.5 * g.a * g.b)) * v;
  }
  return out;
}

}  // namespace swcyl::flat
