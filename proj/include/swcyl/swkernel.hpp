// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "circle_ops.hpp"
#include "core.hpp"
#include "euclid2.hpp"
#include "j_integration.hpp"
#include "symbol.hpp"

namespace swcyl::kernel {

using circle::FourierOperator;
using euclid::CylinderPoint;

// ---------------------------------------------------------------------------
// L_n(j) = (1/2pi) int e^{2ij sin t} a(t) e^{-int} dt

/// Nodes and weighted symbol values used to evaluate L_n(j). Closed-form symbols
/// use the split Gauss rule sized for the requested |j| and |n|; sampled symbols
/// use their uniform samples.
struct LQuadrature
{
  std::vector<double> theta;
  std::vector<cplx> wa;  // weight * a(theta)
};

inline LQuadrature l_quadrature(const SymbolFunction & s, double j_abs_max, int n_abs_max)
{
  LQuadrature q;
  if (s.has_closed_form()) {
    const int per_half = std::max(512, static_cast<int>(std::ceil(6.0 * j_abs_max)) + n_abs_max + 64);
    const auto rule = circle::split_gauss_quadrature(per_half);
    q.theta = rule.theta;
    for (std::size_t i = 0; i < rule.size(); ++i) q.wa.push_back(rule.weight[i] * s.closed_form(rule.theta[i]));
  } else {
    const int M = s.sample_count();
    for (int k = 0; k < M; ++k) {
      q.theta.push_back(circle::uniform_node(k, M));
      q.wa.push_back(s.a.samples[k] / static_cast<double>(M));
    }
  }
  return q;
}

inline cplx l_coeff(const SymbolFunction & s, int n, double j)
{
  const LQuadrature q = l_quadrature(s, std::abs(j), std::abs(n));
  cplx acc{};
  for (std::size_t i = 0; i < q.theta.size(); ++i)
    acc += q.wa[i] * std::polar(1.0, 2.0 * j * std::sin(q.theta[i]) - n * q.theta[i]);
  return acc;
}

/// L_s(j_l) for |s| <= S at the listed j; row l, column s + S.
struct LTable
{
  std::vector<double> js;
  int S = 0;
  Eigen::MatrixXcd values;

  [[nodiscard]] cplx operator()(int s, int l) const { return values(l, s + S); }
  [[nodiscard]] Eigen::VectorXcd column(int s) const { return values.col(s + S); }
};

inline LTable l_table(const SymbolFunction & s, std::vector<double> js, int S)
{
  double jm = 0.0;
  for (double j : js) jm = std::max(jm, std::abs(j));
  const LQuadrature q = l_quadrature(s, jm, S);
  const int nq = static_cast<int>(q.theta.size()), nj = static_cast<int>(js.size());

  Eigen::MatrixXcd B(nq, 2 * S + 1);
  for (int i = 0; i < nq; ++i)
    for (int n = -S; n <= S; ++n) B(i, n + S) = q.wa[i] * std::polar(1.0, -n * q.theta[i]);

  LTable t;
  t.S = S;
  t.values.resize(nj, 2 * S + 1);
  const int chunk = 64;
  parallel_for((nj + chunk - 1) / chunk, [&](std::size_t c) {
    const int l0 = static_cast<int>(c) * chunk, l1 = std::min(nj, l0 + chunk);
    Eigen::MatrixXcd E(l1 - l0, nq);
    for (int l = l0; l < l1; ++l)
      for (int i = 0; i < nq; ++i) E(l - l0, i) = std::polar(1.0, 2.0 * js[l] * std::sin(q.theta[i]));
    t.values.middleRows(l0, l1 - l0) = E * B;
  }, 1);
  t.js = std::move(js);
  return t;
}

// ---------------------------------------------------------------------------
// Omega(alpha, j) psi(t) = e^{2ij sin(t - alpha)} a(t - alpha) psi(2 alpha - t)
// <m|Omega|n> = e^{i(n-m) alpha} L_{m+n}(j)

inline int required_band(double j, int margin = 16)
{
  return static_cast<int>(std::ceil(2.0 * std::abs(j))) + margin;
}

inline void require_band(double j, circle::ModeBand band, const char * what)
{
  if (band.N < required_band(j)) {
    std::ostringstream os;
    os << what << ": band N=" << band.N << " too small for |j|=" << std::abs(j) << " (need N >= "
       << required_band(j) << ")";
    throw BandTooSmallError(os.str());
  }
}

inline FourierOperator omega_from_l(const std::vector<cplx> & L, int S, double alpha, circle::ModeBand band)
{
  FourierOperator om(band);
  for (int m = -band.N; m <= band.N; ++m)
    for (int n = -band.N; n <= band.N; ++n) om(m, n) = std::polar(1.0, (n - m) * alpha) * L[m + n + S];
  return om;
}

inline FourierOperator omega_matrix(const SymbolFunction & s, const CylinderPoint & u, circle::ModeBand band)
{
  require_band(u.j, band, "omega_matrix");
  const int S = 2 * band.N;
  const LTable t = l_table(s, {u.j}, S);
  std::vector<cplx> L(2 * S + 1);
  for (int k = -S; k <= S; ++k) L[k + S] = t(k, 0);
  return omega_from_l(L, S, u.alpha, band);
}

/// Omega together with its integral-kernel form, for the KernelDiagonal trace.
inline circle::ReflectionKernel omega_kernel(const SymbolFunction & s, const CylinderPoint & u,
                                             circle::ModeBand band)
{
  circle::ReflectionKernel k;
  k.matrix = omega_matrix(s, u, band);
  k.center = u.alpha;
  k.amplitude = [s, u](double t) {
    return std::polar(1.0, 2.0 * u.j * std::sin(t - u.alpha)) * s.value(t - u.alpha);
  };
  return k;
}

/// Cross-check path: integrate <m| Omega e_n> against the kernel action directly,
/// with the symbol's quadrature rotated to start at alpha.
inline FourierOperator omega_matrix_quadrature(const SymbolFunction & s, const CylinderPoint & u,
                                               circle::ModeBand band)
{
  require_band(u.j, band, "omega_matrix_quadrature");
  const LQuadrature q = l_quadrature(s, std::abs(u.j), 2 * band.N);
  FourierOperator om(band);
  const std::size_t nq = q.theta.size();
  std::vector<cplx> kern(nq);
  std::vector<double> th(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    th[i] = u.alpha + q.theta[i];
    kern[i] = q.wa[i] * std::polar(1.0, 2.0 * u.j * std::sin(th[i] - u.alpha));
  }
  for (int m = -band.N; m <= band.N; ++m) {
    for (int n = -band.N; n <= band.N; ++n) {
      cplx acc{};
      for (std::size_t i = 0; i < nq; ++i)
        acc += kern[i] * std::polar(1.0, -m * th[i] + n * (2.0 * u.alpha - th[i]));
      om(m, n) = acc;
    }
  }
  return om;
}

/// The a = 1 kernel in the coadjoint chart, e^{2ij sin(alpha - t)} psi(2 alpha - t):
/// <m|Omega|n> = e^{i(n-m) alpha} J_{m+n}(-2j).
inline FourierOperator legacy_parity_kernel(const CylinderPoint & u, circle::ModeBand band)
{
  require_band(u.j, band, "legacy_parity_kernel");
  const int S = 2 * band.N;
  std::vector<cplx> L(2 * S + 1);
  for (int k = -S; k <= S; ++k) L[k + S] = bessel_j(k, -2.0 * u.j);
  return omega_from_l(L, S, u.alpha, band);
}

/// W_{n,m}(u) = tr(P_{n,m} Omega(u)) = <n|Omega|m> = e^{i(m-n) alpha} L_{m+n}(j).
inline cplx wigner_basis_symbol(const SymbolFunction & s, int n, int m, const CylinderPoint & u)
{
  return std::polar(1.0, (m - n) * u.alpha) * l_coeff(s, m + n, u.j);
}

// ---------------------------------------------------------------------------
// Symbols on the cylinder grid

struct WignerSymbol
{
  CylinderGrid grid;
  Eigen::MatrixXcd values;  // row k (alpha), column l (j)

  WignerSymbol() = default;
  explicit WignerSymbol(CylinderGrid g) : grid(g), values(Eigen::MatrixXcd::Zero(g.K, g.nj())) {}

  void validate() const
  {
    if (values.rows() != grid.K || values.cols() != grid.nj())
      throw std::invalid_argument("WignerSymbol: array shape does not match grid " + grid.describe());
  }
};

inline void require_same_grid(const WignerSymbol & f, const WignerSymbol & g)
{
  if (!(f.grid == g.grid))
    throw GridMismatchError("grid mismatch: " + f.grid.describe() + " vs " + g.grid.describe());
}

/// F_d(j) with f(alpha, j) = sum_d e^{i d alpha} F_d(j), for |d| <= D.
inline Eigen::MatrixXcd alpha_modes(const WignerSymbol & f, int D)
{
  const int K = f.grid.K;
  Eigen::MatrixXcd E(2 * D + 1, K);
  for (int d = -D; d <= D; ++d)
    for (int k = 0; k < K; ++k) E(d + D, k) = std::polar(1.0 / K, -d * f.grid.alpha(k));
  return E * f.values;  // row d + D
}

inline void require_interior_support(const FourierOperator & A, int K, const char * what)
{
  double outside = 0.0;
  for (int m = -A.band.N; m <= A.band.N; ++m)
    for (int n = -A.band.N; n <= A.band.N; ++n)
      if (std::abs(m) > K || std::abs(n) > K) outside = std::max(outside, std::abs(A(m, n)));
  if (outside > 0.0) {
    std::ostringstream os;
    os << what << ": operator has entries up to " << outside << " outside the interior band |m| <= " << K
       << "; the mode-sum trace does not converge there";
    throw NonConvergentTraceError(os.str(), outside);
  }
}

/// Shared per-(symbol, grid, band) data: L on the j-grid, weights, and the
/// span-completion operators.
class KernelContext
{
public:
  KernelContext(const SymbolFunction & s, CylinderGrid g, circle::ModeBand band)
      : symbol_(s), grid_(g), band_(band), S_(2 * band.N), w_(j_weights(g)),
        L_(l_table(s, g.js(), 2 * band.N))
  {
    g.validate();
    gram_ = kernel::exact_gram(s, S_);
    for (int par : {0, 1}) proj_[par] = build_projector(par);
  }

  [[nodiscard]] const SymbolFunction & symbol() const { return symbol_; }
  [[nodiscard]] const CylinderGrid & grid() const { return grid_; }
  [[nodiscard]] circle::ModeBand band() const { return band_; }
  [[nodiscard]] int S() const { return S_; }
  [[nodiscard]] const LTable & L() const { return L_; }
  [[nodiscard]] const Eigen::VectorXd & weights() const { return w_; }
  [[nodiscard]] bool can_complete() const { return gram_.has_value(); }
  [[nodiscard]] const Eigen::MatrixXcd & gram() const { return *gram_; }

  /// Least-squares coefficients x with F(j) ~ sum_{s = par mod 2} x_s L_s(j) in the
  /// weighted L2(dj) sense; entries of the other parity are zero.
  [[nodiscard]] Eigen::VectorXcd span_coefficients(const Eigen::VectorXcd & F, int par) const
  {
    const auto & P = projector(par);
    Eigen::VectorXcd b(P.idx.size());
    for (std::size_t i = 0; i < P.idx.size(); ++i)
      b(i) = (L_.values.col(P.idx[i]).conjugate().array() * w_.cast<cplx>().array() * F.array()).sum();
    const Eigen::VectorXcd xr = P.pinv * b;
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(2 * S_ + 1);
    for (std::size_t i = 0; i < P.idx.size(); ++i) x(P.idx[i]) = xr(i);
    return x;
  }

  /// Number of span directions resolved on the grid for the given parity.
  [[nodiscard]] int projector_rank(int par) const { return projector(par).rank; }

private:
  struct Projector
  {
    std::vector<int> idx;
    Eigen::MatrixXcd pinv;
    int rank = 0;
  };

  const Projector & projector(int par) const { return proj_[((par % 2) + 2) % 2]; }

  Projector build_projector(int par) const
  {
    Projector P;
    for (int s = -S_; s <= S_; ++s)
      if (((s % 2) + 2) % 2 == par) P.idx.push_back(s + S_);
    const int n = static_cast<int>(P.idx.size());
    Eigen::MatrixXcd Lp(L_.values.rows(), n);
    for (int i = 0; i < n; ++i) Lp.col(i) = L_.values.col(P.idx[i]);
    const Eigen::MatrixXcd H = Lp.adjoint() * w_.cast<cplx>().asDiagonal() * Lp;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const Eigen::VectorXd lam = es.eigenvalues();
    const double cut = 1e-11 * lam.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (lam(i) > cut) {
        inv(i) = 1.0 / lam(i);
        ++P.rank;
      }
    P.pinv = es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    return P;
  }

  SymbolFunction symbol_;
  CylinderGrid grid_;
  circle::ModeBand band_;
  int S_;
  Eigen::VectorXd w_;
  LTable L_;
  std::optional<Eigen::MatrixXcd> gram_;
  Projector proj_[2];
};

/// W_A(u) = tr[A Omega(u)] at every grid node.
inline WignerSymbol wigner_transform(const FourierOperator & A, const KernelContext & ctx)
{
  if (A.band != ctx.band()) throw BandMismatchError("wigner_transform: operator band differs from context band");
  const int K = circle::default_interior(A.band);
  require_interior_support(A, K, "wigner_transform");
  const CylinderGrid & g = ctx.grid();
  const int nj = g.nj(), D = 2 * K;

  // F_d(j) = sum_{n - m = d} A_{nm} L_{m+n}(j)
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(2 * D + 1, nj);
  for (int n = -K; n <= K; ++n)
    for (int m = -K; m <= K; ++m) {
      const cplx a = A(n, m);
      if (a != cplx{}) F.row(n - m + D) += a * ctx.L().values.col(m + n + ctx.S()).transpose();
    }
  Eigen::MatrixXcd E(g.K, 2 * D + 1);
  for (int k = 0; k < g.K; ++k)
    for (int d = -D; d <= D; ++d) E(k, d + D) = std::polar(1.0, d * g.alpha(k));
  WignerSymbol w(g);
  w.values = E * F;
  return w;
}

inline WignerSymbol wigner_transform(const FourierOperator & A, const SymbolFunction & s, CylinderGrid g)
{
  return wigner_transform(A, KernelContext(s, g, A.band));
}

// ---------------------------------------------------------------------------
// Quantization and orbit integrals with d mu = c (1/2pi) d alpha dj

enum class JTail {
  Truncate,  // f taken as zero outside the grid (tapered trapezoid)
  Complete   // each alpha-mode continued in span{L_s} and integrated exactly
};

inline const char * to_string(JTail t) { return t == JTail::Truncate ? "truncate" : "complete"; }

struct QuantizeOptions
{
  double measure = 1.0;
  JTail tail = JTail::Complete;
};

inline void require_quantizable(const WignerSymbol & f, const KernelContext & ctx)
{
  f.validate();
  if (!(f.grid == ctx.grid())) throw GridMismatchError("quantize: symbol grid " + f.grid.describe() +
                                                       " differs from context grid " + ctx.grid().describe());
  if (f.grid.dj > 0.1 + 1e-12 || f.grid.K < 8 * ctx.band().N) {
    std::ostringstream os;
    os << "quantize: grid too coarse (need dj <= 0.1 and K >= 8N = " << 8 * ctx.band().N << "), got "
       << f.grid.describe();
    throw GridTooCoarseError(os.str());
  }
  if (!ctx.symbol().flags.finite_trace)
    throw InvariantViolation("quantize: symbol has a(0) = 0 (infinite-trace kernel)");
}

inline JTail effective_tail(const KernelContext & ctx, JTail requested)
{
  return (requested == JTail::Complete && ctx.can_complete()) ? JTail::Complete : JTail::Truncate;
}

/// v_s = int F(j) L_s(j) dj for all |s| <= S (entries of the wrong parity unused).
inline Eigen::VectorXcd mode_against_l(const Eigen::VectorXcd & F, int par, const KernelContext & ctx, JTail tail)
{
  if (effective_tail(ctx, tail) == JTail::Complete) {
    const Eigen::VectorXcd x = ctx.span_coefficients(F, par);
    return ctx.gram().transpose() * x;
  }
  return ctx.L().values.transpose() * (ctx.weights().cast<cplx>().array() * F.array()).matrix();
}

/// A = int f(u) Omega(u) d mu(u):  <k|A|l> = c int F_{k-l}(j) L_{k+l}(j) dj.
inline FourierOperator quantize(const WignerSymbol & f, const KernelContext & ctx, QuantizeOptions opt = {})
{
  require_quantizable(f, ctx);
  const circle::ModeBand band = ctx.band();
  const int N = band.N, D = 2 * N, S = ctx.S();
  const Eigen::MatrixXcd F = alpha_modes(f, D);
  FourierOperator A(band);
  parallel_for(2 * D + 1, [&](std::size_t di) {
    const int d = static_cast<int>(di) - D;
    const Eigen::VectorXcd v = mode_against_l(F.row(di).transpose(), d, ctx, opt.tail);
    for (int k = -N; k <= N; ++k) {
      const int l = k - d;
      if (band.contains(l)) A(k, l) = opt.measure * v(k + l + S);
    }
  }, 1);
  return A;
}

inline FourierOperator quantize(const WignerSymbol & f, const SymbolFunction & s, circle::ModeBand band,
                                QuantizeOptions opt = {})
{
  return quantize(f, KernelContext(s, f.grid, band), opt);
}

/// int f d mu.
inline cplx integrate(const WignerSymbol & f, const KernelContext & ctx, QuantizeOptions opt = {})
{
  const Eigen::MatrixXcd F0 = alpha_modes(f, 0);
  const Eigen::VectorXcd row = F0.row(0).transpose();
  if (effective_tail(ctx, opt.tail) == JTail::Complete) {
    const Eigen::VectorXcd x = ctx.span_coefficients(row, 0);
    const cplx a0 = ctx.symbol().value(0.0), api = ctx.symbol().value(pi);
    cplx acc{};
    for (int s = -ctx.S(); s <= ctx.S(); ++s) acc += x(s + ctx.S()) * 0.5 * (a0 + parity_sign(s) * api);
    return opt.measure * acc;
  }
  return opt.measure * (ctx.weights().cast<cplx>().array() * row.array()).sum();
}

/// int f g d mu = c sum_d int F_d G_{-d} dj.
inline cplx pair_integral(const WignerSymbol & f, const WignerSymbol & g, const KernelContext & ctx,
                          QuantizeOptions opt = {})
{
  require_same_grid(f, g);
  const int D = std::min(f.grid.K / 2 - 1, 2 * ctx.band().N);
  const Eigen::MatrixXcd F = alpha_modes(f, D), G = alpha_modes(g, D);
  const bool complete = effective_tail(ctx, opt.tail) == JTail::Complete;
  cplx acc{};
  for (int d = -D; d <= D; ++d) {
    const Eigen::VectorXcd a = F.row(d + D).transpose(), b = G.row(-d + D).transpose();
    if (complete) {
      const Eigen::VectorXcd x = ctx.span_coefficients(a, d), y = ctx.span_coefficients(b, d);
      acc += (x.transpose() * ctx.gram() * y)(0, 0);
    } else {
      acc += (ctx.weights().cast<cplx>().array() * a.array() * b.array()).sum();
    }
  }
  return opt.measure * acc;
}

struct StarDiagnostics
{
  double discarded = 0.0;  // largest entry of Q(f)Q(g) outside the interior band
  JTail tail = JTail::Complete;
  bool faithful = false;   // injective kernel: Q(W(A)) = A, so the product tracks operator composition
};

/// f * g = W(Q(f) Q(g)); the product is restricted to the interior band before
/// the Wigner transform.
inline WignerSymbol star_product(const WignerSymbol & f, const WignerSymbol & g, const KernelContext & ctx,
                                 QuantizeOptions opt = {}, StarDiagnostics * diag = nullptr)
{
  require_same_grid(f, g);
  const auto & fl = ctx.symbol().flags;
  if (!fl.tracial || !fl.finite_trace)
    throw NonTracialKernelError("star_product: kernel '" + ctx.symbol().label +
                                "' is not tracial with finite trace; the operator round trip is not faithful");
  const FourierOperator C = circle::compose(quantize(f, ctx, opt), quantize(g, ctx, opt));
  const int K = circle::default_interior(C.band);
  FourierOperator Ci(C.band);
  double discarded = 0.0;
  for (int m = -C.band.N; m <= C.band.N; ++m)
    for (int n = -C.band.N; n <= C.band.N; ++n) {
      if (std::abs(m) <= K && std::abs(n) <= K) Ci(m, n) = C(m, n);
      else discarded = std::max(discarded, std::abs(C(m, n)));
    }
  if (diag) {
    diag->discarded = discarded;
    diag->tail = effective_tail(ctx, opt.tail);
    diag->faithful = fl.injective == Injectivity::Yes;
  }
  return wigner_transform(Ci, ctx);
}

}  // namespace swcyl::kernel
