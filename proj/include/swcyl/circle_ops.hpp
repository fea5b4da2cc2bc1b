// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "special.hpp"

/// Truncated Fourier-mode calculus on L2(S^1) with basis |n> = e^{in theta}/sqrt(2 pi).
namespace swcyl::circle {

/// Modes -N..N.
struct ModeBand
{
  int N = 1;

  ModeBand() = default;
  explicit ModeBand(int n) : N(n)
  {
    if (n < 1) throw std::invalid_argument("ModeBand: N must be >= 1, got " + std::to_string(n));
  }

  [[nodiscard]] int size() const { return 2 * N + 1; }
  [[nodiscard]] int index(int m) const { return m + N; }
  [[nodiscard]] bool contains(int m) const { return m >= -N && m <= N; }
  bool operator==(const ModeBand &) const = default;
};

inline double uniform_node(int k, int M) { return two_pi * k / M; }

/// Samples at theta_k = 2 pi k / M together with the coefficients c_n, |n| <= N.
struct CircleFunction
{
  std::vector<cplx> samples;
  std::vector<cplx> coeffs;
  ModeBand band;

  [[nodiscard]] int sample_count() const { return static_cast<int>(samples.size()); }
  [[nodiscard]] cplx coeff(int n) const { return band.contains(n) ? coeffs[band.index(n)] : cplx{}; }
  [[nodiscard]] double node(int k) const { return uniform_node(k, sample_count()); }
};

/// Naive O(MN) analysis c_n = (1/M) sum_k f_k e^{-i n theta_k}.
inline CircleFunction fourier_analyze(std::span<const cplx> samples, ModeBand band)
{
  const int M = static_cast<int>(samples.size());
  if (M < 4 * band.N) {
    throw UndersamplingError("fourier_analyze: M=" + std::to_string(M) + " < 4N=" +
                             std::to_string(4 * band.N));
  }
  CircleFunction f;
  f.samples.assign(samples.begin(), samples.end());
  f.band = band;
  f.coeffs.assign(band.size(), cplx{});
  for (int n = -band.N; n <= band.N; ++n) {
    cplx acc{};
    for (int k = 0; k < M; ++k) acc += samples[k] * std::polar(1.0, -n * uniform_node(k, M));
    f.coeffs[band.index(n)] = acc / static_cast<double>(M);
  }
  return f;
}

inline CircleFunction sample_function(const std::function<cplx(double)> & fn, int M, ModeBand band)
{
  std::vector<cplx> s(M);
  for (int k = 0; k < M; ++k) s[k] = fn(uniform_node(k, M));
  return fourier_analyze(s, band);
}

// ---------------------------------------------------------------------------
// Quadrature rules for (1/2pi) * integral over the circle. Weights sum to 1.

struct CircleQuadrature
{
  std::vector<double> theta;
  std::vector<double> weight;
  std::string name;

  [[nodiscard]] std::size_t size() const { return theta.size(); }
};

inline CircleQuadrature uniform_quadrature(int M)
{
  CircleQuadrature q;
  q.name = "uniform";
  q.theta.resize(M);
  q.weight.assign(M, 1.0 / M);
  for (int k = 0; k < M; ++k) q.theta[k] = uniform_node(k, M);
  return q;
}

/// Gauss-Legendre in t on each half [c - pi/2, c + pi/2], c in {0, pi}, with
/// theta = c + (pi/2) sin t. Clusters nodes at +-pi/2 so that integrands with
/// |cos theta|^gamma endpoints converge spectrally.
inline CircleQuadrature split_gauss_quadrature(int per_half)
{
  const auto [x, w] = gauss_legendre(per_half);
  CircleQuadrature q;
  q.name = "split-gauss";
  q.theta.reserve(2 * per_half);
  q.weight.reserve(2 * per_half);
  for (double c : {0.0, pi}) {
    for (int i = 0; i < per_half; ++i) {
      const double t = 0.5 * pi * x[i];
      q.theta.push_back(c + 0.5 * pi * std::sin(t));
      q.weight.push_back(0.5 * pi * w[i] * 0.5 * pi * std::cos(t) / two_pi);
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// Operators

/// Matrix <m|A|n> on a mode band; row index m, column index n.
struct FourierOperator
{
  ModeBand band;
  Eigen::MatrixXcd entries;

  FourierOperator() = default;
  explicit FourierOperator(ModeBand b) : band(b), entries(Eigen::MatrixXcd::Zero(b.size(), b.size())) {}
  FourierOperator(ModeBand b, Eigen::MatrixXcd m) : band(b), entries(std::move(m))
  {
    if (entries.rows() != b.size() || entries.cols() != b.size())
      throw BandMismatchError("FourierOperator: matrix shape does not match band");
  }

  cplx & operator()(int m, int n) { return entries(band.index(m), band.index(n)); }
  cplx operator()(int m, int n) const { return entries(band.index(m), band.index(n)); }

  /// Zero outside the band.
  [[nodiscard]] cplx at(int m, int n) const
  {
    return band.contains(m) && band.contains(n) ? (*this)(m, n) : cplx{};
  }

  [[nodiscard]] bool finite() const { return entries.allFinite(); }

  static FourierOperator identity(ModeBand b)
  {
    return {b, Eigen::MatrixXcd::Identity(b.size(), b.size())};
  }
  static FourierOperator zero(ModeBand b) { return FourierOperator(b); }

  /// <m|S_k|n> = delta_{m, n+k}.
  static FourierOperator shift(ModeBand b, int k)
  {
    FourierOperator s(b);
    for (int n = -b.N; n <= b.N; ++n)
      if (b.contains(n + k)) s(n + k, n) = 1.0;
    return s;
  }

  /// Transition operator P_{n,m} = |m><n|.
  static FourierOperator transition(ModeBand b, int n, int m)
  {
    FourierOperator p(b);
    p(m, n) = 1.0;
    return p;
  }
};

inline void require_same_band(const FourierOperator & a, const FourierOperator & b, const char * what)
{
  if (a.band != b.band) {
    throw BandMismatchError(std::string(what) + ": band mismatch (N=" + std::to_string(a.band.N) +
                            " vs N=" + std::to_string(b.band.N) + ")");
  }
}

inline FourierOperator compose(const FourierOperator & a, const FourierOperator & b)
{
  require_same_band(a, b, "compose");
  return {a.band, a.entries * b.entries};
}

inline FourierOperator adjoint(const FourierOperator & a) { return {a.band, a.entries.adjoint()}; }

inline FourierOperator operator+(const FourierOperator & a, const FourierOperator & b)
{
  require_same_band(a, b, "add");
  return {a.band, a.entries + b.entries};
}

inline FourierOperator operator-(const FourierOperator & a, const FourierOperator & b)
{
  require_same_band(a, b, "subtract");
  return {a.band, a.entries - b.entries};
}

inline FourierOperator operator*(cplx s, const FourierOperator & a) { return {a.band, s * a.entries}; }

/// Copy of the entries with |m|, |n| <= K (K clamped to the band).
inline Eigen::MatrixXcd interior_block(const FourierOperator & a, int K)
{
  K = std::min(K, a.band.N);
  return a.entries.block(a.band.index(-K), a.band.index(-K), 2 * K + 1, 2 * K + 1);
}

inline double max_norm(const Eigen::MatrixXcd & m)
{
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_norm(const FourierOperator & a) { return max_norm(a.entries); }

/// Max-norm on the interior sub-band |m|, |n| <= K.
inline double max_norm(const FourierOperator & a, int K) { return max_norm(interior_block(a, K)); }

inline int default_interior(ModeBand b) { return b.N / 2; }

/// Embed into a larger (or smaller) band, zero-filling new modes.
inline FourierOperator rebanded(const FourierOperator & a, ModeBand target)
{
  FourierOperator out(target);
  const int K = std::min(a.band.N, target.N);
  for (int m = -K; m <= K; ++m)
    for (int n = -K; n <= K; ++n) out(m, n) = a(m, n);
  return out;
}

// ---------------------------------------------------------------------------
// Generalized traces

enum class TraceConvention { ModeSum, KernelDiagonal };

/// ModeSum policy: Checked enforces a vanishing diagonal tail, Band sums the
/// finite matrix trace as is.
enum class TracePolicy { Checked, Band };

/// Integral kernel K(theta, theta') = amplitude(theta) delta(theta' - (2 center - theta)),
/// the form taken by every reflection-type kernel in this library.
struct ReflectionKernel
{
  FourierOperator matrix;
  double center = 0.0;
  std::function<cplx(double)> amplitude;
};

/// max |<n|A|n>| over |n| >= N/2.
inline double mode_sum_tail(const FourierOperator & a)
{
  double tail = 0.0;
  for (int n = -a.band.N; n <= a.band.N; ++n)
    if (2 * std::abs(n) >= a.band.N) tail = std::max(tail, std::abs(a(n, n)));
  return tail;
}

inline cplx generalized_trace(const FourierOperator & a, TraceConvention conv,
                              TracePolicy policy = TracePolicy::Checked, double tail_tol = 1e-8)
{
  if (conv == TraceConvention::KernelDiagonal) {
    throw MissingKernelFormError(
        "KernelDiagonal trace needs the integral-kernel form; pass a ReflectionKernel");
  }
  if (policy == TracePolicy::Checked) {
    const double tail = mode_sum_tail(a);
    if (!(tail < tail_tol)) {
      throw NonConvergentTraceError("ModeSum trace: diagonal tail " + std::to_string(tail) +
                                        " exceeds " + std::to_string(tail_tol),
                                    tail);
    }
  }
  return a.entries.trace();
}

/// KernelDiagonal: theta' = 2c - theta meets the diagonal at theta = c and
/// theta = c + pi, each with Jacobian |d(2 theta)/d theta| = 2, so
/// integral K(theta, theta) d theta = (A(c) + A(c + pi)) / 2.
inline cplx generalized_trace(const ReflectionKernel & k, TraceConvention conv,
                              TracePolicy policy = TracePolicy::Checked, double tail_tol = 1e-8)
{
  if (conv == TraceConvention::ModeSum) return generalized_trace(k.matrix, conv, policy, tail_tol);
  return 0.5 * (k.amplitude(k.center) + k.amplitude(k.center + pi));
}

}  // namespace swcyl::circle
