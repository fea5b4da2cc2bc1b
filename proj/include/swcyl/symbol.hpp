// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "circle_ops.hpp"
#include "core.hpp"

namespace swcyl::kernel {

using circle::CircleFunction;
using circle::CircleQuadrature;
using circle::ModeBand;

/// a(theta) = 2 sqrt|cos theta| cos(pi/4 + h(theta)) e^{i phi(theta)}.
struct KernelParams
{
  std::function<double(double)> h;
  std::function<double(double)> phi;
  std::string label;

  /// h = sum_k hc[k-1] cos(k theta) + hs[k-1] sin(k theta); phi likewise.
  static KernelParams from_fourier(std::vector<double> h_cos, std::vector<double> h_sin,
                                   std::vector<double> phi_cos, std::vector<double> phi_sin,
                                   std::string label = "fourier")
  {
    auto series = [](std::vector<double> c, std::vector<double> s) {
      return [c = std::move(c), s = std::move(s)](double t) {
        double acc = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * std::cos((k + 1.0) * t);
        for (std::size_t k = 0; k < s.size(); ++k) acc += s[k] * std::sin((k + 1.0) * t);
        return acc;
      };
    };
    return {series(std::move(h_cos), std::move(h_sin)), series(std::move(phi_cos), std::move(phi_sin)),
            std::move(label)};
  }

  [[nodiscard]] CircleFunction sampled_h(int M) const
  {
    return circle::sample_function([&](double t) { return cplx(h(t)); }, M, ModeBand(M / 4));
  }
  [[nodiscard]] CircleFunction sampled_phi(int M) const
  {
    return circle::sample_function([&](double t) { return cplx(phi(t)); }, M, ModeBand(M / 4));
  }
};

struct ParamsCheck
{
  double h_antiperiodic = 0.0;  // max |h(t + pi) + h(t)|
  double h_even = 0.0;          // max |h(-t) - h(t)|
  double phi_odd = 0.0;         // max |phi(-t) + phi(t)|
  double h_range_excess = 0.0;  // max(|h| - pi/4, 0)
  double phi_range_excess = 0.0;
  double h_max = 0.0;

  [[nodiscard]] bool ok(double tol = 1e-10) const
  {
    return h_antiperiodic <= tol && h_even <= tol && phi_odd <= tol && h_range_excess <= tol &&
           phi_range_excess <= tol;
  }
};

/// h must also be even: a(-t) = conj a(t) needs cos(pi/4 + h(-t)) = cos(pi/4 + h(t)).
inline ParamsCheck check_params(const KernelParams & p, int M = 1024)
{
  ParamsCheck c;
  for (int k = 0; k < M; ++k) {
    const double t = circle::uniform_node(k, M);
    const double h = p.h(t), f = p.phi(t);
    c.h_antiperiodic = std::max(c.h_antiperiodic, std::abs(p.h(t + pi) + h));
    c.h_even = std::max(c.h_even, std::abs(p.h(-t) - h));
    c.phi_odd = std::max(c.phi_odd, std::abs(wrap_signed(p.phi(-t) + f)));
    c.h_range_excess = std::max(c.h_range_excess, std::abs(h) - pi / 4);
    c.phi_range_excess = std::max(c.phi_range_excess, std::max(-pi - f, f - pi));
    c.h_max = std::max(c.h_max, std::abs(h));
  }
  c.h_range_excess = std::max(0.0, c.h_range_excess);
  c.phi_range_excess = std::max(0.0, c.phi_range_excess);
  return c;
}

enum class Injectivity { Yes, No, Boundary };

inline const char * to_string(Injectivity v)
{
  switch (v) {
  case Injectivity::Yes: return "yes";
  case Injectivity::No: return "no";
  default: return "boundary";
  }
}

struct SymbolFlags
{
  bool hermitian = false;
  bool tracial = false;
  bool finite_trace = false;
  Injectivity injective = Injectivity::Boundary;
};

/// The kernel-defining function a(theta).
struct SymbolFunction
{
  CircleFunction a;                          // uniform samples + coefficients
  SymbolFlags flags;
  std::function<cplx(double)> closed_form;   // empty for sample-only symbols
  std::optional<KernelParams> params;
  std::string label;
  double edge_exponent = 0.0;                // |a| ~ |theta -+ pi/2|^gamma at the zeros of cos
  double isometry_measure = 1.0;             // c with c * int |W_{P00}|^2 = 1, or 1 if divergent

  [[nodiscard]] bool has_closed_form() const { return static_cast<bool>(closed_form); }
  [[nodiscard]] int sample_count() const { return a.sample_count(); }

  /// Exact for closed forms; at uniform nodes only for sampled symbols.
  [[nodiscard]] cplx value(double theta) const
  {
    if (closed_form) return closed_form(theta);
    const int M = sample_count();
    const double x = wrap_angle(theta) * M / two_pi;
    const int k = static_cast<int>(std::lround(x)) % M;
    return a.samples[k];
  }
};

struct AdmissibilityReport
{
  double hermitian_residual = 0.0;
  double traciality_residual = 0.0;
  cplx half_a0;        // a(0) / 2
  cplx mean_a0_api;    // (a(0) + a(pi)) / 2
  bool finite_trace = false;
};

inline AdmissibilityReport check_admissible(const SymbolFunction & s)
{
  AdmissibilityReport r;
  const auto & v = s.a.samples;
  const int M = static_cast<int>(v.size());
  for (int k = 0; k < M; ++k) {
    const double t = circle::uniform_node(k, M);
    const cplx ak = v[k];
    // closed forms are compared at exactly mirrored arguments so rounding in cos does not register
    const cplx am = s.closed_form ? s.closed_form(-wrap_signed(t)) : v[(M - k) % M];
    const cplx akk = s.closed_form ? s.closed_form(wrap_signed(t)) : ak;
    r.hermitian_residual = std::max(r.hermitian_residual, std::abs(am - std::conj(akk)));
    if (M % 2 == 0) {
      const cplx ap = v[(k + M / 2) % M];
      r.traciality_residual = std::max(
          r.traciality_residual, std::abs(std::norm(ak) + std::norm(ap) - 4.0 * std::abs(std::cos(t))));
    }
  }
  const cplx a0 = v[0];
  const cplx api = (M % 2 == 0) ? v[M / 2] : s.value(pi);
  r.half_a0 = 0.5 * a0;
  r.mean_a0_api = 0.5 * (a0 + api);
  r.finite_trace = std::abs(a0) > 1e-9;
  return r;
}

// ---------------------------------------------------------------------------
// Injectivity. Omega(alpha, j) = Omega(alpha', j') forces alpha' = alpha + pi and
// a(t + pi) = a(t) e^{i c sin t}; the colliding point is then (alpha + pi, c/2 - j).

struct InjectivityAnalysis
{
  Injectivity verdict = Injectivity::Yes;
  std::string rule;
  double antipodal_modulus_residual = 0.0;  // max ||a(t+pi)| - |a(t)||
  double phase_fit_residual = 0.0;          // max |wrap(arg a(t+pi)/a(t) - c sin t)|
  std::optional<double> c;                  // collision shift when the family matches
  bool antipodal_shift_collision = false;  // h = 0 and phi(t+pi) - phi(t) = 2 sin t
};

inline InjectivityAnalysis analyze_injectivity(const SymbolFunction & s, const KernelParams * params,
                                               double tol = 1e-9)
{
  InjectivityAnalysis out;
  const int M = 1024;
  auto val = [&](double t) { return s.has_closed_form() ? s.closed_form(t) : s.value(t); };
  const int Ms = s.has_closed_form() ? M : s.sample_count();

  if (params) {
    const ParamsCheck pc = check_params(*params, M);
    double dev = 0.0;
    for (int k = 0; k < M; ++k) {
      const double t = circle::uniform_node(k, M);
      dev = std::max(dev, std::abs(wrap_signed(params->phi(t + pi) - params->phi(t) - 2.0 * std::sin(t))));
    }
    out.antipodal_shift_collision = pc.h_max <= tol && dev <= tol;
    if (pc.h_max > tol) {
      out.verdict = Injectivity::Yes;
      out.rule = "h nonzero";
      return out;
    }
  }

  double amax = 0.0;
  for (int k = 0; k < Ms; ++k) amax = std::max(amax, std::abs(val(circle::uniform_node(k, Ms))));
  for (int k = 0; k < Ms; ++k) {
    const double t = circle::uniform_node(k, Ms);
    out.antipodal_modulus_residual =
        std::max(out.antipodal_modulus_residual, std::abs(std::abs(val(t + pi)) - std::abs(val(t))));
  }
  if (amax == 0.0) {
    out.verdict = Injectivity::No;
    out.rule = "a vanishes identically";
    return out;
  }
  if (out.antipodal_modulus_residual > 1e-6 * amax) {
    out.verdict = Injectivity::Yes;
    out.rule = "|a(t+pi)| differs from |a(t)|";
    return out;
  }

  // Fit c on nodes where c sin t cannot wrap, then check everywhere.
  const double floor = 1e-6 * amax;
  double num = 0.0, den = 0.0;
  std::vector<std::pair<double, double>> phase;  // (t, delta)
  for (int k = 0; k < Ms; ++k) {
    const double t = circle::uniform_node(k, Ms);
    const cplx x = val(t), y = val(t + pi);
    if (std::abs(x) < floor || std::abs(y) < floor) continue;
    const double d = std::arg(y * std::conj(x));
    phase.emplace_back(t, d);
    if (std::abs(std::sin(t)) <= 0.25) {
      num += d * std::sin(t);
      den += std::sin(t) * std::sin(t);
    }
  }
  const double c = den > 0.0 ? num / den : 0.0;
  for (auto [t, d] : phase)
    out.phase_fit_residual = std::max(out.phase_fit_residual, std::abs(wrap_signed(d - c * std::sin(t))));

  if (out.phase_fit_residual <= tol) {
    out.verdict = Injectivity::No;
    out.c = c;
    std::ostringstream os;
    os << "antipodal collision family, c = " << c;
    out.rule = os.str();
    return out;
  }
  if (out.phase_fit_residual <= 1e-6) {
    out.verdict = Injectivity::Boundary;
    out.c = c;
    out.rule = "antipodal phase nearly of the form c sin t";
    return out;
  }
  out.verdict = Injectivity::Yes;
  out.rule = "antipodal phase not of the form c sin t";
  return out;
}

// ---------------------------------------------------------------------------
// Construction

struct SymbolOptions
{
  int M = 1024;  // uniform samples
};

namespace detail {

/// Local power gamma of |a| at the zeros of cos, from two probe offsets.
inline double edge_exponent(const std::function<cplx(double)> & f)
{
  double gamma = 2.0;
  bool any = false;
  for (double c : {pi / 2, 3 * pi / 2}) {
    for (double side : {-1.0, 1.0}) {
      const double a1 = std::abs(f(c + side * 1e-3));
      const double a2 = std::abs(f(c + side * 1e-5));
      if (a1 < 1e-14) continue;
      any = true;
      gamma = std::min(gamma, a2 <= 0.0 ? 2.0 : std::log(a1 / a2) / std::log(100.0));
    }
  }
  return any ? std::clamp(gamma, 0.0, 2.0) : 0.0;
}

inline double edge_exponent_sampled(const std::vector<cplx> & v)
{
  const int M = static_cast<int>(v.size());
  double gamma = 2.0;
  bool any = false;
  for (int q : {M / 4, 3 * M / 4}) {
    for (int side : {-1, 1}) {
      const double a1 = std::abs(v[(q + 4 * side + M) % M]);
      const double a2 = std::abs(v[(q + side + M) % M]);
      if (a1 < 1e-14) continue;
      any = true;
      gamma = std::min(gamma, a2 <= 0.0 ? 2.0 : std::log(a1 / a2) / std::log(4.0));
    }
  }
  return any ? std::clamp(gamma, 0.0, 2.0) : 0.0;
}

}  // namespace detail

/// g(t) = a(t) / (2 sqrt|cos t|), the bounded part of an admissible symbol.
inline std::optional<std::function<cplx(double)>> reduced_symbol(const SymbolFunction & s)
{
  const double edge = std::max(std::abs(s.value(pi / 2)), std::abs(s.value(3 * pi / 2)));
  if (edge > 1e-6) return std::nullopt;
  if (s.closed_form) {
    return [f = s.closed_form](double t) {
      const double c = std::sqrt(std::abs(std::cos(t)));
      return c < 1e-300 ? cplx{} : f(t) / (2.0 * c);
    };
  }
  return std::nullopt;
}

/// Exact Gram G_{ss'} = int_R L_s(j) L_{s'}(j) dj for |s|, |s'| <= S, from
/// int e^{2ij x} dj = pi delta(x):
///   G_{ss'} = P_{s-s'} + (-1)^{s'} Q_{s+s'},
///   P_k = (1/2pi) int 2 g(t) g(-t) e^{-ikt} dt,  Q_k = (1/2pi) int 2 g(t) g(t+pi) e^{-ikt} dt.
/// Empty when a does not vanish at +-pi/2 (the integral diverges).
inline std::optional<Eigen::MatrixXcd> exact_gram(const SymbolFunction & s, int S)
{
  const double edge = std::max(std::abs(s.value(pi / 2)), std::abs(s.value(3 * pi / 2)));
  if (edge > 1e-6) return std::nullopt;  // sqrt(|cos|) at a rounded pi/2 is ~1e-8

  std::vector<double> th, w;
  std::vector<cplx> gg_minus, gg_pi;
  if (s.closed_form) {
    const auto g = *reduced_symbol(s);
    const auto q = circle::split_gauss_quadrature(std::max(512, 2 * S + 128));
    th = q.theta;
    w = q.weight;
    for (double t : th) {
      gg_minus.push_back(g(t) * g(-t));
      gg_pi.push_back(g(t) * g(t + pi));
    }
  } else {
    const int M = s.sample_count();
    if (M % 2) return std::nullopt;
    std::vector<cplx> g(M);
    for (int k = 0; k < M; ++k) {
      const double c = std::sqrt(std::abs(std::cos(circle::uniform_node(k, M))));
      g[k] = c < 1e-8 ? cplx{} : s.a.samples[k] / (2.0 * c);
    }
    for (int k = 0; k < M; ++k) {
      const double c = std::abs(std::cos(circle::uniform_node(k, M)));
      if (c < 1e-8) g[k] = 0.5 * (g[(k + M - 1) % M] + g[(k + 1) % M]);
    }
    for (int k = 0; k < M; ++k) {
      th.push_back(circle::uniform_node(k, M));
      w.push_back(1.0 / M);
      gg_minus.push_back(g[k] * g[(M - k) % M]);
      gg_pi.push_back(g[k] * g[(k + M / 2) % M]);
    }
  }

  const int K = 2 * S;
  std::vector<cplx> P(2 * K + 1), Q(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    cplx p{}, q{};
    for (std::size_t i = 0; i < th.size(); ++i) {
      const cplx e = std::polar(w[i], -k * th[i]);
      p += gg_minus[i] * e;
      q += gg_pi[i] * e;
    }
    P[k + K] = 2.0 * p;
    Q[k + K] = 2.0 * q;
  }
  Eigen::MatrixXcd G(2 * S + 1, 2 * S + 1);
  for (int a = -S; a <= S; ++a)
    for (int b = -S; b <= S; ++b) G(a + S, b + S) = P[a - b + K] + parity_sign(b) * Q[a + b + K];
  return G;
}

namespace detail {

inline void finish_symbol(SymbolFunction & s, const KernelParams * params)
{
  const AdmissibilityReport r = check_admissible(s);
  s.flags.hermitian = r.hermitian_residual <= 1e-9;
  s.flags.tracial = r.traciality_residual <= 1e-9;
  s.flags.finite_trace = r.finite_trace;
  s.flags.injective = analyze_injectivity(s, params).verdict;
  s.edge_exponent = s.closed_form ? edge_exponent(s.closed_form) : edge_exponent_sampled(s.a.samples);
  if (auto G = exact_gram(s, 0); G && std::abs((*G)(0, 0)) > 1e-12)
    s.isometry_measure = 1.0 / std::real((*G)(0, 0));
}

}  // namespace detail

inline SymbolFunction symbol_from_function(std::function<cplx(double)> f, std::string label,
                                           SymbolOptions opt = {})
{
  SymbolFunction s;
  s.a = circle::sample_function(f, opt.M, ModeBand(std::max(1, opt.M / 4)));
  s.closed_form = std::move(f);
  s.label = std::move(label);
  detail::finish_symbol(s, nullptr);
  return s;
}

inline SymbolFunction symbol_from_samples(std::vector<cplx> samples, std::string label)
{
  SymbolFunction s;
  const int M = static_cast<int>(samples.size());
  if (M < 8) throw UndersamplingError("symbol_from_samples: need at least 8 samples");
  s.a = circle::fourier_analyze(samples, ModeBand(M / 4));
  s.label = std::move(label);
  detail::finish_symbol(s, nullptr);
  return s;
}

inline cplx admissible_value(const KernelParams & p, double t)
{
  return 2.0 * std::sqrt(std::abs(std::cos(t))) * std::cos(pi / 4 + p.h(t)) * std::polar(1.0, p.phi(t));
}

inline SymbolFunction build_symbol(const KernelParams & p, SymbolOptions opt = {})
{
  const ParamsCheck c = check_params(p, opt.M);
  if (!c.ok()) {
    std::ostringstream os;
    os << "build_symbol: parameter invariants violated (h(t+pi)+h(t): " << c.h_antiperiodic
       << ", h(-t)-h(t): " << c.h_even << ", phi(-t)+phi(t): " << c.phi_odd
       << ", |h|-pi/4: " << c.h_range_excess << ", phi range: " << c.phi_range_excess << ")";
    throw InvariantViolation(os.str());
  }
  SymbolFunction s;
  s.closed_form = [p](double t) { return admissible_value(p, t); };
  s.a = circle::sample_function(s.closed_form, opt.M, ModeBand(std::max(1, opt.M / 4)));
  s.params = p;
  s.label = p.label;
  detail::finish_symbol(s, &p);
  return s;
}

// ---------------------------------------------------------------------------
// Builtins

namespace builtin {

inline KernelParams sqrt_cos_params()
{
  return {[](double) { return 0.0; }, [](double) { return 0.0; }, "sqrt-cos"};
}

inline KernelParams twisted_h_params()
{
  return {[](double t) { return pi / 8 * std::cos(t); }, [](double) { return 0.0; }, "twisted-h"};
}

/// phi = -sin t: odd, and phi(t + pi) - phi(t) = 2 sin t.
inline KernelParams collision_params()
{
  return {[](double) { return 0.0; }, [](double t) { return -std::sin(t); }, "collision"};
}

/// h = -(pi/4) sign(cos t), i.e. a = 2 sqrt(max(cos t, 0)).
inline KernelParams half_cos_params()
{
  return {[](double t) {
            const double c = std::cos(t);
            return c > 0.0 ? -pi / 4 : (c < 0.0 ? pi / 4 : 0.0);
          },
          [](double) { return 0.0; }, "half-cos"};
}

inline SymbolFunction parity(SymbolOptions opt = {})
{
  return symbol_from_function([](double) { return cplx{1.0, 0.0}; }, "parity", opt);
}

inline std::vector<std::string> names() { return {"parity", "sqrt-cos", "twisted-h", "collision", "half-cos"}; }

inline std::optional<KernelParams> params_by_name(const std::string & name)
{
  if (name == "sqrt-cos") return sqrt_cos_params();
  if (name == "twisted-h") return twisted_h_params();
  if (name == "collision") return collision_params();
  if (name == "half-cos") return half_cos_params();
  return std::nullopt;
}

inline SymbolFunction by_name(const std::string & name, SymbolOptions opt = {})
{
  if (name == "parity") return parity(opt);
  if (auto p = params_by_name(name)) return build_symbol(*p, opt);
  throw std::invalid_argument("unknown builtin kernel '" + name + "'");
}

}  // namespace builtin

/// Random admissible parameters: h a cosine series in odd modes with sum |c_k| <= pi/4,
/// phi a sine series with sum |s_k| < pi.
inline KernelParams random_params(std::mt19937_64 & rng, int h_modes = 4, int phi_modes = 4)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> hc(2 * h_modes, 0.0), ps(phi_modes, 0.0);
  double hs = 0.0, fs = 0.0;
  for (int k = 0; k < h_modes; ++k) {
    hc[2 * k] = u(rng);
    hs += std::abs(hc[2 * k]);
  }
  for (auto & x : ps) {
    x = u(rng);
    fs += std::abs(x);
  }
  const double hscale = (pi / 4) * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / std::max(hs, 1e-12);
  const double fscale = 0.95 * pi * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / std::max(fs, 1e-12);
  for (auto & x : hc) x *= hscale;
  for (auto & x : ps) x *= fscale;
  return KernelParams::from_fourier(hc, {}, {}, ps, "random");
}

}  // namespace swcyl::kernel
