// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "circle_ops.hpp"
#include "euclid2.hpp"
#include "j_integration.hpp"
#include "swkernel.hpp"
#include "symbol.hpp"

namespace swcyl::verify {

using circle::FourierOperator;
using circle::ModeBand;
using euclid::CylinderPoint;
using euclid::GroupElement;
using kernel::SymbolFunction;
using json = nlohmann::json;

struct PropertyReport
{
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  json context = json::object();
};

/// pass <=> residual <= tolerance; NaN never passes.
inline PropertyReport make_report(std::string name, double residual, double tolerance, json context = json::object())
{
  PropertyReport r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  r.context = std::move(context);
  return r;
}

inline json to_json(const PropertyReport & r)
{
  json j;
  j["name"] = r.name;
  j["residual"] = std::isfinite(r.residual) ? json(r.residual) : json(nullptr);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["context"] = r.context;
  return j;
}

inline json point_json(const CylinderPoint & u) { return {{"alpha", u.alpha}, {"j", u.j}}; }

inline json group_json(const GroupElement & g)
{
  return {{"eta", g.eta}, {"a", {g.a.x(), g.a.y()}}, {"phi", g.phi}};
}

// ---------------------------------------------------------------------------
// Covariance

/// ||U(g) Omega(u) U(g)^-1 - Omega(g.u)||_max on |m| <= N/2, with g.u in the
/// kernel chart (alpha + phi, j - a x p^phi).
inline PropertyReport check_covariance(const SymbolFunction & s, const GroupElement & g, const CylinderPoint & u,
                                       double r, ModeBand band, double tol = 1e-6)
{
  const CylinderPoint gu = euclid::kernel_chart::act(g, u, r);
  const FourierOperator U = euclid::rep_matrix(g, r, band);
  const FourierOperator Ui = euclid::rep_matrix(euclid::inverse(g), r, band);
  const FourierOperator lhs = circle::compose(circle::compose(U, kernel::omega_matrix(s, u, band)), Ui);
  const FourierOperator rhs = kernel::omega_matrix(s, gu, band);
  const int K = circle::default_interior(band);
  json ctx = {{"kernel", s.label}, {"g", group_json(g)}, {"u", point_json(u)}, {"gu", point_json(gu)},
              {"r", r}, {"N", band.N}, {"interior", K}, {"chart", "j_kernel = -j_coadjoint"}};
  return make_report("covariance", circle::max_norm(lhs - rhs, K), tol, std::move(ctx));
}

/// Same check for the legacy a = 1 kernel with the coadjoint chart (alpha + phi, j + a x p^phi).
inline PropertyReport check_covariance_legacy(const GroupElement & g, const CylinderPoint & u, double r,
                                              ModeBand band, double tol = 1e-6)
{
  const CylinderPoint gu = euclid::act(g, u, r);
  const FourierOperator U = euclid::rep_matrix(g, r, band);
  const FourierOperator Ui = euclid::rep_matrix(euclid::inverse(g), r, band);
  const FourierOperator lhs = circle::compose(circle::compose(U, kernel::legacy_parity_kernel(u, band)), Ui);
  const FourierOperator rhs = kernel::legacy_parity_kernel(gu, band);
  const int K = circle::default_interior(band);
  json ctx = {{"kernel", "legacy parity"}, {"g", group_json(g)}, {"u", point_json(u)}, {"gu", point_json(gu)},
              {"r", r}, {"N", band.N}, {"interior", K}, {"chart", "coadjoint"}};
  return make_report("covariance.legacy_parity", circle::max_norm(lhs - rhs, K), tol, std::move(ctx));
}

/// max over |r|, |s| <= N - 1 of |A_{s,r+1} + A_{s,r-1} - A_{s+1,r} - A_{s-1,r}|.
inline double infinitesimal_residual(const FourierOperator & A)
{
  const int N = A.band.N;
  double res = 0.0;
  for (int r = -(N - 1); r <= N - 1; ++r)
    for (int s = -(N - 1); s <= N - 1; ++s)
      res = std::max(res, std::abs(A(s, r + 1) + A(s, r - 1) - A(s + 1, r) - A(s - 1, r)));
  return res;
}

inline PropertyReport check_infinitesimal_covariance(const FourierOperator & A, double tol = 1e-9)
{
  return make_report("covariance.infinitesimal", infinitesimal_residual(A), tol, {{"N", A.band.N}});
}

// ---------------------------------------------------------------------------
// Null space of A -> [P_1, A] on the interior equations

struct RecurrenceSolution
{
  int dimension = 0;
  int predicted = 0;          // 8N: 2(4N+1) sequence values minus one constant per sublattice
  int generator_rank = 0;     // rank of {a_{r+s}} u {b_{r-s}} computed numerically
  Eigen::MatrixXd basis;      // columns: vectorized (row-major) null matrices
  double projection_residual = 0.0;
  double generator_residual = 0.0;  // max equation residual over the generators
  double gap_low = 0.0, gap_high = 0.0;  // largest dropped / smallest kept singular value (relative)
  PropertyReport report;
};

inline RecurrenceSolution solve_covariance_recurrence(ModeBand band, double tol = 1e-8)
{
  const int N = band.N, n = band.size(), ne = (2 * N - 1) * (2 * N - 1), nu = n * n;
  auto var = [&](int p, int q) { return (p + N) * n + (q + N); };

  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(std::max(ne, 1), nu);
  int row = 0;
  for (int r = -(N - 1); r <= N - 1; ++r)
    for (int s = -(N - 1); s <= N - 1; ++s, ++row) {
      E(row, var(s, r + 1)) += 1.0;
      E(row, var(s, r - 1)) += 1.0;
      E(row, var(s + 1, r)) -= 1.0;
      E(row, var(s - 1, r)) -= 1.0;
    }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(E, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 1.0;
  std::vector<double> all(nu, 0.0);
  for (int i = 0; i < sv.size(); ++i) all[i] = sv(i) / smax;

  RecurrenceSolution out;
  std::vector<int> null_cols;
  out.gap_high = 1.0;
  for (int i = 0; i < nu; ++i) {
    if (all[i] <= 1e-10) {
      null_cols.push_back(i);
      out.gap_low = std::max(out.gap_low, all[i]);
    } else {
      out.gap_high = std::min(out.gap_high, all[i]);
    }
  }
  if (out.gap_high < 1e-6 || out.gap_low > 1e-10) {
    throw RankAmbiguityError("solve_covariance_recurrence: singular values near the rank cut (kept min " +
                             std::to_string(out.gap_high) + ")");
  }
  out.dimension = static_cast<int>(null_cols.size());
  out.basis.resize(nu, out.dimension);
  for (int i = 0; i < out.dimension; ++i) out.basis.col(i) = svd.matrixV().col(null_cols[i]);

  // generators a_{r+s} and b_{r-s}
  Eigen::MatrixXd Gen(nu, 2 * (4 * N + 1));
  for (int k = -2 * N; k <= 2 * N; ++k) {
    Eigen::VectorXd ga = Eigen::VectorXd::Zero(nu), gb = Eigen::VectorXd::Zero(nu);
    for (int p = -N; p <= N; ++p)
      for (int q = -N; q <= N; ++q) {
        if (p + q == k) ga(var(p, q)) = 1.0;
        if (p - q == k) gb(var(p, q)) = 1.0;
      }
    Gen.col(k + 2 * N) = ga;
    Gen.col(4 * N + 1 + k + 2 * N) = gb;
  }
  out.generator_residual = (E * Gen).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Eigen::MatrixXd> gsvd(Gen, Eigen::ComputeThinU);
  const Eigen::VectorXd gs = gsvd.singularValues();
  for (int i = 0; i < gs.size(); ++i)
    if (gs(i) > 1e-10 * gs(0)) ++out.generator_rank;
  const Eigen::MatrixXd Q = gsvd.matrixU().leftCols(out.generator_rank);
  for (int i = 0; i < out.dimension; ++i) {
    const Eigen::VectorXd v = out.basis.col(i);
    out.projection_residual = std::max(out.projection_residual, (v - Q * (Q.transpose() * v)).norm());
  }
  out.predicted = 8 * N;

  const bool dims_ok = out.dimension == out.predicted && out.generator_rank == out.predicted;
  json ctx = {{"N", N}, {"dimension", out.dimension}, {"predicted", out.predicted},
              {"generator_rank", out.generator_rank}, {"projection_residual", out.projection_residual},
              {"generator_residual", out.generator_residual}, {"kept_sigma_min", out.gap_high},
              {"dropped_sigma_max", out.gap_low}};
  out.report = make_report("recurrence.null_space",
                           dims_ok ? std::max(out.projection_residual, out.generator_residual)
                                   : std::numeric_limits<double>::infinity(),
                           tol, std::move(ctx));
  return out;
}

/// Distance of a matrix from the a/b span (vectorized row-major), relative to its norm.
inline double distance_from_solution_span(const Eigen::MatrixXcd & A, const RecurrenceSolution & sol)
{
  const Eigen::Index n = A.rows();
  Eigen::VectorXcd v(n * n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) v(p * n + q) = A(p, q);
  const Eigen::MatrixXcd B = sol.basis.cast<cplx>();
  const Eigen::VectorXcd proj = B * (B.adjoint() * v);
  return (v - proj).norm() / v.norm();
}

// ---------------------------------------------------------------------------
// Overlap tr[Omega(u) Omega(v)]

struct Overlap
{
  cplx value;                 // band mode sum
  std::vector<cplx> modes;    // c_d(j, j'), d = -D..D, D = N/2: value = sum_d e^{id(alpha - alpha')} c_d
  int D = 0;
  double tail = 0.0;
  bool converged = false;
};

/// c_d(j, j') = sum_{s = d mod 2, |s| <= 2N - |d|} L_s(j) L_s(j').
inline std::vector<cplx> overlap_modes(const kernel::LTable & L, int lj, int lk, ModeBand band, int D)
{
  std::vector<cplx> c(2 * D + 1);
  for (int d = -D; d <= D; ++d) {
    cplx acc{};
    for (int s = -(2 * band.N - std::abs(d)); s <= 2 * band.N - std::abs(d); s += 2) acc += L(s, lj) * L(s, lk);
    c[d + D] = acc;
  }
  return c;
}

inline Overlap overlap_trace(const SymbolFunction & s, const CylinderPoint & u, const CylinderPoint & v, ModeBand band)
{
  kernel::require_band(std::max(std::abs(u.j), std::abs(v.j)), band, "overlap_trace");
  const FourierOperator P =
      circle::compose(kernel::omega_matrix(s, u, band), kernel::omega_matrix(s, v, band));
  Overlap o;
  o.value = P.entries.trace();
  o.tail = circle::mode_sum_tail(P);
  o.converged = o.tail < 1e-8;
  o.D = circle::default_interior(band);
  const kernel::LTable L = kernel::l_table(s, {u.j, v.j}, 2 * band.N);
  o.modes = overlap_modes(L, 0, 1, band, o.D);
  return o;
}

// ---------------------------------------------------------------------------
// Traciality

struct TracialityOptions
{
  kernel::CylinderGrid grid{512, 40.0, 0.05, 0.2};
  ModeBand band{64};
  std::optional<double> measure;  // default: the symbol's isometry constant
  double tol = 1e-2;
};

inline double decay_power(const SymbolFunction & s) { return 0.5 * (1.0 + s.edge_exponent); }

/// | c sum_t L_t(0) <L_t | L_r> - L_r(0) |, t = r mod 2, |t| <= 2N, with
/// <f|g> = int conj(f) g dj evaluated as one tail-corrected integral of
/// K_r(j) = sum_t L_t(0) conj(L_t(j)) against L_r(j).
inline PropertyReport check_traciality(const SymbolFunction & s, int r_index, const TracialityOptions & opt = {})
{
  const auto & g = opt.grid;
  const int S = 2 * opt.band.N;
  const kernel::LTable L = kernel::l_table(s, g.js(), S);
  const kernel::LTable L0 = kernel::l_table(s, {0.0}, S);
  const double c = opt.measure.value_or(s.isometry_measure);

  Eigen::VectorXcd Kr = Eigen::VectorXcd::Zero(g.nj());
  for (int t = -S; t <= S; ++t)
    if (((t - r_index) % 2 + 2) % 2 == 0) Kr += L0(t, 0) * L.values.col(t + S).conjugate();

  const kernel::TailCorrectedRule rule(g);
  const double pL = decay_power(s), pK = 0.5 * (1.0 + 2.0 * s.edge_exponent);
  const auto res = rule.product_integral(Kr, pK, L.values.col(r_index + S), pL);
  const cplx target = L0(r_index, 0);
  const cplx lhs = c * res.corrected;
  const double residual = std::abs(lhs - target);
  json ctx = {{"kernel", s.label}, {"r", r_index}, {"measure", c}, {"N", opt.band.N},
              {"grid", {{"j_max", g.j_max}, {"dj", g.dj}, {"taper", g.taper}}},
              {"bracket", "L2(dj), tapered trapezoid + asymptotic tail"},
              {"target", {target.real(), target.imag()}},
              {"raw_residual", std::abs(c * res.raw - target)},
              {"divergent_tail", res.divergent_tail}, {"tail_fit_misfit", res.fit_residual},
              {"fitted_measure", std::abs(res.corrected) > 0 ? std::abs(target / res.corrected) : 0.0}};
  return make_report("traciality.r" + std::to_string(r_index), residual, opt.tol, std::move(ctx));
}

/// int K(u, v) W_{n,m}(v) d mu(v) against W_{n,m}(u); the alpha' integral is done on
/// the mode expansion of K, the j' integral by the tail-corrected rule.
inline PropertyReport check_reproducing(const SymbolFunction & s, int n, int m, const CylinderPoint & u,
                                        const TracialityOptions & opt = {}, double tol = 1e-3)
{
  const auto & g = opt.grid;
  const ModeBand band = opt.band;
  const int S = 2 * band.N, d = m - n;
  std::vector<double> js = g.js();
  js.push_back(u.j);
  const kernel::LTable L = kernel::l_table(s, js, S);
  const int lu = g.nj();
  const double c = opt.measure.value_or(s.isometry_measure);

  Eigen::VectorXcd Kd = Eigen::VectorXcd::Zero(g.nj());
  for (int t = -(S - std::abs(d)); t <= S - std::abs(d); t += 2)
    Kd += L(t, lu) * L.values.col(t + S).head(g.nj());
  const kernel::TailCorrectedRule rule(g);
  const double pL = decay_power(s), pK = 0.5 * (1.0 + 2.0 * s.edge_exponent);
  const auto res = rule.product_integral(Kd, pK, L.values.col(m + n + S).head(g.nj()), pL);
  const cplx phase = std::polar(1.0, d * u.alpha);
  const cplx lhs = c * phase * res.corrected, rhs = phase * L(m + n, lu);
  json ctx = {{"kernel", s.label}, {"n", n}, {"m", m}, {"u", point_json(u)}, {"measure", c},
              {"raw_residual", std::abs(c * phase * res.raw - rhs)}, {"divergent_tail", res.divergent_tail}};
  return make_report("traciality.reproducing", std::abs(lhs - rhs), tol, std::move(ctx));
}

// ---------------------------------------------------------------------------
// Injectivity

struct InjectivityResult
{
  kernel::Injectivity verdict = kernel::Injectivity::Yes;
  kernel::InjectivityAnalysis analysis;
  std::optional<std::pair<CylinderPoint, CylinderPoint>> witness;
  double witness_distance = std::numeric_limits<double>::quiet_NaN();
  double min_sampled_distance = std::numeric_limits<double>::infinity();
  PropertyReport report;
};

inline double omega_distance(const SymbolFunction & s, const CylinderPoint & u, const CylinderPoint & v, ModeBand band)
{
  return circle::max_norm(kernel::omega_matrix(s, u, band) - kernel::omega_matrix(s, v, band),
                          circle::default_interior(band));
}

inline InjectivityResult check_injectivity(const SymbolFunction & s, const kernel::KernelParams * params,
                                           ModeBand band, std::mt19937_64 & rng, int pairs = 200,
                                           double j_range = 3.0)
{
  InjectivityResult out;
  out.analysis = kernel::analyze_injectivity(s, params);
  out.verdict = out.analysis.verdict;

  std::uniform_real_distribution<double> ua(0.0, two_pi), uj(-j_range, j_range);
  std::vector<std::pair<CylinderPoint, CylinderPoint>> cases(pairs);
  for (auto & c : cases) {
    c.first = CylinderPoint(ua(rng), uj(rng));
    c.second = CylinderPoint(ua(rng), uj(rng));
  }
  std::vector<double> dist(pairs);
  parallel_for(pairs, [&](std::size_t i) { dist[i] = omega_distance(s, cases[i].first, cases[i].second, band); });
  for (double d : dist) out.min_sampled_distance = std::min(out.min_sampled_distance, d);

  json ctx = {{"kernel", s.label}, {"verdict", kernel::to_string(out.verdict)}, {"rule", out.analysis.rule},
              {"antipodal_shift_collision", out.analysis.antipodal_shift_collision},
              {"min_sampled_distance", out.min_sampled_distance}, {"pairs", pairs}};
  if (out.analysis.c) {
    const double cshift = *out.analysis.c;
    const CylinderPoint u(0.7, std::clamp(0.3, -j_range, j_range));
    const CylinderPoint v(u.alpha + pi, 0.5 * cshift - u.j);
    out.witness = std::make_pair(u, v);
    out.witness_distance = omega_distance(s, u, v, band);
    ctx["collision_shift_c"] = cshift;
    ctx["witness"] = {point_json(u), point_json(v)};
    ctx["witness_distance"] = out.witness_distance;
  }
  if (out.verdict == kernel::Injectivity::No) {
    out.report = make_report("injectivity", out.witness_distance, 1e-8, std::move(ctx));
  } else if (out.verdict == kernel::Injectivity::Yes) {
    out.report = make_report("injectivity", std::max(0.0, 1e-4 - out.min_sampled_distance), 0.0, std::move(ctx));
  } else {
    out.report = make_report("injectivity", std::numeric_limits<double>::infinity(), 0.0, std::move(ctx));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Traces

struct TraceValues
{
  cplx kernel_diagonal;   // (a(0) + a(pi)) / 2
  cplx half_a0;           // a(0) / 2
  cplx regularized_mode_sum;
};

/// T(R) = sum_n <n|Omega(u)|n> e^{-(n/R)^2} = sum_n L_{2n}(j) e^{-(n/R)^2} tends to the
/// kernel-diagonal value with an O(R^-2) bias; reported as (4 T(R) - T(R/2)) / 3.
inline TraceValues trace_values(const SymbolFunction & s, const CylinderPoint & u, int R = 512)
{
  TraceValues t;
  const ModeBand big(6 * R);
  const auto kd = kernel::omega_kernel(s, u, ModeBand(kernel::required_band(u.j)));
  t.kernel_diagonal = circle::generalized_trace(kd, circle::TraceConvention::KernelDiagonal);
  t.half_a0 = 0.5 * s.value(0.0);
  const kernel::LTable L = kernel::l_table(s, {u.j}, 2 * big.N);
  cplx full{}, half{};
  for (int n = -big.N; n <= big.N; ++n) {
    full += L(2 * n, 0) * std::exp(-std::pow(double(n) / R, 2));
    half += L(2 * n, 0) * std::exp(-std::pow(2.0 * n / R, 2));
  }
  t.regularized_mode_sum = (4.0 * full - half) / 3.0;
  return t;
}

// ---------------------------------------------------------------------------
// Suites

struct SuiteConfig
{
  ModeBand band{64};
  double r = 1.0;
  kernel::CylinderGrid grid{512, 40.0, 0.05, 0.2};
  std::optional<double> measure;
  int covariance_cases = 20;
  int injectivity_pairs = 200;
  int recurrence_N = 8;
  std::uint64_t seed = 20260101;
  std::vector<std::string> suites{"covariance", "hermiticity", "trace", "traciality", "injectivity", "recurrence"};
  double tol_covariance = 1e-6;
  double tol_infinitesimal = 1e-9;
  double tol_hermiticity = 1e-9;
  double tol_trace = 1e-5;
  double tol_traciality = 1e-2;
  double tol_recurrence = 1e-8;
};

inline GroupElement random_group_element(std::mt19937_64 & rng, double a_max = 2.0)
{
  std::uniform_real_distribution<double> u01(0.0, 1.0), sym(-1.0, 1.0);
  const double rad = a_max * std::sqrt(u01(rng)), dir = two_pi * u01(rng);
  return {3.0 * sym(rng), euclid::Vec2(rad * std::cos(dir), rad * std::sin(dir)), two_pi * u01(rng)};
}

inline std::vector<PropertyReport> run_suites(const SymbolFunction & s, const kernel::KernelParams * params,
                                              const SuiteConfig & cfg)
{
  std::vector<PropertyReport> out;
  std::mt19937_64 rng(cfg.seed);
  auto wants = [&](const char * name) {
    return std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end();
  };
  std::uniform_real_distribution<double> ua(0.0, two_pi), uj(-5.0, 5.0);

  if (wants("covariance")) {
    std::vector<std::pair<GroupElement, CylinderPoint>> cases;
    for (int i = 0; i < cfg.covariance_cases; ++i) {
      GroupElement g = random_group_element(rng);
      cases.emplace_back(g, CylinderPoint(ua(rng), uj(rng)));
    }
    std::vector<PropertyReport> reps(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
      reps[i] = check_covariance(s, cases[i].first, cases[i].second, cfg.r, cfg.band, cfg.tol_covariance);
    }, 1);
    PropertyReport worst = *std::max_element(reps.begin(), reps.end(),
                                             [](auto & a, auto & b) { return a.residual < b.residual; });
    worst.context["cases"] = cfg.covariance_cases;
    out.push_back(worst);
    auto inf = check_infinitesimal_covariance(kernel::omega_matrix(s, CylinderPoint(0.0, 0.0), cfg.band),
                                              cfg.tol_infinitesimal);
    inf.context["u0"] = point_json(CylinderPoint(0.0, 0.0));
    out.push_back(inf);
  }

  if (wants("hermiticity")) {
    const auto adm = kernel::check_admissible(s);
    out.push_back(make_report("hermiticity.symbol", adm.hermitian_residual, cfg.tol_hermiticity,
                              {{"kernel", s.label}}));
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const CylinderPoint u(ua(rng), uj(rng));
      const FourierOperator om = kernel::omega_matrix(s, u, cfg.band);
      worst = std::max(worst, circle::max_norm(om - circle::adjoint(om)));
    }
    out.push_back(make_report("hermiticity.omega", worst, cfg.tol_hermiticity, {{"kernel", s.label}, {"points", 10}}));
  }

  if (wants("trace")) {
    const auto adm = kernel::check_admissible(s);
    const CylinderPoint u0(0.0, 0.0), u1(ua(rng), std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
    const TraceValues t0 = trace_values(s, u0), t1 = trace_values(s, u1);
    json ctx = {{"kernel", s.label},
                {"kernel_diagonal", {t0.kernel_diagonal.real(), t0.kernel_diagonal.imag()}},
                {"half_a0", {t0.half_a0.real(), t0.half_a0.imag()}},
                {"regularized_mode_sum", {t0.regularized_mode_sum.real(), t0.regularized_mode_sum.imag()}},
                {"unit_trace_kernel_diagonal", std::abs(t0.kernel_diagonal - 1.0) <= 1e-10},
                {"unit_trace_half_a0", std::abs(t0.half_a0 - 1.0) <= 1e-10}};
    const double res = std::max(std::abs(t0.regularized_mode_sum - t0.kernel_diagonal),
                                std::abs(t1.regularized_mode_sum - t1.kernel_diagonal));
    out.push_back(make_report("trace.conventions", res, cfg.tol_trace, std::move(ctx)));
    out.push_back(make_report("trace.finite", adm.finite_trace ? 0.0 : 1.0, 0.0,
                              {{"kernel", s.label}, {"a0", {s.value(0.0).real(), s.value(0.0).imag()}}}));
  }

  if (wants("traciality")) {
    const auto adm = kernel::check_admissible(s);
    out.push_back(make_report("traciality.admissibility", adm.traciality_residual, 1e-9, {{"kernel", s.label}}));
    TracialityOptions topt;
    topt.grid = cfg.grid;
    topt.band = cfg.band;
    topt.measure = cfg.measure;
    topt.tol = cfg.tol_traciality;
    std::vector<PropertyReport> reps(3);
    parallel_for(3, [&](std::size_t r) { reps[r] = check_traciality(s, static_cast<int>(r), topt); }, 1);
    for (auto & r : reps) out.push_back(r);
  }

  if (wants("injectivity")) {
    auto inj = check_injectivity(s, params, cfg.band, rng, cfg.injectivity_pairs);
    out.push_back(inj.report);
  }

  if (wants("recurrence")) {
    const auto sol = solve_covariance_recurrence(ModeBand(cfg.recurrence_N), cfg.tol_recurrence);
    out.push_back(sol.report);
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Random(ModeBand(cfg.recurrence_N).size(), ModeBand(cfg.recurrence_N).size());
    std::normal_distribution<double> nd;
    for (Eigen::Index i = 0; i < R.size(); ++i) R.data()[i] = {nd(rng), nd(rng)};
    const double dist = distance_from_solution_span(R, sol);
    out.push_back(make_report("recurrence.random_outside_span", std::max(0.0, 0.1 - dist), 0.0,
                              {{"relative_distance", dist}}));
  }

  std::stable_sort(out.begin(), out.end(), [](auto & a, auto & b) { return a.name < b.name; });
  return out;
}

}  // namespace swcyl::verify
