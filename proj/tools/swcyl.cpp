// Copyright (C) 2026 The swcyl authors. MIT License.

// Command-line driver. Exit codes: 0 ok, 1 verification failure or numerical refusal,
// 2 config/usage error, 3 I/O or schema error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "swcyl/io.hpp"

using namespace swcyl;
using euclid::CylinderPoint;
using io::json;

namespace {

struct Options
{
  std::string config, out, format = "json";
  std::optional<std::uint64_t> seed;
};

struct Run
{
  std::string command;
  io::RunConfig cfg;

  json header() const
  {
    return {{"type", "swcyl.run"}, {"version", io::schema_version}, {"command", command},
            {"seed", cfg.seed}, {"config", cfg.echo()}};
  }
};

Run load(const std::string & command, const Options & o)
{
  Run r{command, o.config.empty() ? io::parse_config(io::KeyValueFile::parse("")) : io::load_config(o.config)};
  if (o.seed) {
    r.cfg.seed = *o.seed;
    r.cfg.suites.seed = *o.seed;
  }
  return r;
}

void emit(const Options & o, const std::string & text)
{
  if (o.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    io::write_text_file(o.out, text);
  }
}

std::string reports_text(const Run & run, const std::vector<verify::PropertyReport> & reps, const std::string & format)
{
  if (format == "csv") {
    io::CsvWriter w({"name", "residual", "tolerance", "pass"});
    for (const auto & r : reps) w.row(r.name, r.residual, r.tolerance, std::string(r.pass ? "true" : "false"));
    return w.str();
  }
  std::string s = run.header().dump() + "\n";
  for (const auto & r : reps) s += verify::to_json(r).dump() + "\n";
  return s;
}

int verify_cmd(const Options & o)
{
  const Run run = load("verify", o);
  std::optional<kernel::KernelParams> params;
  const auto s = io::build_kernel(run.cfg, &params);
  const auto reps = verify::run_suites(s, params ? &*params : nullptr, run.cfg.suites);
  emit(o, reports_text(run, reps, o.format));
  int failed = 0;
  for (const auto & r : reps) failed += r.pass ? 0 : 1;
  std::fprintf(stderr, "%zu checks, %d failed\n", reps.size(), failed);
  return failed ? 1 : 0;
}

int ltable_cmd(const Options & o)
{
  const Run run = load("ltable", o);
  const auto s = io::build_kernel(run.cfg);
  const int n_max = run.cfg.ltable_n_max;
  const auto & js = run.cfg.ltable_js;
  const auto L = kernel::l_table(s, js, n_max);
  if (o.format == "csv") {
    io::CsvWriter w({"n", "j", "re", "im"});
    for (int n = -n_max; n <= n_max; ++n)
      for (std::size_t l = 0; l < js.size(); ++l) {
        const cplx v = L(n, static_cast<int>(l));
        w.row(n, js[l], v.real(), v.imag());
      }
    emit(o, w.str());
    return 0;
  }
  Eigen::MatrixXcd m(2 * n_max + 1, static_cast<Eigen::Index>(js.size()));
  for (int n = -n_max; n <= n_max; ++n)
    for (std::size_t l = 0; l < js.size(); ++l) m(n + n_max, static_cast<Eigen::Index>(l)) = L(n, static_cast<int>(l));
  json doc = {{"type", "swcyl.ltable"}, {"version", io::schema_version}, {"kernel", s.label},
              {"grid", {{"n_min", -n_max}, {"n_max", n_max}, {"j", js}}}, {"layout", "row-major (n, j)"},
              {"values", io::complex_array(m)}, {"run", run.header()}};
  emit(o, doc.dump() + "\n");
  return 0;
}

// "transition:n,m" builds W of |n><m|; anything else is a swcyl.wigner_symbol file.
kernel::WignerSymbol star_operand(const std::string & spec, const std::string & key, const kernel::KernelContext & ctx)
{
  if (spec.empty()) throw io::ConfigError(0, key, "required for the star command");
  const std::string prefix = "transition:";
  if (spec.rfind(prefix, 0) == 0) {
    int n = 0, m = 0;
    char comma = 0;
    std::istringstream in(spec.substr(prefix.size()));
    if (!(in >> n >> comma >> m) || comma != ',' || !in.eof())
      throw io::ConfigError(0, key, "expected 'transition:n,m', got '" + spec + "'");
    const int K = circle::default_interior(ctx.band());
    if (std::abs(n) > K || std::abs(m) > K)
      throw io::ConfigError(0, key, "modes must lie in the interior band |n| <= " + std::to_string(K));
    return kernel::wigner_transform(circle::FourierOperator::transition(ctx.band(), n, m), ctx);
  }
  return io::wigner_symbol_from_json(io::read_json_file(spec));
}

int star_cmd(const Options & o)
{
  const Run run = load("star", o);
  const auto s = io::build_kernel(run.cfg);
  const kernel::KernelContext ctx(s, run.cfg.star_grid, circle::ModeBand(run.cfg.star_N));
  kernel::QuantizeOptions q;
  q.measure = run.cfg.measure.value_or(s.isometry_measure);
  const auto f = star_operand(run.cfg.star_f, "star.f", ctx), g = star_operand(run.cfg.star_g, "star.g", ctx);
  kernel::StarDiagnostics d;
  const auto fg = kernel::star_product(f, g, ctx, q, &d);
  std::fprintf(stderr, "star: discarded %.3e, faithful %s\n", d.discarded, d.faithful ? "yes" : "no");
  if (o.format == "csv") {
    io::CsvWriter w({"alpha", "j", "re", "im"});
    for (int k = 0; k < fg.grid.K; ++k)
      for (int l = 0; l < fg.grid.nj(); ++l) w.row(fg.grid.alpha(k), fg.grid.j(l), fg.values(k, l).real(), fg.values(k, l).imag());
    emit(o, w.str());
    return 0;
  }
  json doc = io::to_json(fg);
  doc["run"] = run.header();
  doc["diagnostics"] = {{"discarded", d.discarded}, {"faithful", d.faithful}};
  emit(o, doc.dump() + "\n");
  return 0;
}

int overlap_cmd(const Options & o)
{
  const Run run = load("overlap", o);
  const auto s = io::build_kernel(run.cfg);
  const CylinderPoint u(run.cfg.overlap_u[0], run.cfg.overlap_u[1]), v(run.cfg.overlap_v[0], run.cfg.overlap_v[1]);
  const auto ov = verify::overlap_trace(s, u, v, circle::ModeBand(run.cfg.N));
  if (o.format == "csv") {
    io::CsvWriter w({"d", "re", "im"});
    for (int d = -ov.D; d <= ov.D; ++d) w.row(d, ov.modes[d + ov.D].real(), ov.modes[d + ov.D].imag());
    emit(o, w.str());
    return 0;
  }
  Eigen::MatrixXcd modes(1, 2 * ov.D + 1);
  for (int d = 0; d < 2 * ov.D + 1; ++d) modes(0, d) = ov.modes[d];
  json doc = {{"type", "swcyl.overlap"}, {"version", io::schema_version}, {"kernel", s.label},
              {"u", verify::point_json(u)}, {"v", verify::point_json(v)}, {"N", run.cfg.N},
              {"value", {ov.value.real(), ov.value.imag()}}, {"tail", ov.tail}, {"converged", ov.converged},
              {"grid", {{"d_min", -ov.D}, {"d_max", ov.D}}}, {"layout", "row-major d"},
              {"values", io::complex_array(modes)}, {"run", run.header()}};
  emit(o, doc.dump() + "\n");
  return 0;
}

double interior_max(const Eigen::MatrixXcd & m, const flat::PhaseGrid & g, double qmax, double pmax)
{
  double e = 0.0;
  for (int i = 0; i < g.G; ++i)
    for (int k = 0; k < g.G; ++k)
      if (std::abs(g.x(i)) <= qmax && std::abs(g.x(k)) <= pmax) e = std::max(e, std::abs(m(i, k)));
  return e;
}

// Flat phase-space checks: q*p - p*q = i, Gaussian round trip and idempotent.
int flat_demo_cmd(const Options & o)
{
  const Run run = load("flat-demo", o);
  using flat::PhaseGridFunction;
  const auto & g = run.cfg.flat_grid;
  g.validate();
  const double Q = g.Q;
  auto plateau = [Q](double p) {
    const double e = 0.625 * Q, w = 0.1 * Q;
    return 0.5 * (std::erf((p + e) / w) - std::erf((p - e) / w));
  };
  const auto q = PhaseGridFunction::sample(g, [&](double x, double p) { return cplx(x * plateau(p)); });
  const auto p = PhaseGridFunction::sample(g, [&](double, double y) { return cplx(y * plateau(y)); });
  const Eigen::MatrixXcd c = flat::moyal_product(q, p).values - flat::moyal_product(p, q).values;
  const double qi = 0.375 * Q, pi_ = 0.25 * Q;
  const auto gauss = PhaseGridFunction::sample(g, [](double x, double y) { return cplx(std::exp(-x * x - y * y)); });
  flat::WeylDiagnostics wd;
  const auto A = flat::weyl_map(gauss, &wd);
  const double rt = (flat::wigner_map(A).values - gauss.values).cwiseAbs().maxCoeff();
  const double idem = (flat::moyal_product(gauss, gauss).values - 0.5 * gauss.values).cwiseAbs().maxCoeff();

  const json grid = {{"Q", g.Q}, {"G", g.G}};
  std::vector<verify::PropertyReport> reps{
      verify::make_report("flat.commutator", interior_max(c.array() - I, g, qi, pi_), 1e-3,
                          {{"grid", grid}, {"interior", {{"q", qi}, {"p", pi_}}}}),
      verify::make_report("flat.round_trip", rt, 1e-3, {{"grid", grid}, {"boundary_mass", wd.boundary_mass}}),
      verify::make_report("flat.gaussian_idempotent", idem, 1e-6, {{"grid", grid}})};
  emit(o, reports_text(run, reps, o.format));
  for (const auto & r : reps)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Stratonovich-Weyl quantization on the E(2) cylinder orbit"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App * sub) {
    sub->add_option("--config", o.config, "key=value run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", o.seed, "overrides run.seed");
  };
  struct Cmd
  {
    const char * name, * help;
    int (*fn)(const Options &);
  };
  const Cmd cmds[] = {{"verify", "run property suites and write reports", verify_cmd},
                      {"ltable", "tabulate L_n(j)", ltable_cmd},
                      {"star", "star product of two Wigner symbols", star_cmd},
                      {"overlap", "overlap trace tr[Omega(u) Omega(v)] and its alpha-modes", overlap_cmd},
                      {"flat-demo", "flat phase-space Moyal checks", flat_demo_cmd}};
  std::vector<std::pair<CLI::App *, const Cmd *>> subs;
  for (const auto & c : cmds) {
    auto * sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    subs.emplace_back(sub, &c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    for (auto [sub, c] : subs)
      if (sub->parsed()) return c->fn(o);
  } catch (const io::ConfigError & e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const io::SchemaError & e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument & e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception & e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
