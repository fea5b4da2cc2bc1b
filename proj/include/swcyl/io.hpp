// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "flat_moyal.hpp"
#include "swkernel.hpp"
#include "symbol.hpp"
#include "verify.hpp"

namespace swcyl::io {

using json = nlohmann::json;

struct SchemaError : Error
{
  using Error::Error;
};

/// Config problem with the offending line (0 when not tied to one) and key.
struct ConfigError : Error
{
  int line = 0;
  std::string field;
  ConfigError(int line_, std::string field_, const std::string & what)
      : Error(format(line_, field_, what)), line(line_), field(std::move(field_))
  {
  }

private:
  static std::string format(int line, const std::string & field, const std::string & what)
  {
    std::ostringstream os;
    os << "config";
    if (line > 0) os << " line " << line;
    if (!field.empty()) os << " [" << field << "]";
    os << ": " << what;
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Numbers and complex arrays

/// Shortest round-trip decimal, independent of the global locale.
inline std::string format_double(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline json complex_array(const Eigen::MatrixXcd & m)
{
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back({m(r, c).real(), m(r, c).imag()});
  return a;
}

inline Eigen::MatrixXcd read_complex_array(const json & a, Eigen::Index rows, Eigen::Index cols, const char * what)
{
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != rows * cols) {
    std::ostringstream os;
    os << what << ": expected " << rows * cols << " [re, im] pairs, got "
       << (a.is_array() ? std::to_string(a.size()) : std::string("a non-array"));
    throw SchemaError(os.str());
  }
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows * cols; ++i) {
    const json & e = a[static_cast<std::size_t>(i)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw SchemaError(std::string(what) + ": entry " + std::to_string(i) + " is not an [re, im] pair");
    m(i / cols, i % cols) = {e[0].get<double>(), e[1].get<double>()};
  }
  return m;
}

inline void require_type(const json & j, const char * type)
{
  if (!j.is_object() || !j.contains("type") || j["type"] != type)
    throw SchemaError(std::string("expected a document of type '") + type + "'");
}

template <class T>
T field(const json & j, const char * key, const char * what)
{
  if (!j.contains(key)) throw SchemaError(std::string(what) + ": missing field '" + key + "'");
  try {
    return j[key].get<T>();
  } catch (const json::exception &) {
    throw SchemaError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

// ---------------------------------------------------------------------------
// Schemas
//
//   swcyl.symbol            {type, version, label, M, samples: [[re, im]] * M}
//   swcyl.wigner_symbol     {type, version, grid: {K, j_max, dj, taper}, layout: "alpha-major",
//                            values: [[re, im]] * (K * nj), index k * nj + l}
//   swcyl.phase_function    {type, version, grid: {Q, G}, layout: "q-major",
//                            values: [[re, im]] * G^2, index i * G + k}
//   swcyl.fourier_operator  {type, version, N, layout: "row-major <m|A|n>", values: (2N+1)^2}

inline constexpr int schema_version = 1;

inline json to_json(const kernel::SymbolFunction & s)
{
  Eigen::MatrixXcd v(1, s.sample_count());
  for (int k = 0; k < s.sample_count(); ++k) v(0, k) = s.a.samples[k];
  return {{"type", "swcyl.symbol"}, {"version", schema_version}, {"label", s.label}, {"M", s.sample_count()},
          {"samples", complex_array(v)}};
}

inline kernel::SymbolFunction symbol_from_json(const json & j)
{
  require_type(j, "swcyl.symbol");
  const int M = field<int>(j, "M", "symbol");
  const Eigen::MatrixXcd v = read_complex_array(j.value("samples", json()), 1, M, "symbol.samples");
  std::vector<cplx> samples(v.data(), v.data() + M);
  return kernel::symbol_from_samples(std::move(samples), j.value("label", std::string("samples")));
}

inline json grid_json(const kernel::CylinderGrid & g)
{
  return {{"K", g.K}, {"j_max", g.j_max}, {"dj", g.dj}, {"taper", g.taper}};
}

inline json to_json(const kernel::WignerSymbol & w)
{
  return {{"type", "swcyl.wigner_symbol"}, {"version", schema_version}, {"grid", grid_json(w.grid)},
          {"layout", "alpha-major"}, {"values", complex_array(w.values)}};
}

inline kernel::WignerSymbol wigner_symbol_from_json(const json & j)
{
  require_type(j, "swcyl.wigner_symbol");
  const json gj = field<json>(j, "grid", "wigner_symbol");
  kernel::CylinderGrid g;
  g.K = field<int>(gj, "K", "wigner_symbol.grid");
  g.j_max = field<double>(gj, "j_max", "wigner_symbol.grid");
  g.dj = field<double>(gj, "dj", "wigner_symbol.grid");
  g.taper = gj.value("taper", g.taper);
  try {
    g.validate();
  } catch (const std::invalid_argument & e) {
    throw SchemaError(std::string("wigner_symbol.grid: ") + e.what());
  }
  kernel::WignerSymbol w(g);
  w.values = read_complex_array(j.value("values", json()), g.K, g.nj(), "wigner_symbol.values");
  return w;
}

inline json to_json(const flat::PhaseGridFunction & f)
{
  return {{"type", "swcyl.phase_function"}, {"version", schema_version},
          {"grid", {{"Q", f.grid.Q}, {"G", f.grid.G}}}, {"layout", "q-major"}, {"values", complex_array(f.values)}};
}

inline flat::PhaseGridFunction phase_function_from_json(const json & j)
{
  require_type(j, "swcyl.phase_function");
  const json gj = field<json>(j, "grid", "phase_function");
  flat::PhaseGrid g{field<double>(gj, "Q", "phase_function.grid"), field<int>(gj, "G", "phase_function.grid")};
  flat::PhaseGridFunction f(g);
  f.values = read_complex_array(j.value("values", json()), g.G, g.G, "phase_function.values");
  return f;
}

inline json to_json(const circle::FourierOperator & a)
{
  return {{"type", "swcyl.fourier_operator"}, {"version", schema_version}, {"N", a.band.N},
          {"layout", "row-major <m|A|n>"}, {"values", complex_array(a.entries)}};
}

inline circle::FourierOperator fourier_operator_from_json(const json & j)
{
  require_type(j, "swcyl.fourier_operator");
  const circle::ModeBand b(field<int>(j, "N", "fourier_operator"));
  return {b, read_complex_array(j.value("values", json()), b.size(), b.size(), "fourier_operator.values")};
}

inline json read_json_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error & e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// CSV: header row, ',' separator, '.' decimal, LF line endings.

class CsvWriter
{
public:
  explicit CsvWriter(std::vector<std::string> header) : cols_(header.size()) { row_strings(header); }

  template <class... T>
  void row(const T &... v)
  {
    std::vector<std::string> cells{cell(v)...};
    if (cells.size() != cols_) throw std::invalid_argument("CsvWriter: row width differs from header");
    row_strings(cells);
  }

  [[nodiscard]] const std::string & str() const { return text_; }

private:
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(const std::string & s) { return s; }
  static std::string cell(const char * s) { return s; }

  void row_strings(const std::vector<std::string> & cells)
  {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }

  std::size_t cols_;
  std::string text_;
};

// ---------------------------------------------------------------------------
// Run configuration: "section.key = value" lines, or "[section]" headers followed
// by "key = value". '#' starts a comment.

class KeyValueFile
{
public:
  struct Entry
  {
    std::string value;
    int line = 0;
    bool used = false;
  };

  static KeyValueFile parse(const std::string & text)
  {
    KeyValueFile kv;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
      const std::string s = trim(raw);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']' || s.size() < 3) throw ConfigError(line, "", "malformed section header '" + s + "'");
        section = trim(s.substr(1, s.size() - 2));
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value', got '" + s + "'");
      std::string key = trim(s.substr(0, eq));
      if (key.empty()) throw ConfigError(line, "", "empty key");
      if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
      if (kv.entries_.count(key))
        throw ConfigError(line, key, "duplicate key (first set on line " + std::to_string(kv.entries_[key].line) + ")");
      kv.entries_[key] = {trim(s.substr(eq + 1)), line, false};
    }
    return kv;
  }

  static KeyValueFile load(const std::string & path)
  {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  [[nodiscard]] bool has(const std::string & key) const { return entries_.count(key) > 0; }

  std::optional<std::string> text(const std::string & key)
  {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
  }

  template <class T>
  std::optional<T> get(const std::string & key)
  {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return convert<T>(it->second.value, it->second.line, key);
  }

  std::vector<double> list(const std::string & key)
  {
    std::vector<double> out;
    auto it = entries_.find(key);
    if (it == entries_.end()) return out;
    it->second.used = true;
    std::string item;
    std::istringstream in(it->second.value);
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(convert<double>(item, it->second.line, key));
    }
    return out;
  }

  [[nodiscard]] int line_of(const std::string & key) const
  {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  /// Keys that were never read: almost always a typo.
  [[nodiscard]] std::vector<std::string> unused() const
  {
    std::vector<std::string> out;
    for (const auto & [k, e] : entries_)
      if (!e.used) out.push_back(k);
    return out;
  }

private:
  static std::string trim(const std::string & s)
  {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  template <class T>
  static T convert(const std::string & v, int line, const std::string & key)
  {
    T out{};
    const char * end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end)
      throw ConfigError(line, key, "cannot parse '" + v + "' as " + (std::is_integral_v<T> ? "an integer" : "a number"));
    return out;
  }

  std::map<std::string, Entry> entries_;
};

/// Kernel selection: a builtin name, Fourier coefficients of (h, phi), or a samples file.
struct KernelSpec
{
  std::string builtin = "sqrt-cos";
  std::vector<double> h_cos, h_sin, phi_cos, phi_sin;
  bool fourier = false;
  std::string samples_path;
};

struct RunConfig
{
  KernelSpec kernel_spec;
  int N = 64;
  int M = 1024;
  kernel::CylinderGrid grid{512, 40.0, 0.05, 0.2};
  double r = 1.0;
  std::optional<double> measure;  // unset: the symbol's isometry constant
  std::uint64_t seed = 20260101;
  double point_j_max = 5.0;       // largest |j| used by point-evaluation suites

  verify::SuiteConfig suites;

  int ltable_n_max = 16;
  std::vector<double> ltable_js;
  std::string star_f, star_g;
  kernel::CylinderGrid star_grid{128, 40.0, 0.05, 0.2};
  int star_N = 16;
  std::array<double, 2> overlap_u{0.0, 0.0}, overlap_v{0.0, 0.5};
  flat::PhaseGrid flat_grid;

  /// Resolved config as flat key/value pairs, echoed into report headers.
  [[nodiscard]] json echo() const
  {
    json j;
    if (!kernel_spec.samples_path.empty()) {
      j["kernel.samples"] = kernel_spec.samples_path;
    } else if (kernel_spec.fourier) {
      j["kernel.h_cos"] = kernel_spec.h_cos;
      j["kernel.h_sin"] = kernel_spec.h_sin;
      j["kernel.phi_cos"] = kernel_spec.phi_cos;
      j["kernel.phi_sin"] = kernel_spec.phi_sin;
    } else {
      j["kernel.builtin"] = kernel_spec.builtin;
    }
    j["band.N"] = N;
    j["circle.M"] = M;
    j["grid.K"] = grid.K;
    j["grid.j_max"] = grid.j_max;
    j["grid.dj"] = grid.dj;
    j["grid.taper"] = grid.taper;
    j["orbit.r"] = r;
    j["measure.c"] = measure ? json(*measure) : json("auto");
    j["run.seed"] = seed;
    j["verify.suites"] = suites.suites;
    j["verify.covariance_cases"] = suites.covariance_cases;
    j["verify.injectivity_pairs"] = suites.injectivity_pairs;
    j["verify.recurrence_N"] = suites.recurrence_N;
    j["verify.j_range"] = point_j_max;
    j["tol.covariance"] = suites.tol_covariance;
    j["tol.infinitesimal"] = suites.tol_infinitesimal;
    j["tol.hermiticity"] = suites.tol_hermiticity;
    j["tol.trace"] = suites.tol_trace;
    j["tol.traciality"] = suites.tol_traciality;
    j["tol.recurrence"] = suites.tol_recurrence;
    j["ltable.n_max"] = ltable_n_max;
    j["ltable.j"] = ltable_js;
    j["star.f"] = star_f;
    j["star.g"] = star_g;
    j["star.N"] = star_N;
    j["star.K"] = star_grid.K;
    j["star.j_max"] = star_grid.j_max;
    j["star.dj"] = star_grid.dj;
    j["overlap.u"] = overlap_u;
    j["overlap.v"] = overlap_v;
    j["flat.Q"] = flat_grid.Q;
    j["flat.G"] = flat_grid.G;
    return j;
  }
};

namespace detail {

inline std::vector<std::string> split_names(const std::string & s)
{
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

inline void positive(double v, int line, const std::string & key)
{
  if (!(v > 0.0)) throw ConfigError(line, key, "must be positive, got " + format_double(v));
}

}  // namespace detail

inline RunConfig parse_config(KeyValueFile kv)
{
  RunConfig c;
  auto ln = [&](const std::string & k) { return kv.line_of(k); };

  if (auto v = kv.text("kernel.builtin")) c.kernel_spec.builtin = *v;
  for (auto [key, dst] : {std::pair{"kernel.h_cos", &c.kernel_spec.h_cos}, std::pair{"kernel.h_sin", &c.kernel_spec.h_sin},
                          std::pair{"kernel.phi_cos", &c.kernel_spec.phi_cos}, std::pair{"kernel.phi_sin", &c.kernel_spec.phi_sin}}) {
    if (kv.has(key)) {
      *dst = kv.list(key);
      c.kernel_spec.fourier = true;
    }
  }
  if (auto v = kv.text("kernel.samples")) c.kernel_spec.samples_path = *v;
  const int sources = (kv.has("kernel.builtin") ? 1 : 0) + (c.kernel_spec.fourier ? 1 : 0) + (c.kernel_spec.samples_path.empty() ? 0 : 1);
  if (sources > 1) throw ConfigError(0, "kernel", "set only one of kernel.builtin, kernel.{h,phi}_{cos,sin}, kernel.samples");
  if (!c.kernel_spec.fourier && c.kernel_spec.samples_path.empty()) {
    const auto names = kernel::builtin::names();
    if (std::find(names.begin(), names.end(), c.kernel_spec.builtin) == names.end())
      throw ConfigError(ln("kernel.builtin"), "kernel.builtin", "unknown builtin '" + c.kernel_spec.builtin + "'");
  }

  if (auto v = kv.get<int>("band.N")) c.N = *v;
  if (c.N < 1) throw ConfigError(ln("band.N"), "band.N", "must be >= 1");
  if (auto v = kv.get<int>("circle.M")) c.M = *v;
  if (c.M < 8) throw ConfigError(ln("circle.M"), "circle.M", "must be >= 8");
  if (auto v = kv.get<int>("grid.K")) c.grid.K = *v;
  if (c.grid.K < 1) throw ConfigError(ln("grid.K"), "grid.K", "must be >= 1");
  if (auto v = kv.get<double>("grid.j_max")) c.grid.j_max = *v;
  detail::positive(c.grid.j_max, ln("grid.j_max"), "grid.j_max");
  if (auto v = kv.get<double>("grid.dj")) c.grid.dj = *v;
  detail::positive(c.grid.dj, ln("grid.dj"), "grid.dj");
  if (auto v = kv.get<double>("grid.taper")) c.grid.taper = *v;
  try {
    c.grid.validate();
  } catch (const std::invalid_argument & e) {
    throw ConfigError(ln("grid.dj"), "grid", e.what());
  }
  if (auto v = kv.get<double>("orbit.r")) c.r = *v;
  detail::positive(c.r, ln("orbit.r"), "orbit.r");
  if (auto v = kv.text("measure.c"); v && *v != "auto") {
    c.measure = kv.get<double>("measure.c");
    detail::positive(*c.measure, ln("measure.c"), "measure.c");
  }
  if (auto v = kv.get<std::uint64_t>("run.seed")) c.seed = *v;

  if (auto v = kv.text("verify.suites")) c.suites.suites = detail::split_names(*v);
  for (const auto & s : c.suites.suites) {
    static const std::vector<std::string> known{"covariance", "hermiticity", "trace", "traciality", "injectivity", "recurrence"};
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw ConfigError(ln("verify.suites"), "verify.suites", "unknown suite '" + s + "'");
  }
  if (auto v = kv.get<int>("verify.covariance_cases")) c.suites.covariance_cases = *v;
  if (auto v = kv.get<int>("verify.injectivity_pairs")) c.suites.injectivity_pairs = *v;
  if (auto v = kv.get<int>("verify.recurrence_N")) c.suites.recurrence_N = *v;
  if (c.suites.recurrence_N < 2) throw ConfigError(ln("verify.recurrence_N"), "verify.recurrence_N", "must be >= 2");
  if (auto v = kv.get<double>("verify.j_range")) c.point_j_max = *v;
  detail::positive(c.point_j_max, ln("verify.j_range"), "verify.j_range");
  for (auto [key, dst] : {std::pair{"tol.covariance", &c.suites.tol_covariance},
                          std::pair{"tol.infinitesimal", &c.suites.tol_infinitesimal},
                          std::pair{"tol.hermiticity", &c.suites.tol_hermiticity},
                          std::pair{"tol.trace", &c.suites.tol_trace},
                          std::pair{"tol.traciality", &c.suites.tol_traciality},
                          std::pair{"tol.recurrence", &c.suites.tol_recurrence}}) {
    if (auto v = kv.get<double>(key)) {
      detail::positive(*v, ln(key), key);
      *dst = *v;
    }
  }
  // Point evaluations of Omega(u) at |j| <= j_range need the band to resolve L_{m+n}(j).
  if (c.N < kernel::required_band(c.point_j_max))
    throw ConfigError(ln("band.N"), "band.N",
                      "N = " + std::to_string(c.N) + " is below the requirement " +
                          std::to_string(kernel::required_band(c.point_j_max)) + " for verify.j_range = " +
                          format_double(c.point_j_max));

  if (auto v = kv.get<int>("ltable.n_max")) c.ltable_n_max = *v;
  if (c.ltable_n_max < 0) throw ConfigError(ln("ltable.n_max"), "ltable.n_max", "must be >= 0");
  c.ltable_js = kv.list("ltable.j");
  if (c.ltable_js.empty())
    for (int i = 0; i <= 100; ++i) c.ltable_js.push_back(-5.0 + 0.1 * i);

  if (auto v = kv.text("star.f")) c.star_f = *v;
  if (auto v = kv.text("star.g")) c.star_g = *v;
  if (auto v = kv.get<int>("star.N")) c.star_N = *v;
  if (c.star_N < 1) throw ConfigError(ln("star.N"), "star.N", "must be >= 1");
  if (auto v = kv.get<int>("star.K")) c.star_grid.K = *v;
  if (auto v = kv.get<double>("star.j_max")) c.star_grid.j_max = *v;
  if (auto v = kv.get<double>("star.dj")) c.star_grid.dj = *v;
  try {
    c.star_grid.validate();
  } catch (const std::invalid_argument & e) {
    throw ConfigError(ln("star.dj"), "star", e.what());
  }

  for (auto [key, dst] : {std::pair{"overlap.u", &c.overlap_u}, std::pair{"overlap.v", &c.overlap_v}}) {
    if (!kv.has(key)) continue;
    const auto xs = kv.list(key);
    if (xs.size() != 2) throw ConfigError(ln(key), key, "expected 'alpha, j'");
    *dst = {xs[0], xs[1]};
  }

  if (auto v = kv.get<double>("flat.Q")) c.flat_grid.Q = *v;
  detail::positive(c.flat_grid.Q, ln("flat.Q"), "flat.Q");
  if (auto v = kv.get<int>("flat.G")) c.flat_grid.G = *v;
  if (c.flat_grid.G < 16) throw ConfigError(ln("flat.G"), "flat.G", "must be >= 16");

  if (const auto u = kv.unused(); !u.empty()) throw ConfigError(ln(u.front()), u.front(), "unknown key");

  c.suites.band = circle::ModeBand(c.N);
  c.suites.r = c.r;
  c.suites.grid = c.grid;
  c.suites.measure = c.measure;
  c.suites.seed = c.seed;
  return c;
}

inline RunConfig load_config(const std::string & path) { return parse_config(KeyValueFile::load(path)); }

/// Samples file: one "re im" or "re,im" pair per line, '#' comments.
inline std::vector<cplx> read_samples(const std::string & path)
{
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open samples file '" + path + "'");
  std::vector<cplx> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    for (char & ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) continue;
    if (!(ls >> im)) im = 0.0;
    out.emplace_back(re, im);
  }
  if (out.empty()) throw SchemaError("samples file '" + path + "' holds no values");
  return out;
}

inline kernel::SymbolFunction build_kernel(const RunConfig & c, std::optional<kernel::KernelParams> * params = nullptr)
{
  kernel::SymbolOptions opt;
  opt.M = c.M;
  if (!c.kernel_spec.samples_path.empty()) return kernel::symbol_from_samples(read_samples(c.kernel_spec.samples_path), "samples");
  if (c.kernel_spec.fourier) {
    auto p = kernel::KernelParams::from_fourier(c.kernel_spec.h_cos, c.kernel_spec.h_sin, c.kernel_spec.phi_cos, c.kernel_spec.phi_sin);
    if (params) *params = p;
    return kernel::build_symbol(p, opt);
  }
  if (params) *params = kernel::builtin::params_by_name(c.kernel_spec.builtin);
  return kernel::builtin::by_name(c.kernel_spec.builtin, opt);
}

}  // namespace swcyl::io
