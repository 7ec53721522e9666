#include "dicke/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dicke/ed.hpp"
#include "dicke/errors.hpp"
#include "dicke/fermion_map.hpp"
#include "dicke/matsubara.hpp"
#include "dicke/spectrum.hpp"
#include "dicke/thermo.hpp"

namespace dicke {

namespace {

const std::vector<std::pair<std::string_view, Command>> kCommands{
    {"critical-temp", Command::CriticalTemp},   {"phase-diagram", Command::PhaseDiagram},
    {"spectrum", Command::Spectrum},            {"partition-ratio", Command::PartitionRatio},
    {"order-parameter", Command::OrderParameter}, {"ed-curve", Command::EdCurve},
    {"validate", Command::Validate},
};

const std::vector<std::string> kSuites{"default", "trace-identity", "kernel-sums", "goldstone",
                                       "critical-beta"};

const std::vector<std::string> kValueKeys{"omega0", "Omega",  "g1",     "g2",      "beta",
                                          "beta-grid", "output", "format", "cutoff", "pole-eps",
                                          "N-list", "ed-tol", "workers"};

// Raw values of one configuration source, keyed by long option name.
struct Source {
  std::map<std::string, std::string> values;
  std::vector<std::string> sweeps;
  bool at_critical = false;
  bool has_at_critical = false;
  std::vector<std::string> positionals;
};

ConfigError key_error(std::string_view key, std::string_view message) {
  return ConfigError(fmt::format("{}: {}", key, message));
}

double parse_double(std::string_view key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw key_error(key, fmt::format("expected a finite number, got '{}'", text));
  }
  return v;
}

long parse_long(std::string_view key, const std::string& text) {
  long v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw key_error(key, fmt::format("expected an integer, got '{}'", text));
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

CLI::App& define_options(CLI::App& app, Source& src, bool with_positionals) {
  app.set_help_flag();
  app.allow_config_extras(CLI::config_extras_mode::error);
  for (const std::string& key : kValueKeys) {
    app.add_option("--" + key, src.values[key]);
  }
  app.add_option("--sweep", src.sweeps)->expected(1, 2);
  app.add_flag("--at-critical", src.at_critical);
  if (with_positionals) app.add_option("command", src.positionals)->expected(0, 2);
  return app;
}

void collect_given(CLI::App& app, Source& src) {
  for (auto it = src.values.begin(); it != src.values.end();) {
    if (app.count("--" + it->first) == 0) {
      it = src.values.erase(it);
    } else {
      ++it;
    }
  }
  src.has_at_critical = app.count("--at-critical") > 0;
}

Source parse_args(const std::vector<std::string>& args) {
  Source src;
  CLI::App app{"dicke"};
  define_options(app, src, true);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  collect_given(app, src);
  return src;
}

Source parse_file(const std::string& text) {
  Source src;
  CLI::App app{"dicke"};
  define_options(app, src, false);
  std::istringstream in(text);
  try {
    app.parse_from_stream(in);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(fmt::format("config file: {}", e.what()));
  }
  collect_given(app, src);
  return src;
}

void check_beta_exclusive(const Source& src, std::string_view where) {
  if (src.values.count("beta") && src.values.count("beta-grid")) {
    throw ConfigError(fmt::format("beta-grid: conflicts with beta{}", where));
  }
}

ModelParams params_or_throw(std::string_view key, double omega0, double Omega, double g1, double g2) {
  try {
    return ModelParams(omega0, Omega, g1, g2);
  } catch (const std::invalid_argument& e) {
    throw key_error(key, e.what());
  }
}

ModelParams base_params(const RunConfig& c) { return ModelParams(c.omega0, c.Omega, c.g1, c.g2); }

struct Point {
  ModelParams params;
  std::optional<double> beta;
};

std::vector<Point> expand(const RunConfig& c) {
  std::vector<Point> points{{base_params(c), c.beta}};
  std::vector<SweepSpec> axes = c.sweeps;
  if (c.beta_grid) axes.push_back(*c.beta_grid);
  for (const SweepSpec& axis : axes) {
    std::vector<Point> next;
    for (const Point& p : points) {
      for (double v : axis.points()) {
        if (axis.variable == "beta") {
          next.push_back({p.params, v});
        } else {
          next.push_back({p.params.with(axis.variable, v), p.beta});
        }
      }
    }
    points = std::move(next);
  }
  return points;
}

std::vector<Cell> param_cells(const ModelParams& p) {
  return {p.omega0(), p.Omega(), p.g1(), p.g2()};
}

std::vector<std::string> with_param_columns(std::vector<std::string> tail) {
  std::vector<std::string> cols{"omega0", "Omega", "g1", "g2"};
  cols.insert(cols.end(), tail.begin(), tail.end());
  return cols;
}

void append(std::vector<Cell>& row, std::vector<Cell> more) {
  row.insert(row.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

Cell optional_cell(const std::optional<double>& v) {
  return v ? Cell{*v} : Cell{};
}

double require_point_beta(const Point& p) {
  if (!p.beta) throw std::logic_error("beta missing after configuration check");
  return *p.beta;
}

Table critical_temp_table(const RunConfig& c) {
  Table t{with_param_columns({"beta_c", "temperature_c", "quantum_critical_gap", "ground_phase"})};
  for (const Point& p : expand(c)) {
    const auto bc = critical_beta(p.params);
    const double gap = quantum_critical_gap(p.params);
    const std::string phase = std::abs(gap) < 1e-12 ? "critical" : gap > 0.0 ? "superradiant" : "normal";
    std::vector<Cell> row = param_cells(p.params);
    append(row, {optional_cell(bc), bc ? Cell{1.0 / *bc} : Cell{}, gap, phase});
    t.add_row(std::move(row));
  }
  return t;
}

Table phase_diagram_table(const RunConfig& c) {
  const std::vector<Point> points = expand(c);
  std::vector<ModelParams> params;
  std::vector<double> betas;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (const Point& p : points) {
    auto pi = std::find(params.begin(), params.end(), p.params);
    if (pi == params.end()) pi = params.insert(params.end(), p.params);
    const double beta = require_point_beta(p);
    auto bi = std::find(betas.begin(), betas.end(), beta);
    if (bi == betas.end()) bi = betas.insert(betas.end(), beta);
    index.emplace_back(pi - params.begin(), bi - betas.begin());
  }
  const std::vector<PhasePoint> scan = phase_scan(params, betas, c.workers, {c.cutoff, 1e-10});
  Table t{with_param_columns({"beta", "bound", "phase", "beta_c", "rho", "a0", "c0", "error"})};
  for (const auto& [pi, bi] : index) {
    const PhasePoint& pt = scan[pi * betas.size() + bi];
    std::vector<Cell> row = param_cells(pt.params);
    if (!pt.error.empty()) {
      append(row, {pt.beta, Cell{}, std::string("error"), optional_cell(critical_beta(pt.params)),
                   Cell{}, Cell{}, Cell{}, pt.error});
    } else {
      append(row, {pt.beta, pt.bound, std::string(to_string(pt.phase)), optional_cell(pt.beta_c),
                   pt.rho, pt.a0, pt.c0, std::string()});
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table spectrum_table(const RunConfig& c) {
  Table t{with_param_columns({"beta", "roots", "residuals", "labels", "multiplicities", "brackets",
                              "empty_intervals"})};
  SpectrumOptions opts;
  opts.pole_eps = c.pole_eps;
  for (const Point& p : expand(c)) {
    double beta = 0.0;
    if (c.at_critical) {
      const auto bc = critical_beta(p.params);
      if (!bc) {
        throw DomainError(fmt::format("no finite critical temperature for g1 = {:.17g}, g2 = {:.17g}",
                                      p.params.g1(), p.params.g2()));
      }
      beta = *bc;
    } else {
      beta = require_point_beta(p);
    }
    const SpectrumResult r = collective_modes(p.params, beta, opts);
    std::vector<double> residuals, mult, brackets;
    std::vector<std::string> labels;
    for (const ModeRoot& m : r.roots) {
      residuals.push_back(m.residual);
      mult.push_back(m.multiplicity);
      brackets.push_back(m.bracket.lo);
      brackets.push_back(m.bracket.hi);
      labels.push_back(m.at_pole ? m.label + " (at pole)" : m.label);
    }
    long empty = 0;
    for (const IntervalScan& s : r.intervals) empty += s.roots == 0 ? 1 : 0;
    std::vector<Cell> row = param_cells(p.params);
    append(row, {beta, r.energies(), residuals, labels, mult, brackets, empty});
    t.add_row(std::move(row));
  }
  return t;
}

Table partition_ratio_table(const RunConfig& c) {
  Table t{with_param_columns({"beta", "bound", "log_ratio", "extrapolation_error", "converged"})};
  for (const Point& p : expand(c)) {
    const double beta = require_point_beta(p);
    const SeriesEstimate s = log_partition_ratio(p.params, beta, {c.cutoff, 1e-10});
    std::vector<Cell> row = param_cells(p.params);
    append(row, {beta, convergence_bound(p.params, beta), s.value, s.extrapolation_error, s.converged});
    t.add_row(std::move(row));
  }
  return t;
}

Table order_parameter_table(const RunConfig& c) {
  Table t{with_param_columns({"beta", "bound", "phase", "rho", "gap", "slope_residual"})};
  for (const Point& p : expand(c)) {
    const double beta = require_point_beta(p);
    const double bound = convergence_bound(p.params, beta);
    const OrderParameter op = solve_order_parameter(p.params, beta, {c.cutoff, 1e-10});
    std::vector<Cell> row = param_cells(p.params);
    append(row, {beta, bound, std::string(to_string(classify_bound(bound))), op.rho,
                 op.rho > 0.0 ? Cell{op.gap} : Cell{}, op.slope_residual});
    t.add_row(std::move(row));
  }
  return t;
}

Table ed_curve_table(const RunConfig& c) {
  Table t{with_param_columns({"beta", "N", "n_max", "photons_per_atom", "truncation_error"})};
  TruncationPolicy policy;
  policy.tolerance = c.ed_tol;
  for (const Point& p : expand(c)) {
    const double beta = require_point_beta(p);
    for (const PhotonDensityRow& r : photon_density_curve(p.params, beta, c.atom_counts, policy)) {
      std::vector<Cell> row = param_cells(p.params);
      append(row, {beta, static_cast<long>(r.atoms), static_cast<long>(r.n_max), r.density,
                   r.truncation_error});
      t.add_row(std::move(row));
    }
  }
  return t;
}

void add_check(Table& t, const std::string& suite, const std::string& check, double residual,
               double tolerance) {
  t.add_row({suite, check, residual, tolerance, std::isfinite(residual) && residual < tolerance});
}

void validate_trace_identity(Table& t) {
  const std::vector<std::pair<double, double>> couplings{{0.0, 0.0}, {0.4, 0.0}, {0.0, 0.4}, {0.4, 0.3}};
  for (int atoms : {1, 2}) {
    for (int n_max : {4, 8}) {
      for (double beta : {0.5, 1.0, 2.0, 5.0}) {
        for (const auto& [g1, g2] : couplings) {
          const double r = verify_trace_identity(ModelParams(1.0, 1.0, g1, g2), atoms, n_max, beta);
          add_check(t, "trace-identity",
                    fmt::format("N={} n_max={} beta={} g1={} g2={}", atoms, n_max, beta, g1, g2), r, 1e-8);
        }
      }
    }
  }
}

void validate_kernel_sums(Table& t, long cutoff) {
  const std::vector<std::pair<ModelParams, double>> cases{
      {ModelParams(1.0, 1.0, 1.0, 0.0), 4.0}, {ModelParams(1.0, 1.0, 0.6, 0.3), 1.0},
      {ModelParams(2.0, 0.5, 0.7, 1.1), 7.0}, {ModelParams(0.5, 3.0, 0.2, 0.9), 0.3}};
  for (const auto& [p, beta] : cases) {
    const KernelSums k = a0_c0_sum(0, p, beta, {cutoff, 1e-12});
    const double exact = convergence_bound(p, beta);
    add_check(t, "kernel-sums",
              fmt::format("a0+2c0 omega0={} Omega={} g1={} g2={} beta={}", p.omega0(), p.Omega(),
                          p.g1(), p.g2(), beta),
              std::abs(k.a0.value + 2.0 * k.c0.value - exact) / exact, 1e-8);
    const double x = 0.5 * p.Omega();
    const double s = lorentzian_sum(x, beta, {cutoff, 1e-12}).value;
    const double e = lorentzian_sum_exact(x, beta);
    add_check(t, "kernel-sums", fmt::format("fermionic sum Omega={} beta={}", p.Omega(), beta),
              std::abs(s - e) / e, 1e-10);
  }
}

const std::vector<ModelParams>& supercritical_cases() {
  static const std::vector<ModelParams> cases{
      ModelParams(1.0, 1.0, 1.2, 0.0), ModelParams(2.0, 1.0, 0.0, 2.0), ModelParams(1.0, 1.0, 0.8, 0.8),
      ModelParams(0.7, 1.3, 0.9, 0.4), ModelParams(1.5, 0.6, 0.3, 1.4)};
  return cases;
}

void validate_goldstone(Table& t) {
  for (const ModelParams& p : supercritical_cases()) {
    add_check(t, "goldstone",
              fmt::format("omega0={} Omega={} g1={} g2={}", p.omega0(), p.Omega(), p.g1(), p.g2()),
              std::abs(goldstone_residual(p)), 1e-10);
  }
}

void validate_critical_beta(Table& t, long cutoff) {
  for (const ModelParams& p : supercritical_cases()) {
    const double closed = *critical_beta(p);
    const auto numeric = critical_beta_from_sums(p, {cutoff, 1e-12});
    const double r = numeric ? std::abs(*numeric - closed) / closed : INFINITY;
    add_check(t, "critical-beta",
              fmt::format("omega0={} Omega={} g1={} g2={}", p.omega0(), p.Omega(), p.g1(), p.g2()), r,
              1e-8);
  }
}

Table validate_table(const RunConfig& c) {
  Table t{{"suite", "check", "residual", "tolerance", "pass"}};
  const bool all = c.suite == "default";
  if (all || c.suite == "trace-identity") validate_trace_identity(t);
  if (all || c.suite == "kernel-sums") validate_kernel_sums(t, c.cutoff);
  if (all || c.suite == "goldstone") validate_goldstone(t);
  if (all || c.suite == "critical-beta") validate_critical_beta(t, c.cutoff);
  return t;
}

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [name, cmd] : kCommands) {
    if (cmd == command) return name;
  }
  return "unknown";
}

std::vector<double> SweepSpec::points() const {
  std::vector<double> out;
  for (int k = 0; k <= steps; ++k) {
    const double f = static_cast<double>(k) / steps;
    double v = log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                   : start + f * (stop - start);
    if (k == 0) v = start;
    if (k == steps) v = stop;
    out.push_back(v);
  }
  return out;
}

SweepSpec parse_sweep(const std::string& text, bool with_variable) {
  const std::string_view key = with_variable ? "sweep" : "beta-grid";
  const std::vector<std::string> parts = split(text, ':');
  const std::size_t offset = with_variable ? 1 : 0;
  if (parts.size() != offset + 3 && parts.size() != offset + 4) {
    throw key_error(key, fmt::format("expected {}start:stop:steps[:log], got '{}'",
                                     with_variable ? "var:" : "", text));
  }
  SweepSpec s;
  s.variable = with_variable ? parts[0] : "beta";
  static const std::vector<std::string> allowed{"g1", "g2", "beta", "omega0", "Omega"};
  if (std::find(allowed.begin(), allowed.end(), s.variable) == allowed.end()) {
    throw key_error(key, fmt::format("variable '{}' not one of g1, g2, beta, omega0, Omega", s.variable));
  }
  s.start = parse_double(key, parts[offset]);
  s.stop = parse_double(key, parts[offset + 1]);
  const long steps = parse_long(key, parts[offset + 2]);
  if (steps < 1 || steps > 100000) throw key_error(key, "steps must be in [1, 100000]");
  s.steps = static_cast<int>(steps);
  if (parts.size() == offset + 4) {
    if (parts[offset + 3] != "log" && parts[offset + 3] != "linear") {
      throw key_error(key, fmt::format("spacing must be 'log' or 'linear', got '{}'", parts[offset + 3]));
    }
    s.log = parts[offset + 3] == "log";
  }
  if (s.start > s.stop) throw key_error(key, "start must be <= stop");
  if (s.log && !(s.start > 0.0)) throw key_error(key, "log spacing needs start > 0");
  return s;
}

RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::string>& file_text,
                       const std::optional<std::string>& workers_env) {
  const Source cli = parse_args(args);
  const Source file = file_text ? parse_file(*file_text) : Source{};
  check_beta_exclusive(cli, "");
  check_beta_exclusive(file, " in config file");

  std::map<std::string, std::string> merged = file.values;
  if (cli.values.count("beta") || cli.values.count("beta-grid")) {
    merged.erase("beta");
    merged.erase("beta-grid");
  }
  for (const auto& [k, v] : cli.values) merged[k] = v;

  RunConfig c;
  if (cli.positionals.empty()) throw ConfigError("command: missing (one of critical-temp, phase-diagram, "
                                                 "spectrum, partition-ratio, order-parameter, ed-curve, validate)");
  const auto cmd = std::find_if(kCommands.begin(), kCommands.end(),
                                [&](const auto& e) { return e.first == cli.positionals[0]; });
  if (cmd == kCommands.end()) throw key_error("command", fmt::format("unknown command '{}'", cli.positionals[0]));
  c.command = cmd->second;
  if (cli.positionals.size() > 1) {
    if (c.command != Command::Validate) {
      throw key_error("command", fmt::format("unexpected argument '{}'", cli.positionals[1]));
    }
    if (std::find(kSuites.begin(), kSuites.end(), cli.positionals[1]) == kSuites.end()) {
      throw key_error("suite", fmt::format("unknown validation suite '{}'", cli.positionals[1]));
    }
    c.suite = cli.positionals[1];
  }

  auto get = [&](const std::string& key) -> const std::string* {
    auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };
  if (auto v = get("omega0")) c.omega0 = parse_double("omega0", *v);
  if (auto v = get("Omega")) c.Omega = parse_double("Omega", *v);
  if (auto v = get("g1")) c.g1 = parse_double("g1", *v);
  if (auto v = get("g2")) c.g2 = parse_double("g2", *v);
  for (const char* key : {"omega0", "Omega", "g1", "g2"}) {
    if (get(key)) params_or_throw(key, c.omega0, c.Omega, c.g1, c.g2);
  }
  params_or_throw("omega0", c.omega0, c.Omega, c.g1, c.g2);
  if (auto v = get("beta")) {
    c.beta = parse_double("beta", *v);
    if (!(*c.beta > 0.0)) throw key_error("beta", "must be > 0");
  }
  if (auto v = get("beta-grid")) {
    c.beta_grid = parse_sweep(*v, false);
    if (!(c.beta_grid->start > 0.0)) throw key_error("beta-grid", "start must be > 0");
  }

  const std::vector<std::string>& sweep_text = cli.sweeps.empty() ? file.sweeps : cli.sweeps;
  if (sweep_text.size() > 2) throw key_error("sweep", "at most two sweep variables");
  for (const std::string& s : sweep_text) {
    SweepSpec spec = parse_sweep(s);
    for (const SweepSpec& other : c.sweeps) {
      if (other.variable == spec.variable) throw key_error("sweep", fmt::format("variable '{}' repeated", spec.variable));
    }
    if (spec.variable == "beta") {
      if (c.beta || c.beta_grid) throw key_error("sweep", "beta sweep conflicts with beta / beta-grid");
      if (!(spec.start > 0.0)) throw key_error("sweep", "beta sweep needs start > 0");
    } else {
      for (double v : {spec.start, spec.stop}) {
        const RunConfig probe = c;
        const ModelParams base(probe.omega0, probe.Omega, probe.g1, probe.g2);
        try {
          (void)base.with(spec.variable, v);
        } catch (const std::invalid_argument& e) {
          throw key_error("sweep", e.what());
        }
      }
    }
    c.sweeps.push_back(spec);
  }

  c.at_critical = cli.has_at_critical ? cli.at_critical : file.at_critical;
  if (auto v = get("output")) c.output = *v;
  if (auto v = get("format")) {
    if (*v == "csv") {
      c.format = Format::Csv;
    } else if (*v == "json") {
      c.format = Format::Json;
    } else {
      throw key_error("format", fmt::format("expected csv or json, got '{}'", *v));
    }
  }
  if (auto v = get("cutoff")) {
    c.cutoff = parse_long("cutoff", *v);
    if (c.cutoff < 10 || c.cutoff > 10000000) throw key_error("cutoff", "must be in [10, 1e7]");
  }
  if (auto v = get("pole-eps")) {
    c.pole_eps = parse_double("pole-eps", *v);
    if (!(c.pole_eps > 0.0)) throw key_error("pole-eps", "must be > 0");
  }
  if (auto v = get("N-list")) {
    c.atom_counts.clear();
    for (const std::string& part : split(*v, ',')) {
      const long n = parse_long("N-list", part);
      if (n < 1 || n > 8) throw key_error("N-list", "atom counts must be in [1, 8]");
      c.atom_counts.push_back(static_cast<int>(n));
    }
    if (c.atom_counts.empty()) throw key_error("N-list", "empty list");
  }
  if (auto v = get("ed-tol")) {
    c.ed_tol = parse_double("ed-tol", *v);
    if (!(c.ed_tol > 0.0)) throw key_error("ed-tol", "must be > 0");
  }
  if (auto v = get("workers")) {
    c.workers = static_cast<int>(parse_long("workers", *v));
  } else if (workers_env) {
    c.workers = static_cast<int>(parse_long("DICKE_WORKERS", *workers_env));
  }
  if (c.workers < 1 || c.workers > 1024) throw key_error("workers", "must be in [1, 1024]");

  const bool beta_swept = std::any_of(c.sweeps.begin(), c.sweeps.end(),
                                      [](const SweepSpec& s) { return s.variable == "beta"; });
  const bool has_beta = c.beta || c.beta_grid || beta_swept;
  if (c.at_critical && c.command != Command::Spectrum) {
    throw key_error("at-critical", "only valid for the spectrum command");
  }
  if (c.at_critical && has_beta) throw key_error("at-critical", "conflicts with beta / beta-grid");
  const bool needs_beta = c.command == Command::PhaseDiagram || c.command == Command::PartitionRatio ||
                          c.command == Command::OrderParameter || c.command == Command::EdCurve ||
                          (c.command == Command::Spectrum && !c.at_critical);
  if (needs_beta && !has_beta) {
    throw key_error("beta", fmt::format("required for {} (or use --beta-grid)", to_string(c.command)));
  }
  if (c.command == Command::Spectrum && c.g1 + c.g2 <= 0.0 && c.sweeps.empty()) {
    throw key_error("g1", "spectrum needs g1 + g2 > 0");
  }
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Table table;
  try {
    switch (config.command) {
      case Command::CriticalTemp: table = critical_temp_table(config); break;
      case Command::PhaseDiagram: table = phase_diagram_table(config); break;
      case Command::Spectrum: table = spectrum_table(config); break;
      case Command::PartitionRatio: table = partition_ratio_table(config); break;
      case Command::OrderParameter: table = order_parameter_table(config); break;
      case Command::EdCurve: table = ed_curve_table(config); break;
      case Command::Validate: table = validate_table(config); break;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (config.output.empty()) {
    write_table(out, table, config.format);
  } else {
    std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open output file '" << config.output << "'\n";
      return 1;
    }
    write_table(file, table, config.format);
    if (!file) {
      err << "error: failed writing '" << config.output << "'\n";
      return 1;
    }
  }

  if (config.command == Command::Validate) {
    int failures = 0;
    for (const auto& row : table.rows) failures += std::get<bool>(row[4]) ? 0 : 1;
    if (failures > 0) {
      err << failures << " validation check(s) failed\n";
      return 1;
    }
  }
  return 0;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (std::find_if(args.begin(), args.end(), [](const std::string& a) { return a == "--help" || a == "-h"; }) !=
      args.end()) {
    out << "usage: dicke <command> [suite] [options] [--config FILE]\n"
           "commands: critical-temp phase-diagram spectrum partition-ratio order-parameter ed-curve validate\n"
           "options: --omega0 --Omega --g1 --g2 --beta --beta-grid start:stop:steps[:log]\n"
           "         --sweep var:start:stop:steps[:log] (up to 2) --at-critical --output PATH\n"
           "         --format csv|json --cutoff M --pole-eps EPS --N-list 2,4,6,8 --ed-tol TOL --workers K\n";
    return 0;
  }
  std::optional<std::string> file_text;
  for (auto it = args.begin(); it != args.end(); ++it) {
    if (*it != "--config") continue;
    if (std::next(it) == args.end()) {
      err << "config: missing file path\n";
      return 2;
    }
    std::ifstream in(*std::next(it), std::ios::binary);
    if (!in) {
      err << "config: cannot read '" << *std::next(it) << "'\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    file_text = buf.str();
    args.erase(it, it + 2);
    break;
  }
  std::optional<std::string> workers_env;
  if (const char* env = std::getenv("DICKE_WORKERS")) workers_env = env;

  RunConfig config;
  try {
    config = parse_config(args, file_text, workers_env);
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << msg << '\n';
    return 2;
  }
  return run(config, out, err);
}

}  // namespace dicke
