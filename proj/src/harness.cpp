#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "io.hpp"

namespace rcns::harness {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

namespace {

const char* kKeys[] = {
    "model.gamma",           "model.mu",
    "model.tau",             "states.v_plus",
    "states.u_plus",         "states.v_m",
    "states.v_minus",        "grid.L",
    "grid.N",                "solver.cfl",
    "solver.end_time",       "solver.output_stride",
    "shift.lambda_amp",      "perturbation.shape",
    "perturbation.amplitude", "perturbation.center",
    "perturbation.width",    "perturbation.target_fields",
    "experiment",            "output_dir",
    "seed",
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has malformed numeric value '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has malformed integer value '" + value + "'");
  }
}

ExperimentKind parse_kind(const std::string& value) {
  if (value == "stability") return ExperimentKind::stability;
  if (value == "relax_sweep") return ExperimentKind::relax_sweep;
  if (value == "profile_only") return ExperimentKind::profile_only;
  if (value == "entropy_check") return ExperimentKind::entropy_check;
  throw ConfigError("config: unknown experiment '" + value + "'");
}

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::stability: return "stability";
    case ExperimentKind::relax_sweep: return "relax_sweep";
    case ExperimentKind::profile_only: return "profile_only";
    case ExperimentKind::entropy_check: return "entropy_check";
    case ExperimentKind::simulate: return "simulate";
  }
  return "?";
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: line " + std::to_string(lineno) + " has empty key or value");
    if (!kv.emplace(key, value).second)
      throw ConfigError("config: duplicate key '" + key + "'");
  }

  for (const auto& [key, value] : kv) {
    (void)value;
    bool known = key == "sweep.tau_list";
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw ConfigError("config: unknown key '" + key + "'");
  }
  for (const char* k : kKeys)
    if (!kv.count(k)) throw ConfigError("config: missing mandatory key '" + std::string(k) + "'");

  ExperimentConfig c;
  c.source_text = text;
  c.gamma = parse_double("model.gamma", kv["model.gamma"]);
  c.mu = parse_double("model.mu", kv["model.mu"]);
  c.tau = parse_double("model.tau", kv["model.tau"]);
  c.v_plus = parse_double("states.v_plus", kv["states.v_plus"]);
  c.u_plus = parse_double("states.u_plus", kv["states.u_plus"]);
  c.v_m = parse_double("states.v_m", kv["states.v_m"]);
  c.v_minus = parse_double("states.v_minus", kv["states.v_minus"]);
  c.L = kv["grid.L"] == "auto" ? -1.0 : parse_double("grid.L", kv["grid.L"]);
  c.N = static_cast<int>(parse_int("grid.N", kv["grid.N"]));
  c.cfl = parse_double("solver.cfl", kv["solver.cfl"]);
  c.end_time = parse_double("solver.end_time", kv["solver.end_time"]);
  c.output_stride = static_cast<int>(parse_int("solver.output_stride", kv["solver.output_stride"]));
  c.lambda_amp =
      kv["shift.lambda_amp"] == "auto" ? -1.0 : parse_double("shift.lambda_amp", kv["shift.lambda_amp"]);

  const std::string shape = kv["perturbation.shape"];
  if (shape == "gaussian_bump")
    c.shape = PerturbShape::gaussian_bump;
  else if (shape == "zero")
    c.shape = PerturbShape::zero;
  else
    throw ConfigError("config: unknown perturbation.shape '" + shape + "'");
  c.amplitude = parse_double("perturbation.amplitude", kv["perturbation.amplitude"]);
  c.center_auto = kv["perturbation.center"] == "auto";
  c.center = c.center_auto ? 0.0 : parse_double("perturbation.center", kv["perturbation.center"]);
  c.width_auto = kv["perturbation.width"] == "auto";
  c.width = c.width_auto ? 0.0 : parse_double("perturbation.width", kv["perturbation.width"]);
  c.target_fields = kv["perturbation.target_fields"];
  if (c.target_fields != "v" && c.target_fields != "u" && c.target_fields != "vu")
    throw ConfigError("config: perturbation.target_fields must be v, u or vu");

  c.experiment = parse_kind(kv["experiment"]);
  c.output_dir = kv["output_dir"];
  c.seed = parse_int("seed", kv["seed"]);

  if (kv.count("sweep.tau_list")) {
    std::istringstream ts(kv["sweep.tau_list"]);
    std::string item;
    while (std::getline(ts, item, ','))
      c.tau_list.push_back(parse_double("sweep.tau_list", trim(item)));
  }
  if (c.experiment == ExperimentKind::relax_sweep) {
    if (c.tau_list.empty()) throw ConfigError("config: relax_sweep requires sweep.tau_list");
    for (std::size_t i = 0; i + 1 < c.tau_list.size(); ++i)
      if (!(c.tau_list[i] >= c.tau_list[i + 1]))
        throw ConfigError("config: sweep.tau_list must be sorted descending");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config_text(io::read_text_file(path));
}

std::string render_config(const ExperimentConfig& c) {
  std::ostringstream out;
  auto num = [](double x) { return io::format_double(x); };
  out << "model.gamma = " << num(c.gamma) << "\n";
  out << "model.mu = " << num(c.mu) << "\n";
  out << "model.tau = " << num(c.tau) << "\n";
  out << "states.v_plus = " << num(c.v_plus) << "\n";
  out << "states.u_plus = " << num(c.u_plus) << "\n";
  out << "states.v_m = " << num(c.v_m) << "\n";
  out << "states.v_minus = " << num(c.v_minus) << "\n";
  out << "grid.L = " << (c.L < 0.0 ? std::string("auto") : num(c.L)) << "\n";
  out << "grid.N = " << c.N << "\n";
  out << "solver.cfl = " << num(c.cfl) << "\n";
  out << "solver.end_time = " << num(c.end_time) << "\n";
  out << "solver.output_stride = " << c.output_stride << "\n";
  out << "shift.lambda_amp = " << (c.lambda_amp < 0.0 ? std::string("auto") : num(c.lambda_amp))
      << "\n";
  out << "perturbation.shape = "
      << (c.shape == PerturbShape::gaussian_bump ? "gaussian_bump" : "zero") << "\n";
  out << "perturbation.amplitude = " << num(c.amplitude) << "\n";
  out << "perturbation.center = " << (c.center_auto ? std::string("auto") : num(c.center)) << "\n";
  out << "perturbation.width = " << (c.width_auto ? std::string("auto") : num(c.width)) << "\n";
  out << "perturbation.target_fields = " << c.target_fields << "\n";
  out << "experiment = " << kind_name(c.experiment) << "\n";
  if (!c.tau_list.empty()) {
    out << "sweep.tau_list = ";
    for (std::size_t i = 0; i < c.tau_list.size(); ++i)
      out << (i ? "," : "") << num(c.tau_list[i]);
    out << "\n";
  }
  out << "output_dir = " << c.output_dir << "\n";
  out << "seed = " << c.seed << "\n";
  return out.str();
}

OutputFormats parse_formats(const std::string& comma_list) {
  OutputFormats f;
  f.csv = f.json = f.svg = false;
  std::istringstream in(comma_list);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item == "csv")
      f.csv = true;
    else if (item == "json")
      f.json = true;
    else if (item == "svg")
      f.svg = true;
    else if (!item.empty())
      throw ConfigError("formats: unknown format '" + item + "'");
  }
  if (!f.csv && !f.json && !f.svg) throw ConfigError("formats: empty format list");
  return f;
}

// ---------------------------------------------------------------------------
// Build + initial data
// ---------------------------------------------------------------------------

BuiltExperiment build_experiment(const ExperimentConfig& cfg) {
  if (!(cfg.end_time > 0.0)) throw ConfigError("config: solver.end_time must be positive");
  if (cfg.N < 16) throw ConfigError("config: grid.N must be at least 16");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.95)) throw ConfigError("config: solver.cfl not in (0, 0.95]");
  if (cfg.output_stride < 1) throw ConfigError("config: solver.output_stride must be >= 1");
  if (cfg.amplitude < 0.0) throw ConfigError("config: perturbation.amplitude must be >= 0");

  eos::GasModel model(cfg.gamma, cfg.mu, cfg.tau);
  waves::WaveEndStates states =
      waves::build_end_states(model, cfg.v_plus, cfg.u_plus, cfg.v_m, cfg.v_minus);

  // relaxation-time window: tau <= min(inf mu / |sigma^2 + p'(v)|, 1); the
  // extrema of sigma^2 + p' sit at the interval endpoints
  const double hp_m = std::abs(-states.sigma * states.sigma - eos::pressure(model, states.v_m, 1));
  const double hp_p =
      std::abs(-states.sigma * states.sigma - eos::pressure(model, states.v_plus, 1));
  const double tau_window = std::min(cfg.mu / std::max(hp_m, hp_p), 1.0);
  if (!(cfg.tau <= tau_window)) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "config: model.tau = %g violates the admissible window %g",
                  cfg.tau, tau_window);
    throw ConfigError(msg);
  }

  BuiltExperiment b{model,
                    states,
                    std::make_shared<const waves::ShockProfile>(model, states),
                    std::make_shared<const waves::RarefactionWave>(model, states),
                    nullptr,
                    nullptr,
                    solver::Grid(),
                    0.0,
                    0.0,
                    0.0};
  b.composite = std::make_shared<const waves::CompositeWave>(model, states, b.shock, b.rarefaction);

  b.lambda = cfg.lambda_amp < 0.0 ? shift::default_lambda(states.delta_S) : cfg.lambda_amp;
  b.weight = std::make_shared<const shift::WeightSpec>(b.lambda, b.shock);

  const double L_auto =
      std::max(40.0 / states.delta_S,
               8.0 * std::abs(eos::lambda1(model, states.v_minus)) * cfg.end_time);
  const double L = cfg.L < 0.0 ? L_auto : cfg.L;
  b.grid = solver::Grid(L, cfg.N);

  b.width = cfg.width_auto ? 5.0 / states.delta_S : cfg.width;
  if (!(b.width > 0.0)) throw ConfigError("config: perturbation.width must be positive");
  b.center = cfg.center_auto ? -10.0 / states.delta_S : cfg.center;
  return b;
}

solver::FieldState initial_state(const BuiltExperiment& b, const ExperimentConfig& cfg) {
  solver::FieldState s(b.grid, 0.0);
  for (int i = 0; i < b.grid.cells; ++i) {
    const double xi = b.grid.center(i);
    const waves::CompositeValue w = b.composite->eval(0.0, xi, 0.0);
    double dv = 0.0, du = 0.0;
    if (cfg.shape == PerturbShape::gaussian_bump && cfg.amplitude > 0.0) {
      const double arg = (xi - b.center) / b.width;
      const double g = cfg.amplitude * std::exp(-0.5 * arg * arg);
      if (cfg.target_fields == "v") {
        dv = g;
      } else if (cfg.target_fields == "u") {
        du = g;
      } else {
        // both fields: bump along the 2-characteristic direction (1, -c) so
        // the default perturbation runs into the shock
        dv = g;
        du = -std::sqrt(-eos::pressure(b.model, w.v, 1)) * g;
      }
    }
    s.v[i] = w.v + dv;
    s.u[i] = w.u + du;
    s.pi[i] = w.pi;
    if (!(s.v[i] > 0.0))
      throw ConfigError("config: perturbation amplitude drives the volume non-positive");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

namespace {

struct SeriesRow {
  double t, eta, Y, Jbad, Jgood, residual, supE, l2v, l2u, l2pi, gS, gR, gPi, relaxgap, X, Xdot;
};

void write_series_csv(const std::string& path, const std::vector<SeriesRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "t,eta,Y,Jbad,Jgood,residual,supE,l2v,l2u,l2pi,gS,gR,gPi,relaxgap,X,Xdot\n";
  char line[640];
  for (const SeriesRow& r : rows) {
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g\n",
                  r.t, r.eta, r.Y, r.Jbad, r.Jgood, r.residual, r.supE, r.l2v, r.l2u, r.l2pi, r.gS,
                  r.gR, r.gPi, r.relaxgap, r.X, r.Xdot);
    out << line;
  }
}

void write_shift_csv(const std::string& path, const std::vector<SeriesRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "t,X,Xdot\n";
  char line[128];
  for (const SeriesRow& r : rows) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", r.t, r.X, r.Xdot);
    out << line;
  }
}

std::string state_sidecar(const solver::FieldState& s, const eos::GasModel& m, double sigma) {
  json j;
  j["t"] = s.t;
  j["sigma"] = sigma;
  j["gamma"] = m.gamma;
  j["mu"] = m.mu;
  j["tau"] = m.tau;
  j["N"] = s.grid.cells;
  j["L"] = s.grid.half_width;
  return j.dump(2) + "\n";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

void attach_provenance(json& summary, const ExperimentConfig& cfg) {
  const std::string echo = cfg.source_text.empty() ? render_config(cfg) : cfg.source_text;
  summary["config_echo"] = echo;
  summary["config_sha1"] = io::git_blob_sha1(echo);
  summary["seed"] = cfg.seed;
}

void emit_charts(const std::string& out_dir, const std::vector<SeriesRow>& rows, json& summary,
                 const OutputFormats& formats) {
  std::vector<std::string> manifest = {"supE", "eta", "absXdot"};
  summary["charts"] = manifest;
  if (!formats.svg) return;
  io::ChartSeries supE{"supE", {}, {}};
  io::ChartSeries eta{"eta", {}, {}};
  io::ChartSeries axd{"absXdot", {}, {}};
  for (const SeriesRow& r : rows) {
    supE.t.push_back(r.t);
    supE.y.push_back(r.supE);
    eta.t.push_back(r.t);
    eta.y.push_back(r.eta);
    axd.t.push_back(r.t);
    axd.y.push_back(std::abs(r.Xdot));
  }
  io::write_svg_chart(out_dir + "/chart_supE.svg", "sup error", supE, true);
  io::write_svg_chart(out_dir + "/chart_eta.svg", "weighted relative entropy", eta, true);
  io::write_svg_chart(out_dir + "/chart_absXdot.svg", "|Xdot|", axd, true);
}

void write_summary(const std::string& out_dir, const json& summary) {
  io::write_text_file(out_dir + "/summary.json", summary.dump(2) + "\n");
}

double l2_diff(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    const double w = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
    acc += w * d * d;
  }
  return std::sqrt(acc * dx);
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

nlohmann::json run_stability(const ExperimentConfig& cfg, const std::string& out_dir,
                             const OutputFormats& formats, bool simulate_mode) {
  ensure_dir(out_dir);
  const BuiltExperiment b = build_experiment(cfg);
  solver::FieldState init = initial_state(b, cfg);

  auto rate_eval = std::make_shared<shift::ShiftRateEvaluator>(b.composite, b.weight, b.grid);
  solver::ShiftCoupling coupling = rate_eval->coupling();
  diagnostics::DiagnosticsEvaluator diag(b.composite, b.weight);

  solver::SolverConfig sc;
  sc.cfl = cfg.cfl;
  sc.end_time = cfg.end_time;
  sc.scheme = solver::Scheme::relaxed_imex;
  sc.sigma = b.states.sigma;
  sc.output_stride = cfg.output_stride;

  solver::BoundaryFn boundary = [&b](double t, double xi, double X) {
    return b.composite->eval(t, xi, X);
  };

  std::vector<SeriesRow> rows;
  diagnostics::EntropyReport prev{};
  bool has_prev = false;
  solver::FieldState snapshot_initial = init;
  solver::Sampler sampler = [&](const solver::FieldState& s, double X, double Xdot,
                                long long /*step*/) {
    const diagnostics::EntropyReport er =
        diag.entropy_report(s, X, Xdot, has_prev ? &prev : nullptr);
    const diagnostics::ErrorReport rr = diag.error_report(s, X);
    rows.push_back({s.t, er.eta_integral, er.Y, er.J_bad, er.J_good, er.identity_residual,
                    rr.sup_error, rr.l2_v, rr.l2_u, rr.l2_pi, rr.g_S, rr.g_R, rr.g_pi,
                    rr.relaxation_gap, X, Xdot});
    prev = er;
    has_prev = true;
  };

  solver::RunResult res = solver::run(std::move(init), b.model, sc, boundary, &coupling, sampler);

  json summary;
  summary["experiment"] = simulate_mode ? "simulate" : "stability";
  summary["steps"] = res.steps;
  summary["N"] = cfg.N;
  summary["L"] = b.grid.half_width;
  summary["sigma"] = b.states.sigma;
  summary["delta_S"] = b.states.delta_S;
  summary["delta_R"] = b.states.delta_R;
  summary["lambda"] = b.lambda;
  summary["perturbation_center"] = b.center;
  summary["perturbation_width"] = b.width;
  summary["coarse_grid_warning"] = rate_eval->coarse_grid_warning();
  summary["X_final"] = res.X;
  summary["Xdot_final"] = res.Xdot;

  if (!rows.empty()) {
    const double T = rows.back().t;
    const double supE0 = rows.front().supE;
    const double supET = rows.back().supE;
    summary["sup_error_initial"] = supE0;
    summary["sup_error_final"] = supET;
    summary["decay_ratio"] = supE0 > 0.0 ? supET / supE0 : 0.0;

    double first_max = 0.0, last_max = 0.0;
    for (const SeriesRow& r : rows) {
      if (r.t <= 0.1 * T) first_max = std::max(first_max, std::abs(r.Xdot));
      if (r.t >= 0.9 * T) last_max = std::max(last_max, std::abs(r.Xdot));
    }
    summary["xdot_first_decile_max"] = first_max;
    summary["xdot_last_decile_max"] = last_max;
    summary["xdot_trend_ratio"] = first_max > 0.0 ? last_max / first_max : 0.0;

    const SeriesRow* quarter = &rows.front();
    for (const SeriesRow& r : rows)
      if (std::abs(r.t - 0.25 * T) < std::abs(quarter->t - 0.25 * T)) quarter = &r;
    summary["X_quarter"] = quarter->X;
    summary["t_quarter"] = quarter->t;
    summary["x_over_t_final"] = T > 0.0 ? std::abs(res.X) / T : 0.0;
    summary["x_over_t_quarter"] = quarter->t > 0.0 ? std::abs(quarter->X) / quarter->t : 0.0;

    double eta_max = 0.0, res_mean = 0.0, res_max = 0.0;
    int res_count = 0;
    for (const SeriesRow& r : rows) {
      eta_max = std::max(eta_max, r.eta);
      if (std::isfinite(r.residual)) {
        res_mean += r.residual;
        res_max = std::max(res_max, r.residual);
        ++res_count;
      }
    }
    summary["eta_initial"] = rows.front().eta;
    summary["eta_max"] = eta_max;
    summary["identity_residual_mean"] = res_count ? res_mean / res_count : 0.0;
    summary["identity_residual_max"] = res_max;
  }
  attach_provenance(summary, cfg);
  emit_charts(out_dir, rows, summary, formats);

  if (formats.csv) {
    write_series_csv(out_dir + "/series.csv", rows);
    write_shift_csv(out_dir + "/shift.csv", rows);
    io::write_state_csv(out_dir + "/snapshot_initial.csv", snapshot_initial);
    io::write_text_file(out_dir + "/snapshot_initial.json",
                        state_sidecar(snapshot_initial, b.model, b.states.sigma));
    io::write_state_csv(out_dir + "/snapshot_final.csv", res.state);
    io::write_text_file(out_dir + "/snapshot_final.json",
                        state_sidecar(res.state, b.model, b.states.sigma));
    b.shock->write_csv(out_dir + "/profile.csv");
    io::write_text_file(out_dir + "/profile.json", b.shock->metadata_json());
  }
  write_summary(out_dir, summary);
  return summary;
}

nlohmann::json run_entropy_check(const ExperimentConfig& cfg, const std::string& out_dir,
                                 const OutputFormats& formats) {
  json summary = run_stability(cfg, out_dir, formats, false);
  summary["experiment"] = "entropy_check";
  const double theta = std::min(0.5, 1.5 - 1.0 / 2.0);  // q defaults to 2
  summary["theta"] = theta;
  const BuiltExperiment b = build_experiment(cfg);
  summary["delta_R_theta"] = std::pow(b.states.delta_R, theta);
  const double eta0 = summary["eta_initial"].get<double>();
  const double eta_max = summary["eta_max"].get<double>();
  summary["eta_margin_over_2eta0"] = eta_max - 2.0 * eta0;
  write_summary(out_dir, summary);
  return summary;
}

namespace {

struct SweepEntry {
  double tau = 0.0;
  double l2v = 0.0, l2u = 0.0, l2vu = 0.0;
  double relax_gap = 0.0;
};

double state_relax_gap(const solver::FieldState& s, const eos::GasModel& m) {
  const int n = s.grid.cells;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double u_xi;
    if (i == 0)
      u_xi = (s.u[1] - s.u[0]) / s.grid.dx;
    else if (i == n - 1)
      u_xi = (s.u[n - 1] - s.u[n - 2]) / s.grid.dx;
    else
      u_xi = (s.u[i + 1] - s.u[i - 1]) / (2.0 * s.grid.dx);
    const double g = s.pi[i] - m.mu * u_xi / s.v[i];
    acc += ((i == 0 || i == n - 1) ? 0.5 : 1.0) * g * g;
  }
  return std::sqrt(acc * s.grid.dx);
}

}  // namespace

nlohmann::json run_relax_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                               const OutputFormats& formats, int jobs) {
  if (cfg.tau_list.empty()) throw ConfigError("relax_sweep: sweep.tau_list required");
  ensure_dir(out_dir);

  // the common background is the classical-limit composite (tau = 0); every
  // run, relaxed or classical, starts from the same fields in the lab frame
  ExperimentConfig base = cfg;
  base.tau = 0.0;
  const BuiltExperiment b = build_experiment(base);
  for (double tk : cfg.tau_list) {
    ExperimentConfig probe = cfg;
    probe.tau = tk;
    build_experiment(probe);  // validates each tau against the window
  }

  solver::FieldState init = initial_state(b, cfg);
  // well-prepared stress: the Newtonian value of the perturbed data
  for (int i = 0; i < b.grid.cells; ++i) {
    double u_xi;
    if (i == 0)
      u_xi = (init.u[1] - init.u[0]) / b.grid.dx;
    else if (i == b.grid.cells - 1)
      u_xi = (init.u[i] - init.u[i - 1]) / b.grid.dx;
    else
      u_xi = (init.u[i + 1] - init.u[i - 1]) / (2.0 * b.grid.dx);
    init.pi[i] = b.model.mu * u_xi / init.v[i];
  }

  const double sigma = b.states.sigma;
  solver::BoundaryFn boundary = [&b, sigma](double t, double x, double /*X*/) {
    // lab-frame composite: the shock argument is x - sigma t
    return b.composite->eval(t, x - sigma * t, 0.0);
  };

  solver::SolverConfig sc_classical;
  sc_classical.cfl = cfg.cfl;
  sc_classical.end_time = cfg.end_time;
  sc_classical.scheme = solver::Scheme::classical_reference;
  sc_classical.sigma = 0.0;
  sc_classical.output_stride = cfg.output_stride;

  // classical reference runs once
  solver::RunResult classical = solver::run(init, b.model, sc_classical, boundary);

  std::vector<SweepEntry> entries(cfg.tau_list.size());
  std::vector<solver::FieldState> finals(cfg.tau_list.size());
  std::vector<std::exception_ptr> errors(cfg.tau_list.size());

  auto worker = [&](std::size_t k) {
    try {
      eos::GasModel model_k(cfg.gamma, cfg.mu, cfg.tau_list[k]);
      solver::SolverConfig sc = sc_classical;
      sc.scheme = solver::Scheme::relaxed_imex;
      solver::RunResult res = solver::run(init, model_k, sc, boundary);
      finals[k] = std::move(res.state);
      SweepEntry e;
      e.tau = cfg.tau_list[k];
      e.l2v = l2_diff(finals[k].v, classical.state.v, b.grid.dx);
      e.l2u = l2_diff(finals[k].u, classical.state.u, b.grid.dx);
      e.l2vu = std::sqrt(e.l2v * e.l2v + e.l2u * e.l2u);
      e.relax_gap = state_relax_gap(finals[k], model_k);
      entries[k] = e;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const int n_jobs = std::max(1, jobs);
  for (std::size_t k0 = 0; k0 < cfg.tau_list.size(); k0 += n_jobs) {
    std::vector<std::thread> pool;
    for (std::size_t k = k0; k < std::min(cfg.tau_list.size(), k0 + n_jobs); ++k)
      pool.emplace_back(worker, k);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  json rows = json::array();
  std::vector<double> taus, gaps, diffs;
  bool monotone_gap = true, monotone_state = true;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const SweepEntry& e = entries[k];
    rows.push_back({{"tau", e.tau},
                    {"l2_v", e.l2v},
                    {"l2_u", e.l2u},
                    {"l2_vu", e.l2vu},
                    {"relax_gap", e.relax_gap}});
    taus.push_back(e.tau);
    gaps.push_back(e.relax_gap);
    diffs.push_back(e.l2vu);
    if (k > 0 && entries[k].tau < entries[k - 1].tau) {
      if (!(entries[k].relax_gap < entries[k - 1].relax_gap)) monotone_gap = false;
      if (!(entries[k].l2vu < entries[k - 1].l2vu)) monotone_state = false;
    }
  }

  json summary;
  summary["experiment"] = "relax_sweep";
  summary["rows"] = rows;
  summary["monotone_gap"] = monotone_gap;
  summary["monotone_state_diff"] = monotone_state;
  if (!monotone_gap) summary["flag"] = "relaxation gap not monotone across the sweep";
  summary["exponent_gap"] = fit_loglog_slope(taus, gaps);
  summary["exponent_state_diff"] = fit_loglog_slope(taus, diffs);
  summary["classical_steps"] = classical.steps;
  attach_provenance(summary, cfg);

  if (formats.csv) {
    std::ofstream out(out_dir + "/sweep.csv");
    if (!out) throw IoError("cannot write " + out_dir + "/sweep.csv");
    out << "tau,l2v,l2u,l2vu,relaxgap\n";
    char line[256];
    for (const SweepEntry& e : entries) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", e.tau, e.l2v, e.l2u,
                    e.l2vu, e.relax_gap);
      out << line;
    }
    out.close();

    for (std::size_t k = 0; k < entries.size(); ++k) {
      // job-local directory, atomically moved into place
      char name[64];
      std::snprintf(name, sizeof name, "run_tau_%02zu", k);
      const std::string tmp = out_dir + "/.tmp_" + name;
      ensure_dir(tmp);
      io::write_state_csv(tmp + "/snapshot_final.csv", finals[k]);
      eos::GasModel model_k(cfg.gamma, cfg.mu, cfg.tau_list[k]);
      io::write_text_file(tmp + "/snapshot_final.json", state_sidecar(finals[k], model_k, 0.0));
      const std::string dst = out_dir + "/" + name;
      std::error_code ec;
      fs::remove_all(dst, ec);
      fs::rename(tmp, dst, ec);
      if (ec) throw IoError("cannot move " + tmp + " to " + dst + ": " + ec.message());
    }
    io::write_state_csv(out_dir + "/classical_final.csv", classical.state);
    io::write_text_file(out_dir + "/classical_final.json",
                        state_sidecar(classical.state, b.model, 0.0));
  }
  write_summary(out_dir, summary);
  return summary;
}

nlohmann::json run_profile_only(const ExperimentConfig& cfg, const std::string& out_dir,
                                const OutputFormats& formats) {
  ensure_dir(out_dir);
  const BuiltExperiment b = build_experiment(cfg);
  json summary;
  summary["experiment"] = "profile_only";
  summary["sigma"] = b.states.sigma;
  summary["delta_S"] = b.states.delta_S;
  summary["delta_R"] = b.states.delta_R;
  summary["tail_rate"] = b.shock->tail_rate();
  summary["tail_rate_left"] = b.shock->fitted_tail_rate_left();
  summary["tail_rate_right"] = b.shock->fitted_tail_rate_right();
  summary["nodes"] = b.shock->curve().size();
  attach_provenance(summary, cfg);
  if (formats.csv) {
    b.shock->write_csv(out_dir + "/profile.csv");
    io::write_text_file(out_dir + "/profile.json", b.shock->metadata_json());
  }
  write_summary(out_dir, summary);
  return summary;
}

nlohmann::json run_experiment(const ExperimentConfig& cfg, const std::string& out_dir_override,
                              const std::string& formats_list, int jobs,
                              const std::string& forced_kind) {
  const OutputFormats formats = parse_formats(formats_list);
  const std::string out_dir = out_dir_override.empty() ? cfg.output_dir : out_dir_override;
  if (out_dir.empty()) throw ConfigError("run_experiment: no output directory");

  ExperimentKind kind = cfg.experiment;
  if (!forced_kind.empty()) {
    if (forced_kind == "profile")
      kind = ExperimentKind::profile_only;
    else if (forced_kind == "simulate")
      kind = ExperimentKind::simulate;
    else if (forced_kind == "stability")
      kind = ExperimentKind::stability;
    else if (forced_kind == "relax-sweep")
      kind = ExperimentKind::relax_sweep;
    else if (forced_kind == "entropy-check")
      kind = ExperimentKind::entropy_check;
    else
      throw ConfigError("run_experiment: unknown subcommand '" + forced_kind + "'");
  }

  switch (kind) {
    case ExperimentKind::stability:
      return run_stability(cfg, out_dir, formats);
    case ExperimentKind::simulate:
      return run_stability(cfg, out_dir, formats, true);
    case ExperimentKind::entropy_check:
      return run_entropy_check(cfg, out_dir, formats);
    case ExperimentKind::relax_sweep:
      return run_relax_sweep(cfg, out_dir, formats, jobs);
    case ExperimentKind::profile_only:
      return run_profile_only(cfg, out_dir, formats);
  }
  throw ConfigError("run_experiment: unreachable experiment kind");
}

}  // namespace rcns::harness
