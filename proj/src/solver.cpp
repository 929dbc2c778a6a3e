#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "errors.hpp"

namespace rcns::solver {

using eos::GasModel;

Grid::Grid(double L, int N) : half_width(L), cells(N) {
  if (!(L > 0.0)) throw InvalidArgumentError("Grid: half width must be positive");
  if (N < 16) throw InvalidArgumentError("Grid: need at least 16 cells");
  dx = 2.0 * L / N;
}

void FieldState::validate() const {
  if (t < 0.0) throw InvalidArgumentError("FieldState: negative time");
  const std::size_t n = static_cast<std::size_t>(grid.cells);
  if (v.size() != n || u.size() != n || pi.size() != n)
    throw InvalidArgumentError("FieldState: field arrays must match the grid");
  for (int i = 0; i < grid.cells; ++i)
    if (!(v[i] > 0.0)) throw NumericError("FieldState: non-positive specific volume");
}

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 0.95)) throw ConfigError("SolverConfig: cfl must be in (0, 0.95]");
  if (!(end_time >= 0.0)) throw ConfigError("SolverConfig: end_time must be nonnegative");
  if (output_stride < 1) throw ConfigError("SolverConfig: output_stride must be >= 1");
}

CharacteristicSpeeds characteristic_speeds(const GasModel& model, double v) {
  if (model.tau == 0.0)
    throw InvalidArgumentError(
        "characteristic_speeds: tau = 0 has no relaxation speeds, use the classical scheme");
  const double s = std::sqrt(model.mu / model.tau - eos::pressure(model, v, 1));
  return {0.0, -s, s};
}

namespace {

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

struct Halo {
  // cell values with a two-cell halo on each side: index i+2 is cell i
  std::vector<double> v, u, pi;
  int n;

  explicit Halo(int cells) : v(cells + 4), u(cells + 4), pi(cells + 4), n(cells) {}

  void load(const FieldState& s) {
    std::copy(s.v.begin(), s.v.end(), v.begin() + 2);
    std::copy(s.u.begin(), s.u.end(), u.begin() + 2);
    std::copy(s.pi.begin(), s.pi.end(), pi.begin() + 2);
  }

  void fill_ghosts(const Grid& g, double t, const BoundaryFn& boundary, double X) {
    const double xi_l0 = -g.half_width - 1.5 * g.dx;
    const double xi_l1 = -g.half_width - 0.5 * g.dx;
    const double xi_r0 = g.half_width + 0.5 * g.dx;
    const double xi_r1 = g.half_width + 1.5 * g.dx;
    const waves::CompositeValue l0 = boundary(t, xi_l0, X);
    const waves::CompositeValue l1 = boundary(t, xi_l1, X);
    const waves::CompositeValue r0 = boundary(t, xi_r0, X);
    const waves::CompositeValue r1 = boundary(t, xi_r1, X);
    v[0] = l0.v; u[0] = l0.u; pi[0] = l0.pi;
    v[1] = l1.v; u[1] = l1.u; pi[1] = l1.pi;
    v[n + 2] = r0.v; u[n + 2] = r0.u; pi[n + 2] = r0.pi;
    v[n + 3] = r1.v; u[n + 3] = r1.u; pi[n + 3] = r1.pi;
  }
};

void check_positive(const std::vector<double>& v, double t, double dt, const char* where) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "%s: positivity failure at cell %zu, t = %.6g, dt = %.6g",
                    where, i, t, dt);
      throw NumericError(msg);
    }
  }
}

// Rusanov flux divergence of the relaxed sigma-frame system with minmod
// MUSCL reconstruction. Fluxes per row: (-sigma v - u, -sigma u + p - pi,
// -sigma pi). Also reports the two edge fluxes.
void relaxed_rhs(const Halo& h, const GasModel& m, double sigma, double dx,
                 std::vector<std::array<double, 3>>& rhs, std::array<double, 3>& f_left,
                 std::array<double, 3>& f_right) {
  const int n = h.n;
  const double abs_sigma = std::abs(sigma);
  // reconstruction slopes for cells -1 .. n (halo indexing shifted by 2)
  std::vector<std::array<double, 3>> slope(n + 2);
  for (int i = -1; i <= n; ++i) {
    const int k = i + 2;
    slope[i + 1] = {minmod(h.v[k] - h.v[k - 1], h.v[k + 1] - h.v[k]),
                    minmod(h.u[k] - h.u[k - 1], h.u[k + 1] - h.u[k]),
                    minmod(h.pi[k] - h.pi[k - 1], h.pi[k + 1] - h.pi[k])};
  }
  auto flux = [&](double v, double u, double pi, std::array<double, 3>& f) {
    f[0] = -sigma * v - u;
    f[1] = -sigma * u + eos::pressure(m, v) - pi;
    f[2] = -sigma * pi;
  };
  std::vector<std::array<double, 3>> fhat(n + 1);
  for (int j = 0; j <= n; ++j) {
    // interface j between cells j-1 and j
    const int kl = j + 1, kr = j + 2;
    const double vL = h.v[kl] + 0.5 * slope[j][0];
    const double uL = h.u[kl] + 0.5 * slope[j][1];
    const double piL = h.pi[kl] + 0.5 * slope[j][2];
    const double vR = h.v[kr] - 0.5 * slope[j + 1][0];
    const double uR = h.u[kr] - 0.5 * slope[j + 1][1];
    const double piR = h.pi[kr] - 0.5 * slope[j + 1][2];
    if (!(vL > 0.0) || !(vR > 0.0))
      throw NumericError("step_relaxed: reconstructed volume not positive");
    const double aL = std::sqrt(m.mu / m.tau - eos::pressure(m, vL, 1)) + abs_sigma;
    const double aR = std::sqrt(m.mu / m.tau - eos::pressure(m, vR, 1)) + abs_sigma;
    const double a = std::max(aL, aR);
    std::array<double, 3> fL, fR;
    flux(vL, uL, piL, fL);
    flux(vR, uR, piR, fR);
    fhat[j] = {0.5 * (fL[0] + fR[0]) - 0.5 * a * (vR - vL),
               0.5 * (fL[1] + fR[1]) - 0.5 * a * (uR - uL),
               0.5 * (fL[2] + fR[2]) - 0.5 * a * (piR - piL)};
  }
  rhs.resize(n);
  for (int i = 0; i < n; ++i)
    rhs[i] = {-(fhat[i + 1][0] - fhat[i][0]) / dx, -(fhat[i + 1][1] - fhat[i][1]) / dx,
              -(fhat[i + 1][2] - fhat[i][2]) / dx};
  f_left = fhat[0];
  f_right = fhat[n];
}

// Exact integration of tau pi_t + v pi = mu u_xi over dt with v and u_xi
// frozen; u_xi by central differences through the ghosts.
void relax_substep(FieldState& s, const GasModel& m, const Grid& g, double t_ghost,
                   const BoundaryFn& boundary, double X, double dt) {
  const int n = g.cells;
  Halo h(n);
  h.load(s);
  h.fill_ghosts(g, t_ghost, boundary, X);
  for (int i = 0; i < n; ++i) {
    const double u_xi = (h.u[i + 3] - h.u[i + 1]) / (2.0 * g.dx);
    const double pi_eq = m.mu * u_xi / s.v[i];
    s.pi[i] = pi_eq + (s.pi[i] - pi_eq) * std::exp(-s.v[i] * dt / m.tau);
  }
}

}  // namespace

StepInfo step_relaxed(FieldState& state, const GasModel& model, const SolverConfig& config,
                      const BoundaryFn& boundary, double X_now, double X_rate, double dt_cap) {
  if (model.tau <= 0.0)
    throw InvalidArgumentError("step_relaxed: tau must be positive, use step_classical");
  const Grid& g = state.grid;
  const int n = g.cells;
  const double abs_sigma = std::abs(config.sigma);

  double max_speed = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = std::sqrt(model.mu / model.tau - eos::pressure(model, state.v[i], 1));
    max_speed = std::max(max_speed, s + abs_sigma);
  }
  double dt = std::min(config.cfl * g.dx / max_speed, dt_cap);
  if (!(dt > 1e-14 * (1.0 + state.t))) throw NumericError("step_relaxed: time step underflow");

  const double t0 = state.t;
  auto X_at = [&](double t) { return X_now + (t - t0) * X_rate; };

  // Strang: relaxation half-step
  relax_substep(state, model, g, t0, boundary, X_at(t0), 0.5 * dt);

  // transport step, SSP-RK2
  StepInfo info;
  info.dt = dt;
  std::vector<std::array<double, 3>> rhs;
  std::array<double, 3> fl1{}, fr1{}, fl2{}, fr2{};

  Halo h(n);
  h.load(state);
  h.fill_ghosts(g, t0, boundary, X_at(t0));
  relaxed_rhs(h, model, config.sigma, g.dx, rhs, fl1, fr1);
  FieldState stage(g, t0);
  for (int i = 0; i < n; ++i) {
    stage.v[i] = state.v[i] + dt * rhs[i][0];
    stage.u[i] = state.u[i] + dt * rhs[i][1];
    stage.pi[i] = state.pi[i] + dt * rhs[i][2];
  }
  check_positive(stage.v, t0, dt, "step_relaxed (stage 1)");

  h.load(stage);
  h.fill_ghosts(g, t0 + dt, boundary, X_at(t0 + dt));
  relaxed_rhs(h, model, config.sigma, g.dx, rhs, fl2, fr2);
  for (int i = 0; i < n; ++i) {
    state.v[i] = 0.5 * state.v[i] + 0.5 * (stage.v[i] + dt * rhs[i][0]);
    state.u[i] = 0.5 * state.u[i] + 0.5 * (stage.u[i] + dt * rhs[i][1]);
    state.pi[i] = 0.5 * state.pi[i] + 0.5 * (stage.pi[i] + dt * rhs[i][2]);
  }
  check_positive(state.v, t0, dt, "step_relaxed (stage 2)");

  // second relaxation half-step at the new time
  state.t = t0 + dt;
  relax_substep(state, model, g, state.t, boundary, X_at(state.t), 0.5 * dt);

  for (int r = 0; r < 3; ++r) {
    info.left_flux[r] = 0.5 * (fl1[r] + fl2[r]);
    info.right_flux[r] = 0.5 * (fr1[r] + fr2[r]);
  }
  return info;
}

namespace {

// p-system flux divergence plus central viscous term (classical system,
// lab frame).
void classical_rhs(const Halo& h, const GasModel& m, double dx,
                   std::vector<std::array<double, 2>>& rhs, std::array<double, 2>& f_left,
                   std::array<double, 2>& f_right) {
  const int n = h.n;
  std::vector<std::array<double, 2>> slope(n + 2);
  for (int i = -1; i <= n; ++i) {
    const int k = i + 2;
    slope[i + 1] = {minmod(h.v[k] - h.v[k - 1], h.v[k + 1] - h.v[k]),
                    minmod(h.u[k] - h.u[k - 1], h.u[k + 1] - h.u[k])};
  }
  std::vector<std::array<double, 2>> fhat(n + 1);
  std::vector<double> fvisc(n + 1);
  for (int j = 0; j <= n; ++j) {
    const int kl = j + 1, kr = j + 2;
    const double vL = h.v[kl] + 0.5 * slope[j][0];
    const double uL = h.u[kl] + 0.5 * slope[j][1];
    const double vR = h.v[kr] - 0.5 * slope[j + 1][0];
    const double uR = h.u[kr] - 0.5 * slope[j + 1][1];
    if (!(vL > 0.0) || !(vR > 0.0))
      throw NumericError("step_classical: reconstructed volume not positive");
    const double a = std::max(std::sqrt(-eos::pressure(m, vL, 1)), std::sqrt(-eos::pressure(m, vR, 1)));
    fhat[j] = {0.5 * (-uL - uR) - 0.5 * a * (vR - vL),
               0.5 * (eos::pressure(m, vL) + eos::pressure(m, vR)) - 0.5 * a * (uR - uL)};
    // viscous flux mu u_x / v at the interface, plain central differences
    const double v_face = 0.5 * (h.v[kl] + h.v[kr]);
    fvisc[j] = m.mu * (h.u[kr] - h.u[kl]) / dx / v_face;
  }
  rhs.resize(n);
  for (int i = 0; i < n; ++i)
    rhs[i] = {-(fhat[i + 1][0] - fhat[i][0]) / dx,
              -(fhat[i + 1][1] - fhat[i][1]) / dx + (fvisc[i + 1] - fvisc[i]) / dx};
  f_left = {fhat[0][0], fhat[0][1] - fvisc[0]};
  f_right = {fhat[n][0], fhat[n][1] - fvisc[n]};
}

}  // namespace

StepInfo step_classical(FieldState& state, const GasModel& model, const SolverConfig& config,
                        const BoundaryFn& boundary, double dt_cap) {
  const Grid& g = state.grid;
  const int n = g.cells;

  double max_speed = 0.0, v_min = state.v[0];
  for (int i = 0; i < n; ++i) {
    max_speed = std::max(max_speed, std::sqrt(-eos::pressure(model, state.v[i], 1)));
    v_min = std::min(v_min, state.v[i]);
  }
  const double dt_hyp = config.cfl * g.dx / max_speed;
  const double dt_visc = config.cfl * g.dx * g.dx * v_min / (2.0 * model.mu);
  double dt = std::min(std::min(dt_hyp, dt_visc), dt_cap);
  if (!(dt > 1e-14 * (1.0 + state.t))) throw NumericError("step_classical: time step underflow");

  const double t0 = state.t;
  StepInfo info;
  info.dt = dt;
  std::vector<std::array<double, 2>> rhs;
  std::array<double, 2> fl1{}, fr1{}, fl2{}, fr2{};

  Halo h(n);
  h.load(state);
  h.fill_ghosts(g, t0, boundary, 0.0);
  classical_rhs(h, model, g.dx, rhs, fl1, fr1);
  FieldState stage(g, t0);
  for (int i = 0; i < n; ++i) {
    stage.v[i] = state.v[i] + dt * rhs[i][0];
    stage.u[i] = state.u[i] + dt * rhs[i][1];
  }
  check_positive(stage.v, t0, dt, "step_classical (stage 1)");

  h.load(stage);
  h.fill_ghosts(g, t0 + dt, boundary, 0.0);
  classical_rhs(h, model, g.dx, rhs, fl2, fr2);
  for (int i = 0; i < n; ++i) {
    state.v[i] = 0.5 * state.v[i] + 0.5 * (stage.v[i] + dt * rhs[i][0]);
    state.u[i] = 0.5 * state.u[i] + 0.5 * (stage.u[i] + dt * rhs[i][1]);
  }
  check_positive(state.v, t0, dt, "step_classical (stage 2)");
  state.t = t0 + dt;

  // keep the stress field at its Newtonian value
  h.load(state);
  h.fill_ghosts(g, state.t, boundary, 0.0);
  for (int i = 0; i < n; ++i)
    state.pi[i] = model.mu * (h.u[i + 3] - h.u[i + 1]) / (2.0 * g.dx) / state.v[i];

  info.left_flux = {fl1[0] * 0.5 + fl2[0] * 0.5, fl1[1] * 0.5 + fl2[1] * 0.5, 0.0};
  info.right_flux = {fr1[0] * 0.5 + fr2[0] * 0.5, fr1[1] * 0.5 + fr2[1] * 0.5, 0.0};
  return info;
}

RunResult run(FieldState initial, const GasModel& model, const SolverConfig& config,
              const BoundaryFn& boundary, const ShiftCoupling* shift_coupling,
              const Sampler& sampler) {
  config.validate();
  initial.validate();

  RunResult res;
  res.state = std::move(initial);
  FieldState& s = res.state;
  double X = 0.0;
  double Xdot = shift_coupling ? shift_coupling->rate(s, s.t, X) : 0.0;

  if (sampler) sampler(s, X, Xdot, 0);
  const double t_end = s.t + config.end_time;
  long long step = 0;
  while (s.t < t_end - 1e-12 * (1.0 + t_end)) {
    const double dt_cap = t_end - s.t;
    StepInfo info;
    const double X_pre = X, Xdot_pre = Xdot;
    try {
      if (config.scheme == Scheme::relaxed_imex)
        info = step_relaxed(s, model, config, boundary, X_pre, Xdot_pre, dt_cap);
      else
        info = step_classical(s, model, config, boundary, dt_cap);
    } catch (const Error& e) {
      char msg[256];
      std::snprintf(msg, sizeof msg, "run: step %lld at t = %.8g failed: %s", step + 1, s.t,
                    e.what());
      throw NumericError(msg);
    }
    ++step;
    if (shift_coupling) {
      // Heun: rate at the predictor shift, then trapezoidal update, then the
      // stored rate is refreshed at the corrected shift for the next step
      const double X_pred = X_pre + info.dt * Xdot_pre;
      const double Xdot_pred = shift_coupling->rate(s, s.t, X_pred);
      X = X_pre + 0.5 * info.dt * (Xdot_pre + Xdot_pred);
      Xdot = shift_coupling->rate(s, s.t, X);
    }
    const bool last = !(s.t < t_end - 1e-12 * (1.0 + t_end));
    if (sampler && (step % config.output_stride == 0 || last)) sampler(s, X, Xdot, step);
  }
  res.steps = step;
  res.X = X;
  res.Xdot = Xdot;
  return res;
}

}  // namespace rcns::solver
