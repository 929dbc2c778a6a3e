#ifndef RCNS_SOLVER_HPP
#define RCNS_SOLVER_HPP

#include <array>
#include <functional>
#include <vector>

#include "eos.hpp"
#include "waves.hpp"

namespace rcns::solver {

struct Grid {
  double half_width = 0.0;
  int cells = 0;
  double dx = 0.0;

  Grid() = default;
  Grid(double L, int N);
  double center(int i) const { return -half_width + (i + 0.5) * dx; }
};

struct FieldState {
  double t = 0.0;
  Grid grid;
  std::vector<double> v, u, pi;

  FieldState() = default;
  FieldState(const Grid& g, double t0 = 0.0)
      : t(t0), grid(g), v(g.cells, 0.0), u(g.cells, 0.0), pi(g.cells, 0.0) {}
  void validate() const;
};

enum class Scheme { relaxed_imex, classical_reference };
enum class Boundary { farfield_dirichlet };

struct SolverConfig {
  double cfl = 0.9;
  double end_time = 0.0;
  Scheme scheme = Scheme::relaxed_imex;
  Boundary boundary = Boundary::farfield_dirichlet;
  double sigma = 0.0;  // frame speed (0 for classical runs)
  int output_stride = 1;

  void validate() const;
};

// Characteristic speeds of the quasilinear relaxed system: 0 and
// +-sqrt(mu/tau - p'(v)). The CFL bound in the sigma-frame is max|s - sigma|.
struct CharacteristicSpeeds {
  double s0, s_minus, s_plus;
};
CharacteristicSpeeds characteristic_speeds(const eos::GasModel& model, double v);

// Far-field Dirichlet ghost values: the time-dependent composite wave
// evaluated at (t, xi) with the current shift X.
using BoundaryFn = std::function<waves::CompositeValue(double t, double xi, double X)>;

// Per-step bookkeeping: the effective time-averaged flux through each domain
// edge, for discrete conservation accounting.
struct StepInfo {
  double dt = 0.0;
  std::array<double, 3> left_flux{};   // rows v, u, pi
  std::array<double, 3> right_flux{};
};

// One Strang-split step of the relaxed system in the sigma-frame:
// exact relaxation half-step, SSP-RK2 MUSCL/Rusanov transport step,
// relaxation half-step. X_now/X_rate describe the shift's linear motion
// across the step for the boundary fill.
StepInfo step_relaxed(FieldState& state, const eos::GasModel& model, const SolverConfig& config,
                      const BoundaryFn& boundary, double X_now = 0.0, double X_rate = 0.0,
                      double dt_cap = 1e300);

// Explicit step of the classical (tau = 0) system in the lab frame with the
// viscous flux discretized centrally; dt honors both the acoustic CFL and the
// diffusive limit. The stress field is kept at mu u_xi / v diagnostically.
StepInfo step_classical(FieldState& state, const eos::GasModel& model, const SolverConfig& config,
                        const BoundaryFn& boundary, double dt_cap = 1e300);

struct ShiftCoupling {
  // Xdot from the current fields; evaluated before and after each PDE step.
  std::function<double(const FieldState& state, double t, double X)> rate;
};

// Called every output_stride steps (plus at t = 0 and the final step).
using Sampler = std::function<void(const FieldState& state, double X, double Xdot, long long step)>;

struct RunResult {
  FieldState state;
  long long steps = 0;
  double X = 0.0;
  double Xdot = 0.0;
  bool coarse_grid_warning = false;
};

RunResult run(FieldState initial, const eos::GasModel& model, const SolverConfig& config,
              const BoundaryFn& boundary, const ShiftCoupling* shift_coupling = nullptr,
              const Sampler& sampler = {});

}  // namespace rcns::solver

#endif
