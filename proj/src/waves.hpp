#ifndef RCNS_WAVES_HPP
#define RCNS_WAVES_HPP

#include <memory>
#include <string>
#include <vector>

#include "eos.hpp"
#include "interp.hpp"

namespace rcns::waves {

// End states of the 2-shock / 1-rarefaction composite configuration.
// (v_m, u_m) sits on the 2-shock curve through (v_plus, u_plus); (v_minus,
// u_minus) sits on the 1-rarefaction curve through (v_m, u_m).
struct WaveEndStates {
  double v_minus = 0.0, u_minus = 0.0;
  double v_m = 0.0, u_m = 0.0;
  double v_plus = 0.0, u_plus = 0.0;
  double sigma = 0.0;    // shock speed, > 0
  double delta_S = 0.0;  // |p(v_plus) - p(v_m)|
  double delta_R = 0.0;  // |v_m - v_minus|
};

// v_minus == v_m is accepted and yields a zero-strength (constant)
// rarefaction; v_m == v_plus is rejected since the shock speed degenerates.
WaveEndStates build_end_states(const eos::GasModel& model, double v_plus, double u_plus,
                               double v_m, double v_minus);

struct ShockEval {
  double v, u, pi;
  double v_xi, u_xi, pi_xi;
};

// Viscous 2-shock profile: the heteroclinic orbit of the traveling-wave ODE,
// stored as an interpolable monotone curve for the v component with the u
// and stress components recovered from the integrated jump relations.
class ShockProfile {
 public:
  ShockProfile(const eos::GasModel& model, const WaveEndStates& states, double tol = 1e-9);

  ShockEval eval(double xi) const;

  const WaveEndStates& end_states() const { return states_; }
  const eos::GasModel& model() const { return model_; }
  double tol() const { return tol_; }

  // h(v) = sigma^2 (v_m - v) + p(v_m) - p(v); vanishes at both end states.
  double h(double v) const;
  double h_prime(double v) const;
  // right-hand side of the profile ODE dv/dxi
  double ode_rhs(double v) const;

  // Linearized decay rates at the fixed points (left > 0, right < 0) and the
  // log-linear fits measured on the computed nodes.
  double tail_rate_left() const { return kappa_left_; }
  double tail_rate_right() const { return kappa_right_; }
  double fitted_tail_rate_left() const { return fit_left_; }
  double fitted_tail_rate_right() const { return fit_right_; }
  // slowest fitted decay; reported in the profile metadata
  double tail_rate() const;

  const interp::MonotoneCubic& curve() const { return curve_; }

  // CSV with header xi,v,u,pi plus a JSON sidecar with the wave metadata.
  void write_csv(const std::string& csv_path) const;
  std::string metadata_json() const;

 private:
  double u_of_v(double v) const;   // u_m + sigma (v_m - v)
  double pi_of_v(double v) const;  // -h(v)

  eos::GasModel model_;
  WaveEndStates states_;
  double tol_;
  interp::MonotoneCubic curve_;
  double kappa_left_ = 0.0, kappa_right_ = 0.0;
  double fit_left_ = 0.0, fit_right_ = 0.0;
};

struct BurgersEval {
  double w, w_x, w_xx;
};

struct RarefactionEval {
  double v, u;
  double v_x, u_x;
  double v_t, u_t;
  double v_xx, u_xx;
  double v_xt, u_xt;
};

// Smooth approximate 1-rarefaction driven by the exact solution of a Burgers
// problem with algebraically-localized monotone data. Zero-strength waves
// (v_minus == v_m) degenerate to the constant state.
class RarefactionWave {
 public:
  RarefactionWave(const eos::GasModel& model, const WaveEndStates& states, double eps = 0.0,
                  double q = 2.0);

  BurgersEval burgers(double t, double x) const;
  RarefactionEval eval(double t, double x) const;

  double w_minus() const { return w_minus_; }
  double w_m() const { return w_m_; }
  double eps() const { return eps_; }
  double q() const { return q_; }
  double k_q() const { return k_q_; }
  bool trivial() const { return trivial_; }
  const WaveEndStates& end_states() const { return states_; }

  // Burgers initial datum and its first two derivatives.
  double w0(double x) const;
  double w0_prime(double x) const;
  double w0_second(double x) const;

 private:
  eos::GasModel model_;
  WaveEndStates states_;
  bool trivial_;
  double w_minus_, w_m_;
  double eps_, q_, k_q_;
  double z1_ref_;  // conserved 1-Riemann invariant
};

struct CompositeValue {
  double v, u, pi;
};

// Everything the shift quadratures, boundary fill and entropy bookkeeping
// need at one point, in one pass.
struct CompositeBundle {
  // composite values and frame-space derivatives
  double v, u, pi;
  double v_xi, u_xi, pi_xi;
  // shock ingredients at xi - X
  double vS, uS, piS;
  double vS_xi, uS_xi, piS_xi;
  // rarefaction ingredients at (t, xi + sigma t)
  double vR, uR, vR_x, uR_x, vR_t;
  double r, r_x, r_t;  // r = mu uR_x / vR
  // sources of the composite-wave system
  double F1, F2;
};

// Superposition of the shifted shock profile and the approximate rarefaction
// minus the shared middle state. Either wave may be absent (degenerate
// configurations); the middle state then fills its slot.
class CompositeWave {
 public:
  CompositeWave(const eos::GasModel& model, const WaveEndStates& states,
                std::shared_ptr<const ShockProfile> shock,
                std::shared_ptr<const RarefactionWave> rarefaction);

  CompositeValue eval(double t, double xi, double X) const;
  CompositeBundle eval_bundle(double t, double xi, double X) const;

  const WaveEndStates& end_states() const { return states_; }
  const eos::GasModel& model() const { return model_; }
  const ShockProfile* shock() const { return shock_.get(); }
  const RarefactionWave* rarefaction() const { return rarefaction_.get(); }
  double sigma() const { return states_.sigma; }

 private:
  eos::GasModel model_;
  WaveEndStates states_;
  std::shared_ptr<const ShockProfile> shock_;
  std::shared_ptr<const RarefactionWave> rarefaction_;
};

// Builds end states, shock profile and rarefaction in one call.
CompositeWave build_composite(const eos::GasModel& model, double v_plus, double u_plus, double v_m,
                              double v_minus, double tol = 1e-9);

// Exact self-similar fan of the p-system (used as a reference in tests).
CompositeValue exact_fan(const eos::GasModel& model, const WaveEndStates& states, double x_over_t);

}  // namespace rcns::waves

#endif
