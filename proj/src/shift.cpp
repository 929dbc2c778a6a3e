#include "shift.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace rcns::shift {

WeightSpec::WeightSpec(double lambda_amp, std::shared_ptr<const waves::ShockProfile> shock)
    : lambda_(lambda_amp), shock_(std::move(shock)) {
  if (!shock_) throw InvalidArgumentError("WeightSpec: shock profile required");
  delta_S_ = shock_->end_states().delta_S;
  if (!(lambda_ > delta_S_ && lambda_ <= std::sqrt(delta_S_)))
    throw InvalidArgumentError(
        "WeightSpec: amplitude must satisfy delta_S < lambda <= sqrt(delta_S)");
}

double default_lambda(double delta_S) { return std::sqrt(delta_S); }

double WeightSpec::weight_of(double vS) const {
  const auto& m = shock_->model();
  const double p_m = eos::pressure(m, shock_->end_states().v_m);
  return 1.0 + lambda_ / delta_S_ * (p_m - eos::pressure(m, vS));
}

double WeightSpec::weight_prime_of(double vS, double vS_xi) const {
  return -lambda_ / delta_S_ * eos::pressure(shock_->model(), vS, 1) * vS_xi;
}

double WeightSpec::weight(double xi) const { return weight_of(shock_->eval(xi).v); }

double WeightSpec::weight_prime(double xi) const {
  const waves::ShockEval s = shock_->eval(xi);
  return weight_prime_of(s.v, s.v_xi);
}

double drift_constant(const eos::GasModel& model, double v_m) {
  const double sigma_m = std::sqrt(-eos::pressure(model, v_m, 1));
  return 5.0 * (model.gamma + 1.0) * sigma_m * sigma_m * sigma_m /
         (8.0 * model.gamma * eos::pressure(model, v_m));
}

ShiftState advance(const ShiftState& shift, double Xdot_now, double dt) {
  ShiftState out = shift;
  out.X += 0.5 * dt * (shift.Xdot + Xdot_now);
  out.Xdot = Xdot_now;
  return out;
}

ShiftRateEvaluator::ShiftRateEvaluator(std::shared_ptr<const waves::CompositeWave> composite,
                                       std::shared_ptr<const WeightSpec> weight,
                                       const solver::Grid& grid)
    : composite_(std::move(composite)), weight_(std::move(weight)), grid_(grid),
      cached_t_(std::numeric_limits<double>::quiet_NaN()), vR_(grid.cells, 0.0) {
  if (!composite_ || !composite_->shock())
    throw InvalidArgumentError("ShiftRateEvaluator: composite with a shock profile required");
  M_ = drift_constant(composite_->model(), composite_->end_states().v_m);
  const double transition_width = 4.0 / composite_->shock()->tail_rate();
  coarse_warning_ = transition_width / grid_.dx < 8.0;
}

void ShiftRateEvaluator::prepare(double t) const {
  if (t == cached_t_) return;
  const waves::RarefactionWave* raref = composite_->rarefaction();
  const double sigma = composite_->sigma();
  const double v_m = composite_->end_states().v_m;
  for (int i = 0; i < grid_.cells; ++i) {
    if (raref && !raref->trivial())
      vR_[i] = raref->eval(t, grid_.center(i) + sigma * t).v;
    else
      vR_[i] = v_m;
  }
  cached_t_ = t;
}

double ShiftRateEvaluator::rate(const solver::FieldState& state, double X) const {
  if (state.grid.cells != grid_.cells)
    throw InvalidArgumentError("ShiftRateEvaluator: state grid does not match");
  prepare(state.t);
  const waves::ShockProfile& shock = *composite_->shock();
  const eos::GasModel& m = composite_->model();
  const double v_m = composite_->end_states().v_m;
  const double sigma = composite_->sigma();
  const double delta_S = composite_->end_states().delta_S;

  double acc1 = 0.0, acc2 = 0.0;
  for (int i = 0; i < grid_.cells; ++i) {
    const waves::ShockEval s = shock.eval(grid_.center(i) - X);
    const double v_tilde = vR_[i] + s.v - v_m;
    const double a = weight_->weight_of(s.v);
    const double f1 = a / sigma * s.u_xi * (eos::pressure(m, state.v[i]) - eos::pressure(m, v_tilde));
    const double f2 = a * eos::pressure(m, s.v, 1) * s.v_xi * (state.v[i] - v_tilde);
    const double w = (i == 0 || i == grid_.cells - 1) ? 0.5 : 1.0;
    acc1 += w * f1;
    acc2 += w * f2;
  }
  return -M_ / delta_S * (acc1 - acc2) * grid_.dx;
}

solver::ShiftCoupling ShiftRateEvaluator::coupling() const {
  solver::ShiftCoupling c;
  c.rate = [this](const solver::FieldState& state, double /*t*/, double X) {
    return rate(state, X);
  };
  return c;
}

}  // namespace rcns::shift
