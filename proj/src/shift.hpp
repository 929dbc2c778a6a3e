#ifndef RCNS_SHIFT_HPP
#define RCNS_SHIFT_HPP

#include <memory>
#include <vector>

#include "solver.hpp"
#include "waves.hpp"

namespace rcns::shift {

// Monotone weight a(xi) = 1 + (lambda/delta_S)(p(v_m) - p(vS(xi))).
// The amplitude must sit in the window delta_S < lambda <= sqrt(delta_S).
class WeightSpec {
 public:
  WeightSpec(double lambda_amp, std::shared_ptr<const waves::ShockProfile> shock);

  double lambda_amp() const { return lambda_; }
  double delta_S() const { return delta_S_; }
  const waves::ShockProfile& shock() const { return *shock_; }

  double weight(double xi) const;
  double weight_prime(double xi) const;

  // same quantities from an already-evaluated profile point
  double weight_of(double vS) const;
  double weight_prime_of(double vS, double vS_xi) const;

 private:
  double lambda_;
  double delta_S_;
  std::shared_ptr<const waves::ShockProfile> shock_;
};

// default lambda: top of the admissible window
double default_lambda(double delta_S);

// Drift constant M = 5 (gamma+1) sigma_m^3 / (8 gamma p(v_m)), sigma_m =
// sqrt(-p'(v_m)).
double drift_constant(const eos::GasModel& model, double v_m);

struct ShiftState {
  double X = 0.0;
  double Xdot = 0.0;
  double M = 0.0;
};

// Trapezoidal (Heun) update: X advances with the average of the stored rate
// and the newly supplied one; the new rate is stored.
ShiftState advance(const ShiftState& shift, double Xdot_now, double dt);

// Evaluates the shift ODE right-hand side on the solver grid by trapezoid
// quadrature. The rarefaction ingredients depend on t only, so they are
// cached per sample time; repeated evaluations at the same t with different
// shifts only re-query the shock curve.
class ShiftRateEvaluator {
 public:
  ShiftRateEvaluator(std::shared_ptr<const waves::CompositeWave> composite,
                     std::shared_ptr<const WeightSpec> weight, const solver::Grid& grid);

  double rate(const solver::FieldState& state, double X) const;

  // fewer than 8 cells across the shock transition
  bool coarse_grid_warning() const { return coarse_warning_; }
  double drift() const { return M_; }

  solver::ShiftCoupling coupling() const;

 private:
  void prepare(double t) const;

  std::shared_ptr<const waves::CompositeWave> composite_;
  std::shared_ptr<const WeightSpec> weight_;
  solver::Grid grid_;
  double M_;
  bool coarse_warning_;
  mutable double cached_t_;
  mutable std::vector<double> vR_;
};

}  // namespace rcns::shift

#endif
