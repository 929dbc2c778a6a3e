#ifndef RCNS_DIAGNOSTICS_HPP
#define RCNS_DIAGNOSTICS_HPP

#include <array>
#include <memory>

#include "shift.hpp"
#include "solver.hpp"
#include "waves.hpp"

namespace rcns::diagnostics {

// Weighted relative-entropy balance at one sample time. The itemized term
// lists are logged so the bookkeeping stays inspectable; only the aggregate
// identity is asserted anywhere.
struct EntropyReport {
  double t = 0.0;
  double eta_integral = 0.0;
  double Y = 0.0;
  double J_bad = 0.0;
  double J_good = 0.0;
  // |d/dt eta - (Xdot Y + J_bad - J_good)|; NaN without a previous report
  double identity_residual = 0.0;
  double Xdot = 0.0;

  std::array<double, 8> Y_terms{};
  std::array<double, 5> B_terms{};
  double S1 = 0.0, S2 = 0.0;
  double G1 = 0.0, G2 = 0.0, G3 = 0.0, G = 0.0, GR = 0.0;
  // how the previous sample's right-hand side enters the residual
  double rhs = 0.0;
};

struct ErrorReport {
  double t = 0.0;
  double sup_error = 0.0;
  double l2_v = 0.0, l2_u = 0.0, l2_pi = 0.0;
  double g_S = 0.0, g_R = 0.0, g_pi = 0.0;
  double relaxation_gap = 0.0;
};

class DiagnosticsEvaluator {
 public:
  DiagnosticsEvaluator(std::shared_ptr<const waves::CompositeWave> composite,
                       std::shared_ptr<const shift::WeightSpec> weight);

  EntropyReport entropy_report(const solver::FieldState& state, double X, double Xdot,
                               const EntropyReport* previous = nullptr) const;
  ErrorReport error_report(const solver::FieldState& state, double X) const;

 private:
  std::shared_ptr<const waves::CompositeWave> composite_;
  std::shared_ptr<const shift::WeightSpec> weight_;
};

}  // namespace rcns::diagnostics

#endif
