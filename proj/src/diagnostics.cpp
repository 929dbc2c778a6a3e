#include "diagnostics.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace rcns::diagnostics {

using eos::GasModel;

namespace {

// trapezoid accumulator over the cell centers
struct Trapezoid {
  double acc = 0.0;
  void add(double f, bool edge) { acc += edge ? 0.5 * f : f; }
  double total(double dx) const { return acc * dx; }
};

}  // namespace

DiagnosticsEvaluator::DiagnosticsEvaluator(std::shared_ptr<const waves::CompositeWave> composite,
                                           std::shared_ptr<const shift::WeightSpec> weight)
    : composite_(std::move(composite)), weight_(std::move(weight)) {
  if (!composite_) throw InvalidArgumentError("DiagnosticsEvaluator: composite required");
  if (!weight_) throw InvalidArgumentError("DiagnosticsEvaluator: weight required");
}

EntropyReport DiagnosticsEvaluator::entropy_report(const solver::FieldState& state, double X,
                                                   double Xdot,
                                                   const EntropyReport* previous) const {
  const GasModel& m = composite_->model();
  const double sigma = composite_->sigma();
  const int n = state.grid.cells;
  const double dx = state.grid.dx;

  EntropyReport rep;
  rep.t = state.t;
  rep.Xdot = Xdot;

  Trapezoid eta_acc;
  std::array<Trapezoid, 8> Y{};
  std::array<Trapezoid, 5> B{};
  Trapezoid S1, S2, G1, G2, G3, G, GR;

  for (int i = 0; i < n; ++i) {
    const double xi = state.grid.center(i);
    const waves::CompositeBundle b = composite_->eval_bundle(state.t, xi, X);
    const bool edge = (i == 0 || i == n - 1);

    const double du = state.u[i] - b.u;
    const double dv = state.v[i] - b.v;
    const double dpi = state.pi[i] - b.pi;
    const double dp = eos::pressure(m, state.v[i]) - eos::pressure(m, b.v);
    const double H_rel = eos::relative_quantity(m, eos::RelativeKind::potential, state.v[i], b.v);
    const double p_rel = eos::relative_quantity(m, eos::RelativeKind::pressure, state.v[i], b.v);
    const double a = weight_->weight_of(b.vS);
    const double ap = weight_->weight_prime_of(b.vS, b.vS_xi);

    const double eta = 0.5 * du * du + H_rel + m.tau * dpi * dpi / (2.0 * m.mu);
    eta_acc.add(a * eta, edge);

    const double dZ = du - dp / sigma;  // recurring combination
    Y[0].add(a * b.uS_xi / sigma * dp, edge);
    Y[1].add(-a * eos::pressure(m, b.vS, 1) * b.vS_xi * dv, edge);
    Y[2].add(a * b.uS_xi * dZ, edge);
    Y[3].add(-a * (eos::pressure(m, b.v, 1) - eos::pressure(m, b.vS, 1)) * b.vS_xi * dv, edge);
    Y[4].add(a * m.tau / m.mu * b.piS_xi * dpi, edge);
    Y[5].add(-ap * m.tau * dpi * dpi / (2.0 * m.mu), edge);
    Y[6].add(-0.5 * ap * dZ * (du + dp / sigma), edge);
    Y[7].add(-ap * (H_rel + 0.5 * (dp / sigma) * (dp / sigma)), edge);

    B[0].add(ap * dp * dp / (2.0 * sigma), edge);
    B[1].add(sigma * a * b.vS_xi * p_rel, edge);
    B[2].add(-ap * dpi * dp / sigma, edge);
    B[3].add(-a * b.pi / m.mu * dpi * dv, edge);
    B[4].add(ap * dpi * dpi / (2.0 * sigma), edge);
    S1.add(-a * du * b.F1, edge);
    S2.add(-a * dpi / m.mu * b.F2, edge);

    const double q = dZ + dpi / sigma;
    G1.add(0.5 * sigma * ap * q * q, edge);
    G2.add(sigma * ap * H_rel, edge);
    G3.add(sigma * m.tau / (2.0 * m.mu) * ap * dpi * dpi, edge);
    G.add(a * state.v[i] / m.mu * dpi * dpi, edge);
    GR.add(a * b.uR_x * p_rel, edge);
  }

  rep.eta_integral = eta_acc.total(dx);
  double Ysum = 0.0;
  for (int k = 0; k < 8; ++k) {
    rep.Y_terms[k] = Y[k].total(dx);
    Ysum += rep.Y_terms[k];
  }
  rep.Y = Ysum;
  double Bsum = 0.0;
  for (int k = 0; k < 5; ++k) {
    rep.B_terms[k] = B[k].total(dx);
    Bsum += rep.B_terms[k];
  }
  rep.S1 = S1.total(dx);
  rep.S2 = S2.total(dx);
  rep.J_bad = Bsum + rep.S1 + rep.S2;
  rep.G1 = G1.total(dx);
  rep.G2 = G2.total(dx);
  rep.G3 = G3.total(dx);
  rep.G = G.total(dx);
  rep.GR = GR.total(dx);
  rep.J_good = rep.G1 + rep.G2 + rep.G3 + rep.G + rep.GR;
  rep.rhs = rep.Xdot * rep.Y + rep.J_bad - rep.J_good;

  if (previous) {
    const double dt = rep.t - previous->t;
    if (!(dt > 0.0))
      throw InvalidArgumentError("entropy_report: previous report must be strictly older");
    const double ddt = (rep.eta_integral - previous->eta_integral) / dt;
    rep.identity_residual = std::abs(ddt - 0.5 * (rep.rhs + previous->rhs));
  } else {
    rep.identity_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

ErrorReport DiagnosticsEvaluator::error_report(const solver::FieldState& state, double X) const {
  const GasModel& m = composite_->model();
  const int n = state.grid.cells;
  const double dx = state.grid.dx;

  ErrorReport rep;
  rep.t = state.t;
  Trapezoid l2v, l2u, l2pi, gS, gR, gPi, gap;
  for (int i = 0; i < n; ++i) {
    const double xi = state.grid.center(i);
    const waves::CompositeBundle b = composite_->eval_bundle(state.t, xi, X);
    const bool edge = (i == 0 || i == n - 1);
    const double dv = state.v[i] - b.v;
    const double du = state.u[i] - b.u;
    const double dpi = state.pi[i] - b.pi;
    rep.sup_error = std::max(
        rep.sup_error, std::max(std::abs(dv), std::max(std::abs(du), std::abs(dpi))));
    l2v.add(dv * dv, edge);
    l2u.add(du * du, edge);
    l2pi.add(dpi * dpi, edge);
    gS.add(b.vS_xi * dv * dv, edge);
    gR.add(b.uR_x * dv * dv, edge);
    gPi.add(state.v[i] / m.mu * dpi * dpi, edge);

    // discrete Newtonian residual; one-sided differences at the edges
    double u_xi;
    if (i == 0)
      u_xi = (state.u[1] - state.u[0]) / dx;
    else if (i == n - 1)
      u_xi = (state.u[n - 1] - state.u[n - 2]) / dx;
    else
      u_xi = (state.u[i + 1] - state.u[i - 1]) / (2.0 * dx);
    const double g = state.pi[i] - m.mu * u_xi / state.v[i];
    gap.add(g * g, edge);
  }
  rep.l2_v = std::sqrt(l2v.total(dx));
  rep.l2_u = std::sqrt(l2u.total(dx));
  rep.l2_pi = std::sqrt(l2pi.total(dx));
  rep.g_S = gS.total(dx);
  rep.g_R = gR.total(dx);
  rep.g_pi = gPi.total(dx);
  rep.relaxation_gap = std::sqrt(gap.total(dx));
  return rep;
}

}  // namespace rcns::diagnostics
