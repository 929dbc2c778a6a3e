#include <doctest.h>

#include <cmath>
#include <memory>

#include "diagnostics.hpp"
#include "test_util.hpp"

using namespace rcns;
using eos::GasModel;

namespace {

struct Fixture {
  GasModel model{2.0, 1.0, 0.01};
  std::shared_ptr<const waves::CompositeWave> composite;
  std::shared_ptr<const shift::WeightSpec> weight;
  solver::Grid grid{120.0, 1024};

  Fixture() {
    composite = std::make_shared<const waves::CompositeWave>(
        waves::build_composite(model, 1.2, 0.0, 1.0, 0.9));
    weight = std::make_shared<const shift::WeightSpec>(
        shift::default_lambda(composite->end_states().delta_S),
        std::shared_ptr<const waves::ShockProfile>(composite, composite->shock()));
  }

  solver::FieldState composite_state(double t, double X) const {
    solver::FieldState s(grid, t);
    for (int i = 0; i < grid.cells; ++i) {
      const waves::CompositeValue w = composite->eval(t, grid.center(i), X);
      s.v[i] = w.v;
      s.u[i] = w.u;
      s.pi[i] = w.pi;
    }
    return s;
  }
};

}  // namespace

TEST_CASE("zero perturbation yields an all-zero report") {
  Fixture f;
  diagnostics::DiagnosticsEvaluator diag(f.composite, f.weight);
  const solver::FieldState s = f.composite_state(1.0, 0.3);
  const diagnostics::EntropyReport er = diag.entropy_report(s, 0.3, 0.0);
  CHECK(std::abs(er.eta_integral) < 1e-13);
  CHECK(std::abs(er.Y) < 1e-13);
  CHECK(std::abs(er.J_bad) < 1e-13);
  CHECK(std::abs(er.J_good) < 1e-13);
  for (double y : er.Y_terms) CHECK(std::abs(y) < 1e-13);
  for (double b : er.B_terms) CHECK(std::abs(b) < 1e-13);
  CHECK(std::abs(er.S1) < 1e-13);
  CHECK(std::abs(er.S2) < 1e-13);

  const diagnostics::ErrorReport rr = diag.error_report(s, 0.3);
  CHECK(rr.sup_error < 1e-13);
  CHECK(rr.l2_v < 1e-13);
  CHECK(rr.g_S < 1e-13);
  CHECK(rr.g_R < 1e-13);
  // the composite stress is not exactly Newtonian; the gap reflects that
  CHECK(rr.relaxation_gap < 1.0);
}

TEST_CASE("uniform velocity offset produces the advertised entropy density") {
  Fixture f;
  diagnostics::DiagnosticsEvaluator diag(f.composite, f.weight);
  solver::FieldState s = f.composite_state(0.5, 0.0);
  for (double& u : s.u) u += 0.1;
  const diagnostics::EntropyReport er = diag.entropy_report(s, 0.0, 0.0);

  // eta density is exactly 0.005, weighted by a(xi - X)
  double weighted = 0.0;
  for (int i = 0; i < f.grid.cells; ++i) {
    const double a = f.weight->weight(f.grid.center(i));
    weighted += ((i == 0 || i == f.grid.cells - 1) ? 0.5 : 1.0) * a;
  }
  weighted *= f.grid.dx;
  CHECK(er.eta_integral == doctest::Approx(0.005 * weighted).epsilon(1e-12));
}

TEST_CASE("constant volume deviation integrates the profile jump") {
  Fixture f;
  diagnostics::DiagnosticsEvaluator diag(f.composite, f.weight);
  const double c = 0.02;
  solver::FieldState s = f.composite_state(0.0, 0.0);
  for (double& v : s.v) v += c;
  const diagnostics::ErrorReport rr = diag.error_report(s, 0.0);
  const auto& st = f.composite->end_states();
  CHECK(rr.g_S == doctest::Approx(c * c * (st.v_plus - st.v_m)).epsilon(1e-10));
  CHECK(rr.sup_error == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("Newtonian states have zero relaxation gap") {
  Fixture f;
  diagnostics::DiagnosticsEvaluator diag(f.composite, f.weight);
  solver::FieldState s = f.composite_state(0.0, 0.0);
  for (int i = 0; i < f.grid.cells; ++i) {
    double u_xi;
    if (i == 0)
      u_xi = (s.u[1] - s.u[0]) / f.grid.dx;
    else if (i == f.grid.cells - 1)
      u_xi = (s.u[i] - s.u[i - 1]) / f.grid.dx;
    else
      u_xi = (s.u[i + 1] - s.u[i - 1]) / (2.0 * f.grid.dx);
    s.pi[i] = f.model.mu * u_xi / s.v[i];
  }
  CHECK(diag.error_report(s, 0.0).relaxation_gap < 1e-14);
}

TEST_CASE("wave dissipations stay nonnegative on random states") {
  Fixture f;
  diagnostics::DiagnosticsEvaluator diag(f.composite, f.weight);
  rcns_test::Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    solver::FieldState s = f.composite_state(rng.uniform(0.0, 4.0), rng.uniform(-1.0, 1.0));
    for (int i = 0; i < f.grid.cells; ++i) {
      const double xi = f.grid.center(i);
      s.v[i] += 0.05 * std::sin(0.3 * xi) * std::exp(-xi * xi / 800.0);
      s.u[i] += 0.05 * std::cos(0.2 * xi) * std::exp(-xi * xi / 600.0);
      s.pi[i] += 0.02 * std::exp(-xi * xi / 400.0);
    }
    const diagnostics::ErrorReport rr = diag.error_report(s, 0.0);
    CHECK(rr.g_S >= 0.0);
    CHECK(rr.g_R >= 0.0);
    CHECK(rr.g_pi >= 0.0);
    const diagnostics::EntropyReport er = diag.entropy_report(s, 0.0, 0.0);
    CHECK(er.eta_integral >= 0.0);
    CHECK(er.G >= 0.0);
    CHECK(er.G1 >= 0.0);
    CHECK(er.G2 >= 0.0);
    CHECK(er.G3 >= 0.0);
    CHECK(er.GR >= 0.0);
  }
}

TEST_CASE("functionals are quadrature-converged at the working resolution") {
  Fixture f;
  auto report_at = [&](int N) {
    const solver::Grid g(120.0, N);
    solver::FieldState s(g, 0.5);
    for (int i = 0; i < N; ++i) {
      const double xi = g.center(i);
      const waves::CompositeValue w = f.composite->eval(0.5, xi, 0.2);
      const double bump = 0.03 * std::exp(-std::pow((xi + 10.0) / 6.0, 2));
      s.v[i] = w.v + bump;
      s.u[i] = w.u - bump;
      s.pi[i] = w.pi + 0.5 * bump;
    }
    diagnostics::DiagnosticsEvaluator diag(f.composite, f.weight);
    return diag.entropy_report(s, 0.2, 0.1);
  };
  const diagnostics::EntropyReport a = report_at(1024);
  const diagnostics::EntropyReport b = report_at(2048);
  CHECK(std::abs(a.eta_integral - b.eta_integral) < 0.01 * std::abs(b.eta_integral));
  CHECK(std::abs(a.Y - b.Y) < 0.01 * std::abs(b.Y));
  CHECK(std::abs(a.J_bad - b.J_bad) < 0.01 * std::abs(b.J_bad));
  CHECK(std::abs(a.J_good - b.J_good) < 0.01 * std::abs(b.J_good));
}

TEST_CASE("entropy report input checks") {
  Fixture f;
  diagnostics::DiagnosticsEvaluator diag(f.composite, f.weight);
  const solver::FieldState s = f.composite_state(1.0, 0.0);
  const diagnostics::EntropyReport now = diag.entropy_report(s, 0.0, 0.0);
  CHECK(std::isnan(now.identity_residual));
  CHECK_THROWS_AS(diag.entropy_report(s, 0.0, 0.0, &now), InvalidArgumentError);
}
