#include "waves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "errors.hpp"
#include "quadrature.hpp"

namespace rcns::waves {

using eos::GasModel;

WaveEndStates build_end_states(const GasModel& model, double v_plus, double u_plus, double v_m,
                               double v_minus) {
  if (!(v_minus > 0.0 && v_m > 0.0 && v_plus > 0.0))
    throw DomainError("build_end_states: specific volumes must be positive");
  if (!(v_m < v_plus))
    throw InvalidArgumentError(
        "build_end_states: invalid wave configuration, need v_minus <= v_m < v_plus");
  if (!(v_minus <= v_m))
    throw InvalidArgumentError(
        "build_end_states: invalid wave configuration, need v_minus <= v_m < v_plus");

  WaveEndStates s;
  s.v_plus = v_plus;
  s.u_plus = u_plus;
  s.v_m = v_m;
  s.v_minus = v_minus;

  const double p_m = eos::pressure(model, v_m);
  const double p_plus = eos::pressure(model, v_plus);
  s.sigma = std::sqrt((p_m - p_plus) / (v_plus - v_m));
  s.u_m = u_plus + s.sigma * (v_plus - v_m);
  s.delta_S = std::abs(p_plus - p_m);
  s.delta_R = std::abs(v_m - v_minus);

  // u_minus keeps the 1-Riemann invariant constant along the rarefaction
  const double z1_m = eos::characteristic_data(model, v_m, s.u_m).z1;
  s.u_minus = z1_m - (eos::characteristic_data(model, v_minus, 0.0).z1);

  const double lax_lo = eos::characteristic_data(model, v_plus, 0.0).lambda2;
  const double lax_hi = eos::characteristic_data(model, v_m, 0.0).lambda2;
  if (!(lax_lo < s.sigma && s.sigma < lax_hi))
    throw InvalidArgumentError("build_end_states: Lax condition violated");
  return s;
}

// ---------------------------------------------------------------------------
// Shock profile
// ---------------------------------------------------------------------------

double ShockProfile::h(double v) const {
  const double s2 = states_.sigma * states_.sigma;
  return s2 * (states_.v_m - v) + eos::pressure(model_, states_.v_m) - eos::pressure(model_, v);
}

double ShockProfile::h_prime(double v) const {
  return -states_.sigma * states_.sigma - eos::pressure(model_, v, 1);
}

double ShockProfile::ode_rhs(double v) const {
  const double denom = model_.mu * states_.sigma + model_.tau * states_.sigma * h_prime(v);
  return v * h(v) / denom;
}

double ShockProfile::u_of_v(double v) const {
  return states_.u_m + states_.sigma * (states_.v_m - v);
}

double ShockProfile::pi_of_v(double v) const { return -h(v); }

namespace {

// One adaptive Cash-Karp 4(5) step for a scalar autonomous ODE.
template <typename F>
bool ck_step(F&& f, double& x, double& v, double& step, double rtol, double atol) {
  const double k1 = f(v);
  const double k2 = f(v + step * (0.2 * k1));
  const double k3 = f(v + step * (3.0 / 40 * k1 + 9.0 / 40 * k2));
  const double k4 = f(v + step * (0.3 * k1 - 0.9 * k2 + 1.2 * k3));
  const double k5 = f(v + step * (-11.0 / 54 * k1 + 2.5 * k2 - 70.0 / 27 * k3 + 35.0 / 27 * k4));
  const double k6 = f(v + step * (1631.0 / 55296 * k1 + 175.0 / 512 * k2 + 575.0 / 13824 * k3 +
                                  44275.0 / 110592 * k4 + 253.0 / 4096 * k5));
  const double v5 =
      v + step * (37.0 / 378 * k1 + 250.0 / 621 * k3 + 125.0 / 594 * k4 + 512.0 / 1771 * k6);
  const double v4 = v + step * (2825.0 / 27648 * k1 + 18575.0 / 48384 * k3 + 13525.0 / 55296 * k4 +
                                277.0 / 14336 * k5 + 0.25 * k6);
  const double sc = atol + rtol * std::max(std::abs(v), std::abs(v5));
  const double err = std::abs(v5 - v4) / sc;
  if (err <= 1.0) {
    x += step;
    v = v5;
    step *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-16), -0.2)));
    return true;
  }
  step *= std::max(0.2, 0.9 * std::pow(err, -0.2));
  return false;
}

double fit_decay_rate(const std::vector<double>& xi, const std::vector<double>& gap) {
  // least-squares slope of ln(gap) against xi
  const std::size_t n = xi.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = std::log(gap[i]);
    sx += xi[i];
    sy += y;
    sxx += xi[i] * xi[i];
    sxy += xi[i] * y;
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

ShockProfile::ShockProfile(const GasModel& model, const WaveEndStates& states, double tol)
    : model_(model), states_(states), tol_(tol) {
  if (!(states_.v_m < states_.v_plus))
    throw InvalidArgumentError("ShockProfile: zero-strength shock rejected");
  if (!(tol > 0.0)) throw InvalidArgumentError("ShockProfile: tol must be positive");

  // admissible relaxation time: tau |h'| < mu on [v_m, v_plus]; h' is
  // monotone in v so the extremes sit at the endpoints
  const double hp_max =
      std::max(std::abs(h_prime(states_.v_m)), std::abs(h_prime(states_.v_plus)));
  if (!(model_.tau * hp_max < model_.mu))
    throw InvalidArgumentError("ShockProfile: relaxation time too large for this shock");

  // defensive: h must keep one sign strictly inside (v_m, v_plus)
  for (int i = 1; i < 64; ++i) {
    const double v = states_.v_m + (states_.v_plus - states_.v_m) * i / 64.0;
    if (!(h(v) > 0.0)) throw NumericError("ShockProfile: profile does not exist (h changes sign)");
  }

  const auto rhs = [this](double v) { return ode_rhs(v); };
  const double anchor = 0.5 * (states_.v_m + states_.v_plus);
  const double rtol = 1e-12, atol = 1e-14;

  kappa_left_ = states_.v_m * h_prime(states_.v_m) /
                (states_.sigma * (model_.mu + model_.tau * h_prime(states_.v_m)));
  kappa_right_ = states_.v_plus * h_prime(states_.v_plus) /
                 (states_.sigma * (model_.mu + model_.tau * h_prime(states_.v_plus)));
  const double h_max = 0.5 / std::min(std::abs(kappa_left_), std::abs(kappa_right_));

  // integrate right toward v_plus and left toward v_m from the anchor
  std::vector<double> xs_r{0.0}, vs_r{anchor};
  {
    double x = 0.0, v = anchor, step = 1e-3;
    int guard = 0;
    while (states_.v_plus - v > tol) {
      step = std::min(step, h_max);
      if (ck_step(rhs, x, v, step, rtol, atol)) {
        v = std::min(v, states_.v_plus);  // clip roundoff overshoot
        xs_r.push_back(x);
        vs_r.push_back(v);
      }
      if (++guard > 2000000) throw NumericError("ShockProfile: right integration stalled");
    }
  }
  std::vector<double> xs_l{0.0}, vs_l{anchor};
  {
    double x = 0.0, v = anchor, step = -1e-3;
    int guard = 0;
    while (v - states_.v_m > tol) {
      step = -std::min(-step, h_max);
      if (ck_step(rhs, x, v, step, rtol, atol)) {
        v = std::max(v, states_.v_m);
        xs_l.push_back(x);
        vs_l.push_back(v);
      }
      if (++guard > 2000000) throw NumericError("ShockProfile: left integration stalled");
    }
  }

  std::vector<double> xs, vs, ds;
  xs.reserve(xs_l.size() + xs_r.size() - 1);
  vs.reserve(xs.capacity());
  for (std::size_t i = xs_l.size(); i-- > 1;) {
    xs.push_back(xs_l[i]);
    vs.push_back(vs_l[i]);
  }
  for (std::size_t i = 0; i < xs_r.size(); ++i) {
    xs.push_back(xs_r[i]);
    vs.push_back(vs_r[i]);
  }
  ds.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ds[i] = ode_rhs(vs[i]);
  curve_ = interp::MonotoneCubic(std::move(xs), std::move(vs), std::move(ds));

  // fitted tail exponents from the node values inside a decade window
  const double dv = states_.v_plus - states_.v_m;
  {
    std::vector<double> fx, fg;
    for (std::size_t i = 0; i < curve_.size(); ++i) {
      const double gap = curve_.ordinates()[i] - states_.v_m;
      if (gap > 50.0 * tol && gap < 0.05 * dv) {
        fx.push_back(curve_.abscissae()[i]);
        fg.push_back(gap);
      }
    }
    fit_left_ = fx.size() >= 4 ? fit_decay_rate(fx, fg) : kappa_left_;
  }
  {
    std::vector<double> fx, fg;
    for (std::size_t i = 0; i < curve_.size(); ++i) {
      const double gap = states_.v_plus - curve_.ordinates()[i];
      if (gap > 50.0 * tol && gap < 0.05 * dv) {
        fx.push_back(curve_.abscissae()[i]);
        fg.push_back(gap);
      }
    }
    fit_right_ = fx.size() >= 4 ? fit_decay_rate(fx, fg) : kappa_right_;
  }
}

double ShockProfile::tail_rate() const {
  return std::min(std::abs(fit_left_), std::abs(fit_right_));
}

ShockEval ShockProfile::eval(double xi) const {
  double v, v_xi;
  if (xi < curve_.x_front()) {
    const double gap0 = curve_.ordinates().front() - states_.v_m;
    const double gap = gap0 * std::exp(kappa_left_ * (xi - curve_.x_front()));
    v = states_.v_m + gap;
    v_xi = kappa_left_ * gap;
  } else if (xi > curve_.x_back()) {
    const double gap0 = states_.v_plus - curve_.ordinates().back();
    const double gap = gap0 * std::exp(kappa_right_ * (xi - curve_.x_back()));
    v = states_.v_plus - gap;
    v_xi = -kappa_right_ * gap;
  } else {
    curve_.eval(xi, v, v_xi);
  }
  ShockEval out;
  out.v = v;
  out.v_xi = v_xi;
  out.u = u_of_v(v);
  out.u_xi = -states_.sigma * v_xi;
  out.pi = pi_of_v(v);
  out.pi_xi = -h_prime(v) * v_xi;
  return out;
}

void ShockProfile::write_csv(const std::string& csv_path) const {
  std::ofstream out(csv_path);
  if (!out) throw IoError("ShockProfile: cannot write " + csv_path);
  out << "xi,v,u,pi\n";
  char line[160];
  for (std::size_t i = 0; i < curve_.size(); ++i) {
    const double xi = curve_.abscissae()[i];
    const double v = curve_.ordinates()[i];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", xi, v, u_of_v(v), pi_of_v(v));
    out << line;
  }
}

std::string ShockProfile::metadata_json() const {
  char buf[640];
  std::snprintf(buf, sizeof buf,
                "{\n"
                "  \"sigma\": %.17g,\n"
                "  \"delta_S\": %.17g,\n"
                "  \"tail_rate\": %.17g,\n"
                "  \"v_m\": %.17g,\n"
                "  \"u_m\": %.17g,\n"
                "  \"v_plus\": %.17g,\n"
                "  \"u_plus\": %.17g,\n"
                "  \"gamma\": %.17g,\n"
                "  \"mu\": %.17g,\n"
                "  \"tau\": %.17g\n"
                "}\n",
                states_.sigma, states_.delta_S, tail_rate(), states_.v_m, states_.u_m,
                states_.v_plus, states_.u_plus, model_.gamma, model_.mu, model_.tau);
  return buf;
}

// ---------------------------------------------------------------------------
// Approximate rarefaction
// ---------------------------------------------------------------------------

namespace {
// cos(theta)^(2q-2), with the common q = 2 case inlined
inline double cos_power(double c, double q) {
  if (q == 2.0) return c * c;
  return std::pow(c, 2.0 * q - 2.0);
}
}  // namespace

RarefactionWave::RarefactionWave(const GasModel& model, const WaveEndStates& states, double eps,
                                 double q)
    : model_(model), states_(states), q_(q) {
  if (!(q > 1.5)) throw InvalidArgumentError("RarefactionWave: need tail exponent q > 3/2");
  trivial_ = states_.delta_R == 0.0;
  w_minus_ = eos::lambda1(model_, states_.v_minus);
  w_m_ = eos::lambda1(model_, states_.v_m);
  if (!trivial_ && !(w_minus_ < w_m_))
    throw InvalidArgumentError("RarefactionWave: end states do not open a rarefaction");
  eps_ = eps > 0.0 ? eps : std::pow(states_.delta_R, 3.0);
  if (trivial_) eps_ = 1.0;  // unused, keep the invariant eps > 0
  if (!(eps_ > 0.0)) throw InvalidArgumentError("RarefactionWave: smoothing parameter must be > 0");

  // tanh-sinh handles the endpoint where cos^(2q-2) loses smoothness for
  // non-integer exponents
  const double tail_integral = quadrature::tanh_sinh(
      [this](double th) { return cos_power(std::cos(th), q_); }, 0.0, std::acos(-1.0) / 2.0);
  k_q_ = 1.0 / tail_integral;
  z1_ref_ = eos::characteristic_data(model_, states_.v_m, states_.u_m).z1;
}

double RarefactionWave::w0(double x) const {
  if (trivial_) return w_m_;
  const double z = eps_ * x;
  const double theta = std::atan(z);
  const double g = quadrature::tanh_sinh(
      [this](double th) { return cos_power(std::cos(th), q_); }, 0.0, std::abs(theta));
  const double signed_g = theta >= 0.0 ? g : -g;
  return 0.5 * (w_m_ + w_minus_) + 0.5 * (w_m_ - w_minus_) * k_q_ * signed_g;
}

double RarefactionWave::w0_prime(double x) const {
  if (trivial_) return 0.0;
  const double z = eps_ * x;
  return 0.5 * (w_m_ - w_minus_) * k_q_ * eps_ * std::pow(1.0 + z * z, -q_);
}

double RarefactionWave::w0_second(double x) const {
  if (trivial_) return 0.0;
  const double z = eps_ * x;
  return -q_ * (w_m_ - w_minus_) * k_q_ * eps_ * eps_ * eps_ * x * std::pow(1.0 + z * z, -q_ - 1.0);
}

BurgersEval RarefactionWave::burgers(double t, double x) const {
  if (t < 0.0) throw InvalidArgumentError("RarefactionWave: t must be >= 0");
  if (trivial_) return {w_m_, 0.0, 0.0};
  double x0;
  if (t == 0.0) {
    x0 = x;
  } else {
    // x0 + t w0(x0) = x has a unique root; w0 in (w_minus, w_m) brackets it
    double lo = x - t * w_m_;
    double hi = x - t * w_minus_;
    x0 = 0.5 * (lo + hi);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      const double g = x0 + t * w0(x0) - x;
      if (std::abs(g) < 1e-13 * (1.0 + std::abs(x))) {
        converged = true;
        break;
      }
      const double gp = 1.0 + t * w0_prime(x0);
      if (g > 0.0)
        hi = x0;
      else
        lo = x0;
      const double newton = x0 - g / gp;
      x0 = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
      if (hi - lo < 1e-15 * (1.0 + std::abs(x))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericError("RarefactionWave: characteristic root find stalled");
  }
  const double wp = w0_prime(x0);
  const double denom = 1.0 + t * wp;
  BurgersEval out;
  out.w = w0(x0);
  out.w_x = wp / denom;
  out.w_xx = w0_second(x0) / (denom * denom * denom);
  return out;
}

RarefactionEval RarefactionWave::eval(double t, double x) const {
  RarefactionEval out{};
  if (trivial_) {
    out.v = states_.v_m;
    out.u = states_.u_m;
    return out;
  }
  const BurgersEval b = burgers(t, x);
  if (!(b.w < 0.0)) throw DomainError("RarefactionWave: characteristic speed must stay negative");
  const double w_t = -b.w * b.w_x;
  const double w_xt = -(b.w_x * b.w_x + b.w * b.w_xx);

  const double v = eos::lambda1_inverse(model_, b.w);
  const double Vp = 1.0 / eos::lambda1_prime(model_, v);
  const double Vpp = -eos::lambda1_second(model_, v) * Vp * Vp * Vp;

  out.v = v;
  out.v_x = Vp * b.w_x;
  out.v_t = Vp * w_t;
  out.v_xx = Vpp * b.w_x * b.w_x + Vp * b.w_xx;
  out.v_xt = Vpp * w_t * b.w_x + Vp * w_xt;

  // z1(v, u) is constant, so u = z1_ref - (z1 antiderivative at v)
  out.u = z1_ref_ - (eos::characteristic_data(model_, v, 0.0).z1);
  out.u_x = -b.w * out.v_x;
  out.u_t = -b.w * out.v_t;
  out.u_xx = -(b.w_x * out.v_x + b.w * out.v_xx);
  out.u_xt = -(w_t * out.v_x + b.w * out.v_xt);
  return out;
}

// ---------------------------------------------------------------------------
// Composite wave
// ---------------------------------------------------------------------------

CompositeWave::CompositeWave(const GasModel& model, const WaveEndStates& states,
                             std::shared_ptr<const ShockProfile> shock,
                             std::shared_ptr<const RarefactionWave> rarefaction)
    : model_(model), states_(states), shock_(std::move(shock)),
      rarefaction_(std::move(rarefaction)) {}

CompositeValue CompositeWave::eval(double t, double xi, double X) const {
  ShockEval s{};
  if (shock_) {
    s = shock_->eval(xi - X);
  } else {
    s.v = states_.v_m;
    s.u = states_.u_m;
  }
  double vR = states_.v_m, uR = states_.u_m, r = 0.0;
  if (rarefaction_ && !rarefaction_->trivial()) {
    const RarefactionEval re = rarefaction_->eval(t, xi + states_.sigma * t);
    vR = re.v;
    uR = re.u;
    r = model_.mu * re.u_x / re.v;
  }
  CompositeValue out;
  out.v = vR + s.v - states_.v_m;
  out.u = uR + s.u - states_.u_m;
  out.pi = s.pi + r;
  if (!(out.v > 0.0))
    throw ConfigError("CompositeWave: wave strengths too large, composite volume not positive");
  return out;
}

CompositeBundle CompositeWave::eval_bundle(double t, double xi, double X) const {
  CompositeBundle b{};
  ShockEval s{};
  if (shock_) {
    s = shock_->eval(xi - X);
  } else {
    s.v = states_.v_m;
    s.u = states_.u_m;
  }
  b.vS = s.v;
  b.uS = s.u;
  b.piS = s.pi;
  b.vS_xi = s.v_xi;
  b.uS_xi = s.u_xi;
  b.piS_xi = s.pi_xi;

  RarefactionEval re{};
  re.v = states_.v_m;
  re.u = states_.u_m;
  if (rarefaction_ && !rarefaction_->trivial())
    re = rarefaction_->eval(t, xi + states_.sigma * t);
  b.vR = re.v;
  b.uR = re.u;
  b.vR_x = re.v_x;
  b.uR_x = re.u_x;
  b.vR_t = re.v_t;

  b.r = model_.mu * re.u_x / re.v;
  b.r_x = model_.mu * (re.u_xx * re.v - re.u_x * re.v_x) / (re.v * re.v);
  b.r_t = model_.mu * (re.u_xt * re.v - re.u_x * re.v_t) / (re.v * re.v);

  b.v = b.vR + b.vS - states_.v_m;
  b.u = b.uR + b.uS - states_.u_m;
  b.pi = b.piS + b.r;
  b.v_xi = b.vR_x + b.vS_xi;
  b.u_xi = b.uR_x + b.uS_xi;
  b.pi_xi = b.piS_xi + b.r_x;
  if (!(b.v > 0.0))
    throw ConfigError("CompositeWave: wave strengths too large, composite volume not positive");

  const double p1_comp = eos::pressure(model_, b.v, 1);
  const double p1_R = eos::pressure(model_, b.vR, 1);
  const double p1_S = eos::pressure(model_, b.vS, 1);
  b.F1 = p1_comp * (b.vR_x + b.vS_xi) - p1_R * b.vR_x - p1_S * b.vS_xi - b.r_x;
  b.F2 = model_.tau * b.r_t + (b.vR - states_.v_m) * b.piS + (b.vS - states_.v_m) * b.r;
  return b;
}

CompositeWave build_composite(const GasModel& model, double v_plus, double u_plus, double v_m,
                              double v_minus, double tol) {
  const WaveEndStates states = build_end_states(model, v_plus, u_plus, v_m, v_minus);
  auto shock = std::make_shared<const ShockProfile>(model, states, tol);
  auto raref = std::make_shared<const RarefactionWave>(model, states);
  return CompositeWave(model, states, std::move(shock), std::move(raref));
}

CompositeValue exact_fan(const GasModel& model, const WaveEndStates& states, double x_over_t) {
  const double w_minus = eos::lambda1(model, states.v_minus);
  const double w_m = eos::lambda1(model, states.v_m);
  const double w = std::min(std::max(x_over_t, w_minus), w_m);
  const double v = eos::lambda1_inverse(model, w);
  const double z1_ref = eos::characteristic_data(model, states.v_m, states.u_m).z1;
  const double u = z1_ref - eos::characteristic_data(model, v, 0.0).z1;
  return {v, u, 0.0};
}

}  // namespace rcns::waves
