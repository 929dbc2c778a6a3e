#include "rcns.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "shift.hpp"
#include "solver.hpp"
#include "waves.hpp"

using rcns::Error;
using rcns::Status;

struct rcns_model {
  rcns::eos::GasModel model;
};

struct rcns_waves {
  rcns::waves::CompositeWave composite;
};

struct rcns_config {
  rcns::harness::ExperimentConfig config;
};

namespace {

thread_local std::string t_last_error;

rcns_status to_status(Status s) { return static_cast<rcns_status>(static_cast<int>(s)); }

template <typename F>
rcns_status guarded(F&& f) {
  try {
    f();
    t_last_error.clear();
    return RCNS_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return RCNS_ERR_NUMERIC;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return RCNS_ERR_NUMERIC;
  }
}

rcns_status require(bool ok, const char* msg) {
  if (ok) return RCNS_OK;
  t_last_error = msg;
  return RCNS_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* rcns_status_name(rcns_status status) {
  switch (status) {
    case RCNS_OK: return "ok";
    case RCNS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RCNS_ERR_DOMAIN: return "domain error";
    case RCNS_ERR_CONFIG: return "config error";
    case RCNS_ERR_NUMERIC: return "numeric error";
    case RCNS_ERR_IO: return "io error";
    case RCNS_ERR_UNSUPPORTED: return "unsupported";
  }
  return "unknown";
}

const char* rcns_last_error(void) { return t_last_error.c_str(); }

rcns_status rcns_model_create(double gamma, double mu, double tau, rcns_model** out) {
  if (rcns_status s = require(out != nullptr, "rcns_model_create: out is NULL")) return s;
  *out = nullptr;
  return guarded([&] { *out = new rcns_model{rcns::eos::GasModel(gamma, mu, tau)}; });
}

void rcns_model_free(rcns_model* model) { delete model; }

rcns_status rcns_pressure(const rcns_model* model, double v, int order, double* out) {
  if (rcns_status s = require(model && out, "rcns_pressure: NULL argument")) return s;
  return guarded([&] { *out = rcns::eos::pressure(model->model, v, order); });
}

rcns_status rcns_relative_quantity(const rcns_model* model, const char* which, double v, double w,
                                   double* out) {
  if (rcns_status s = require(model && which && out, "rcns_relative_quantity: NULL argument"))
    return s;
  return guarded([&] {
    rcns::eos::RelativeKind kind;
    if (std::strcmp(which, "pressure") == 0)
      kind = rcns::eos::RelativeKind::pressure;
    else if (std::strcmp(which, "potential") == 0)
      kind = rcns::eos::RelativeKind::potential;
    else
      throw rcns::InvalidArgumentError("rcns_relative_quantity: which must be pressure|potential");
    *out = rcns::eos::relative_quantity(model->model, kind, v, w);
  });
}

rcns_status rcns_characteristic_data(const rcns_model* model, double v, double u, double* lambda1,
                                     double* lambda2, double* z1) {
  if (rcns_status s = require(model && lambda1 && lambda2 && z1,
                              "rcns_characteristic_data: NULL argument"))
    return s;
  return guarded([&] {
    const rcns::eos::CharacteristicData d = rcns::eos::characteristic_data(model->model, v, u);
    *lambda1 = d.lambda1;
    *lambda2 = d.lambda2;
    *z1 = d.z1;
  });
}

rcns_status rcns_characteristic_speeds(const rcns_model* model, double v, double* s0,
                                       double* s_minus, double* s_plus) {
  if (rcns_status s = require(model && s0 && s_minus && s_plus,
                              "rcns_characteristic_speeds: NULL argument"))
    return s;
  return guarded([&] {
    const rcns::solver::CharacteristicSpeeds cs =
        rcns::solver::characteristic_speeds(model->model, v);
    *s0 = cs.s0;
    *s_minus = cs.s_minus;
    *s_plus = cs.s_plus;
  });
}

rcns_status rcns_waves_create(const rcns_model* model, double v_plus, double u_plus, double v_m,
                              double v_minus, double tol, rcns_waves** out) {
  if (rcns_status s = require(model && out, "rcns_waves_create: NULL argument")) return s;
  *out = nullptr;
  return guarded([&] {
    *out = new rcns_waves{rcns::waves::build_composite(model->model, v_plus, u_plus, v_m, v_minus,
                                                       tol > 0.0 ? tol : 1e-9)};
  });
}

void rcns_waves_free(rcns_waves* waves) { delete waves; }

rcns_status rcns_waves_end_states(const rcns_waves* waves, rcns_end_states* out) {
  if (rcns_status s = require(waves && out, "rcns_waves_end_states: NULL argument")) return s;
  return guarded([&] {
    const rcns::waves::WaveEndStates& e = waves->composite.end_states();
    out->v_minus = e.v_minus;
    out->u_minus = e.u_minus;
    out->v_m = e.v_m;
    out->u_m = e.u_m;
    out->v_plus = e.v_plus;
    out->u_plus = e.u_plus;
    out->sigma = e.sigma;
    out->delta_S = e.delta_S;
    out->delta_R = e.delta_R;
    out->tail_rate = waves->composite.shock() ? waves->composite.shock()->tail_rate() : 0.0;
  });
}

rcns_status rcns_waves_eval_shock(const rcns_waves* waves, double xi, double out[6]) {
  if (rcns_status s = require(waves && out, "rcns_waves_eval_shock: NULL argument")) return s;
  return guarded([&] {
    if (!waves->composite.shock())
      throw rcns::InvalidArgumentError("rcns_waves_eval_shock: no shock in this composite");
    const rcns::waves::ShockEval e = waves->composite.shock()->eval(xi);
    out[0] = e.v;
    out[1] = e.u;
    out[2] = e.pi;
    out[3] = e.v_xi;
    out[4] = e.u_xi;
    out[5] = e.pi_xi;
  });
}

rcns_status rcns_waves_eval_rarefaction(const rcns_waves* waves, double t, double x,
                                        double out[6]) {
  if (rcns_status s = require(waves && out, "rcns_waves_eval_rarefaction: NULL argument")) return s;
  return guarded([&] {
    if (!waves->composite.rarefaction())
      throw rcns::InvalidArgumentError("rcns_waves_eval_rarefaction: no rarefaction");
    const rcns::waves::RarefactionEval e = waves->composite.rarefaction()->eval(t, x);
    out[0] = e.v;
    out[1] = e.u;
    out[2] = e.v_x;
    out[3] = e.u_x;
    out[4] = e.u_xx;
    out[5] = e.u_xt;
  });
}

rcns_status rcns_waves_eval_composite(const rcns_waves* waves, double t, double xi, double X,
                                      double out[3]) {
  if (rcns_status s = require(waves && out, "rcns_waves_eval_composite: NULL argument")) return s;
  return guarded([&] {
    const rcns::waves::CompositeValue v = waves->composite.eval(t, xi, X);
    out[0] = v.v;
    out[1] = v.u;
    out[2] = v.pi;
  });
}

rcns_status rcns_waves_write_profile(const rcns_waves* waves, const char* csv_path,
                                     const char* json_path) {
  if (rcns_status s = require(waves && csv_path && json_path,
                              "rcns_waves_write_profile: NULL argument"))
    return s;
  return guarded([&] {
    if (!waves->composite.shock())
      throw rcns::InvalidArgumentError("rcns_waves_write_profile: no shock in this composite");
    waves->composite.shock()->write_csv(csv_path);
    rcns::io::write_text_file(json_path, waves->composite.shock()->metadata_json());
  });
}

rcns_status rcns_config_load(const char* path, rcns_config** out) {
  if (rcns_status s = require(path && out, "rcns_config_load: NULL argument")) return s;
  *out = nullptr;
  return guarded([&] { *out = new rcns_config{rcns::harness::load_config(path)}; });
}

rcns_status rcns_config_parse(const char* text, rcns_config** out) {
  if (rcns_status s = require(text && out, "rcns_config_parse: NULL argument")) return s;
  *out = nullptr;
  return guarded([&] { *out = new rcns_config{rcns::harness::parse_config_text(text)}; });
}

void rcns_config_free(rcns_config* config) { delete config; }

rcns_status rcns_experiment_run(const rcns_config* config, const char* out_dir,
                                const char* formats, int jobs, const char* forced_mode,
                                char** summary_json) {
  if (rcns_status s = require(config != nullptr, "rcns_experiment_run: config is NULL")) return s;
  if (summary_json) *summary_json = nullptr;
  return guarded([&] {
    const nlohmann::json summary = rcns::harness::run_experiment(
        config->config, out_dir ? out_dir : "", formats ? formats : "csv,json", jobs,
        forced_mode ? forced_mode : "");
    if (summary_json) {
      const std::string text = summary.dump(2);
      char* buf = static_cast<char*>(std::malloc(text.size() + 1));
      if (!buf) throw std::bad_alloc();
      std::memcpy(buf, text.c_str(), text.size() + 1);
      *summary_json = buf;
    }
  });
}

void rcns_string_free(char* str) { std::free(str); }

}  // extern "C"
