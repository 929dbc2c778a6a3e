#ifndef RCNS_HARNESS_HPP
#define RCNS_HARNESS_HPP

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagnostics.hpp"
#include "shift.hpp"
#include "solver.hpp"
#include "waves.hpp"

namespace rcns::harness {

enum class ExperimentKind { stability, relax_sweep, profile_only, entropy_check, simulate };
enum class PerturbShape { gaussian_bump, zero };

// Flat key/value configuration with dotted sections. Every key below is
// mandatory except sweep.tau_list (sweeps only). The sizing knobs grid.L,
// shift.lambda_amp, perturbation.center and perturbation.width accept the
// literal value "auto".
struct ExperimentConfig {
  double gamma = 0.0, mu = 0.0, tau = 0.0;                  // model.*
  double v_plus = 0.0, u_plus = 0.0, v_m = 0.0, v_minus = 0.0;  // states.*
  double L = -1.0;                                           // grid.L; < 0 -> auto
  int N = 0;                                                 // grid.N
  double cfl = 0.0, end_time = 0.0;                          // solver.*
  int output_stride = 0;
  double lambda_amp = -1.0;                                  // shift.lambda_amp; < 0 -> auto
  PerturbShape shape = PerturbShape::zero;                   // perturbation.*
  double amplitude = 0.0;
  double center = 0.0, width = 0.0;
  bool center_auto = false, width_auto = false;
  std::string target_fields;                                 // "v" | "u" | "vu"
  ExperimentKind experiment = ExperimentKind::stability;
  std::vector<double> tau_list;                              // sweep.tau_list
  std::string output_dir;
  long long seed = 0;

  std::string source_text;  // original config text, echoed into summaries
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
// canonical config text for configs assembled in code
std::string render_config(const ExperimentConfig& cfg);

struct OutputFormats {
  bool csv = true;
  bool json = true;
  bool svg = false;
};
OutputFormats parse_formats(const std::string& comma_list);

// Waves, weight, grid and resolved sizing defaults for one configuration.
// Construction performs the full validation, including the relaxation-time
// window tau <= min(inf mu/|sigma^2 + p'|, 1).
struct BuiltExperiment {
  eos::GasModel model;
  waves::WaveEndStates states;
  std::shared_ptr<const waves::ShockProfile> shock;
  std::shared_ptr<const waves::RarefactionWave> rarefaction;
  std::shared_ptr<const waves::CompositeWave> composite;
  std::shared_ptr<const shift::WeightSpec> weight;
  solver::Grid grid;
  double lambda = 0.0;
  double center = 0.0, width = 0.0;
};

BuiltExperiment build_experiment(const ExperimentConfig& cfg);

// Composite wave at t = 0 plus the configured perturbation; the stress field
// starts on the composite.
solver::FieldState initial_state(const BuiltExperiment& built, const ExperimentConfig& cfg);

nlohmann::json run_stability(const ExperimentConfig& cfg, const std::string& out_dir,
                             const OutputFormats& formats, bool simulate_mode = false);
nlohmann::json run_entropy_check(const ExperimentConfig& cfg, const std::string& out_dir,
                                 const OutputFormats& formats);
nlohmann::json run_relax_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                               const OutputFormats& formats, int jobs);
nlohmann::json run_profile_only(const ExperimentConfig& cfg, const std::string& out_dir,
                                const OutputFormats& formats);

// Dispatch on cfg.experiment, or on forced_kind when nonempty ("profile",
// "simulate", "stability", "relax-sweep", "entropy-check"). Returns the
// summary that was written to <out_dir>/summary.json.
nlohmann::json run_experiment(const ExperimentConfig& cfg, const std::string& out_dir_override,
                              const std::string& formats_list, int jobs,
                              const std::string& forced_kind = "");

}  // namespace rcns::harness

#endif
