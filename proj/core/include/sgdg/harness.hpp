#ifndef SGDG_HARNESS_HPP_
#define SGDG_HARNESS_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sgdg/config.hpp"
#include "sgdg/field.hpp"
#include "sgdg/reference.hpp"
#include "sgdg/solver.hpp"

namespace sgdg {

enum class NormKind { kL1, kL2 };
std::string_view norm_name(NormKind kind);

/// |U_c - reference| in L1 or L2 over the domain, by Gauss quadrature on
/// each sub-cell, split at the breakpoints (where the reference may jump).
double error_norm(const Discretization &disc, const FieldState &u, int c,
                  const std::function<double(double)> &reference,
                  NormKind kind, std::span<const double> breakpoints = {});

/// Ratio of the change rate |U_{n+1}-U_n|/dt to its first value below which
/// a run counts as steady.
inline constexpr double kSteadyTolerance = 1e-6;

struct RunOptions {
  /// Keep the gamma vector used in every step.
  bool record_gamma = false;
  /// Grid of the first-order reference for shock-tube cases; 0 skips it.
  int reference_cells = 8192;
  std::optional<std::filesystem::path> cache_dir;
  /// Override of the default step rule, used by the convergence study.
  std::optional<double> dt;
};

struct GammaRecord {
  double t;  // time of the state the sensor was evaluated on
  std::vector<double> gamma;
};

struct RunResult {
  RunResult(RunConfig config_, Discretization disc_, FieldState initial_)
      : config(std::move(config_)),
        disc(std::move(disc_)),
        initial(std::move(initial_)) {}

  RunConfig config;
  Discretization disc;
  FieldState initial;
  Trajectory trajectory;
  double dt = 0.0;
  double wall_seconds = 0.0;
  std::vector<double> mass_initial;
  std::vector<double> mass_final;
  double initial_change_rate = 0.0;
  double final_change_rate = 0.0;
  std::optional<double> steady_time;
  /// Component 0, Legendre-mode part.
  double polynomial_energy_initial = 0.0;
  double polynomial_energy_final = 0.0;
  /// Max of component 0 sampled densely at the final time.
  double peak_final = 0.0;
  /// Convection: against pi_delta u_0. Shock tubes: density against the
  /// fine-grid reference (L1 only).
  std::optional<double> error_l1;
  std::optional<double> error_l2;
  std::vector<GammaRecord> gamma_log;

  const FieldState &final_state() const {
    return trajectory.snapshots.back().state;
  }
  const SensorReport &final_sensor() const {
    return trajectory.snapshots.back().sensor;
  }
};

/// Mesh, law and penalty settings of a config.
Discretization make_discretization(const RunConfig &config);
Solver make_solver(const RunConfig &config);

/// U_0: pi_delta u_0, re-projected with the penalized projection in
/// elements where the sensor flags pi_delta u_0.
FieldState initial_state(const RunConfig &config, const Discretization &disc);

/// dt = kDefaultCfl * h_sub / lambda_max(U_0).
double default_time_step(const Solver &solver, const FieldState &u0);

RunResult run_case(const RunConfig &config, const RunOptions &options = {});

/// Writes snapshot_t<time>.csv and sensor_t<time>.csv for every snapshot
/// and summary.json into config.output_dir.
void write_outputs(const RunResult &result);
std::string summary_json(const RunResult &result);
/// Stable file-name rendering of a snapshot time.
std::string time_label(double t);

struct ErrorRecord {
  int n_elements = 0;
  double h = 0.0;
  int p = 0;
  int n = 0;
  NormKind norm = NormKind::kL2;
  double error = 0.0;
  /// From the second level onward.
  std::optional<double> observed_order;
  bool failed = false;
  std::string message;
};

/// Runs the base config for each element count, recording L1 and L2 errors
/// and orders log(e_i/e_{i+1}) / log(h_i/h_{i+1}). The step shrinks like
/// h^{(p+1)/2} from the first level's step so the second-order time error
/// keeps pace with the spatial error. A failing level is recorded and the
/// study continues.
std::vector<ErrorRecord> convergence_study(const RunConfig &base,
                                           const std::vector<int> &levels,
                                           const RunOptions &options = {});
std::string convergence_csv(const std::vector<ErrorRecord> &records);

}  // namespace sgdg

#endif  // SGDG_HARNESS_HPP_
