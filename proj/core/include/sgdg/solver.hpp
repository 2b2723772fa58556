#ifndef SGDG_SOLVER_HPP_
#define SGDG_SOLVER_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sgdg/field.hpp"
#include "sgdg/imex.hpp"
#include "sgdg/physics.hpp"
#include "sgdg/sensor.hpp"

namespace sgdg {

struct ForcedPenalty {
  std::size_t element;
  double gamma;
};

struct SolverOptions {
  SensorConfig sensor;
  /// When false Gamma is identically zero (apart from a forced element).
  bool sensor_enabled = true;
  std::optional<ForcedPenalty> forced;
};

struct StepInfo {
  std::size_t step;  // 0-based index of the step just taken
  double t;          // time after the step
  double dt;         // size of the step
  const FieldState &state;         // U_{n+1}
  const SensorReport &sensor;      // evaluated at U_n, as used in the step
  double change_rate;              // |U_{n+1} - U_n|_2 / dt
};

struct Snapshot {
  double t;
  FieldState state;
  SensorReport sensor;  // evaluated at `state`
};

struct AdvanceOptions {
  std::vector<double> snapshot_times;
  std::function<void(const StepInfo &)> observer;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;  // requested times, then the final state
  std::size_t steps = 0;
};

/// Semi-discrete system M U' + Gamma(U) M_pp U = R(U) and its IMEX march.
class Solver {
 public:
  Solver(Discretization disc, std::shared_ptr<const ConservationLaw> law,
         BoundaryCondition left, BoundaryCondition right,
         SolverOptions options = {});

  const Discretization &discretization() const { return disc_; }
  const ConservationLaw &law() const { return *law_; }
  int num_components() const { return law_->num_components(); }

  /// R(U): volume and sub-cell face terms plus geometric source.
  Eigen::VectorXd residual(const FieldState &u) const;

  /// Elementwise M^{-1} v.
  Eigen::VectorXd mass_solve(const Eigen::VectorXd &v) const;
  /// Elementwise M v.
  Eigen::VectorXd mass_apply(const Eigen::VectorXd &v) const;

  /// Gamma M_pp U.
  Eigen::VectorXd apply_penalty(const FieldState &u,
                                std::span<const double> gamma) const;

  /// Sensor report at U with any forced element applied to gamma.
  SensorReport penalty_parameters(const FieldState &u) const;

  /// One ARS(2,2,2) step with Gamma frozen at the given values.
  FieldState imex_step(const FieldState &u, double dt,
                       std::span<const double> gamma,
                       const ImexTableau &tableau = ImexTableau::ars222()) const;
  /// Same with Gamma = Gamma(U_n).
  FieldState imex_step(const FieldState &u, double dt,
                       const ImexTableau &tableau = ImexTableau::ars222()) const;
  /// The explicit part of the scheme alone.
  FieldState explicit_step(const FieldState &u, double dt,
                           const ImexTableau &tableau = ImexTableau::ars222()) const;

  /// Fixed-step march to t_final; steps are shortened to land on snapshot
  /// times and on t_final.
  Trajectory advance(const FieldState &u0, double dt, double t_final,
                     const AdvanceOptions &options = {}) const;

  /// Largest wave speed over quadrature points and traces.
  double max_wave_speed(const FieldState &u) const;

 private:
  void face_fluxes(const FieldState &u, Eigen::MatrixXd &fluxes) const;
  State trace(const FieldState &u, std::size_t e, int face) const;

  Discretization disc_;
  std::shared_ptr<const ConservationLaw> law_;
  BoundaryCondition left_;
  BoundaryCondition right_;
  SolverOptions options_;
  std::optional<Sensor> sensor_;  // absent when the sensor is disabled
};

/// Steps needed to reach t_final with step dt (last one possibly shorter).
std::size_t count_steps(double dt, double t_final);

}  // namespace sgdg

#endif  // SGDG_SOLVER_HPP_
