#ifndef SGDG_SENSOR_HPP_
#define SGDG_SENSOR_HPP_

#include <optional>
#include <vector>

#include "sgdg/basis.hpp"
#include "sgdg/field.hpp"
#include "sgdg/projections.hpp"

namespace sgdg {

struct SensorConfig {
  double c_pen = 1e7;
  /// Threshold on s/s0; defaults to 0.01 / p.
  std::optional<double> tau;
  double s_eps = 1e-10;

  double tau_for(int p) const;
};

/// Per-element sensor values. For systems, s and s0 belong to the component
/// with the largest ratio s/s0, which also sets gamma.
struct SensorReport {
  std::vector<double> s;
  std::vector<double> s0;
  std::vector<double> gamma;
};

/// Max over sub-cells of |avg(u) - avg(best polynomial)|.
double sensor_value(const LocalCoefficients &c, const ElementSpace &space);
/// Max |sub-cell average| + s_eps.
double sensor_scale(const LocalCoefficients &c, const ElementSpace &space,
                    double s_eps);
/// C_pen * max(0, s/s0 - tau).
double penalty(double s, double s0, double c_pen, double tau);

/// Reusable evaluator for one (p, n) configuration.
class Sensor {
 public:
  Sensor(const Discretization &disc, SensorConfig config);

  SensorReport evaluate(const FieldState &u) const;
  const SensorConfig &config() const { return config_; }

 private:
  int p_;
  int n_;
  Eigen::MatrixXd averages_;
  SensorConfig config_;
  std::optional<AveragePreservingProjector> projector_;  // empty for p = 0
};

SensorReport evaluate_field_sensor(const FieldState &u,
                                   const Discretization &disc,
                                   const SensorConfig &config);

}  // namespace sgdg

#endif  // SGDG_SENSOR_HPP_
