#include "sgdg/sensor.hpp"

#include <algorithm>
#include <cmath>

#include "sgdg/errors.hpp"

namespace sgdg {

double SensorConfig::tau_for(int p) const {
  if (tau) return *tau;
  return p > 0 ? 0.01 / p : 0.0;
}

double sensor_value(const LocalCoefficients &c, const ElementSpace &space) {
  if (space.degree() == 0) return 0.0;
  const AveragePreservingProjector projector(space);
  return projector.residual(project_lo(c, space)).cwiseAbs().maxCoeff();
}

double sensor_scale(const LocalCoefficients &c, const ElementSpace &space,
                    double s_eps) {
  if (!(s_eps > 0.0)) throw ConfigError("s_eps must be positive");
  return project_lo(c, space).cwiseAbs().maxCoeff() + s_eps;
}

double penalty(double s, double s0, double c_pen, double tau) {
  return c_pen * std::max(0.0, s / s0 - tau);
}

Sensor::Sensor(const Discretization &disc, SensorConfig config)
    : p_(disc.degree()),
      n_(disc.n_sub()),
      averages_(disc.subcell_averages()),
      config_(config) {
  if (disc.degree() > 0) projector_.emplace(disc.space(0));
}

SensorReport Sensor::evaluate(const FieldState &u) const {
  const std::size_t ne = u.num_elements();
  const int p = p_;
  const int n = n_;
  SensorReport report;
  report.s.assign(ne, 0.0);
  report.s0.assign(ne, 0.0);
  report.gamma.assign(ne, 0.0);
  const double tau = config_.tau_for(p);
  Eigen::VectorXd avg(n);
  for (std::size_t e = 0; e < ne; ++e) {
    double best_ratio = -1.0;
    for (int c = 0; c < u.num_components(); ++c) {
      const auto local = u.local(e, c);
      avg = local.tail(n);
      if (p > 0) avg += averages_.rightCols(p) * local.head(p);
      const double s =
          projector_ ? projector_->residual(avg).cwiseAbs().maxCoeff() : 0.0;
      const double s0 = avg.cwiseAbs().maxCoeff() + config_.s_eps;
      if (s / s0 > best_ratio) {
        best_ratio = s / s0;
        report.s[e] = s;
        report.s0[e] = s0;
      }
    }
    if (p > 0) {
      report.gamma[e] = penalty(report.s[e], report.s0[e], config_.c_pen, tau);
    }
  }
  return report;
}

SensorReport evaluate_field_sensor(const FieldState &u,
                                   const Discretization &disc,
                                   const SensorConfig &config) {
  return Sensor(disc, config).evaluate(u);
}

}  // namespace sgdg
