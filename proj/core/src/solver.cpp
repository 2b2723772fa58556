#include "sgdg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sgdg/errors.hpp"
#include "sgdg/projections.hpp"

namespace sgdg {
namespace {

FieldState like(const FieldState &shape, Eigen::VectorXd coefficients,
                double time) {
  FieldState out(shape.num_elements(), shape.num_components(), shape.dof());
  out.coefficients() = std::move(coefficients);
  out.time = time;
  return out;
}

[[noreturn]] void inadmissible(const char *where, std::size_t e, int sub,
                               double x) {
  std::ostringstream os;
  os << "inadmissible state at " << where << " of element " << e
     << ", sub-cell " << sub << " (x=" << x << ")";
  throw AdmissibilityError(os.str());
}

}  // namespace

std::size_t count_steps(double dt, double t_final) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_final > 0.0)) return 0;
  return static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
}

Solver::Solver(Discretization disc, std::shared_ptr<const ConservationLaw> law,
               BoundaryCondition left, BoundaryCondition right,
               SolverOptions options)
    : disc_(std::move(disc)),
      law_(std::move(law)),
      left_(std::move(left)),
      right_(std::move(right)),
      options_(std::move(options)) {
  if (options_.sensor_enabled) sensor_.emplace(disc_, options_.sensor);
  const bool lp = left_.kind() == BoundaryCondition::Kind::kPeriodic;
  const bool rp = right_.kind() == BoundaryCondition::Kind::kPeriodic;
  if (lp != rp) {
    throw ConfigError("periodic conditions must be applied at both ends");
  }
  if (options_.forced && options_.forced->element >= disc_.num_elements()) {
    throw ConfigError("forced penalty element out of range");
  }
  if (options_.forced && options_.forced->gamma < 0.0) {
    throw ConfigError("forced penalty must be non-negative");
  }
}

State Solver::trace(const FieldState &u, std::size_t e, int face) const {
  // Value seen from sub-cell `face` (or face-1 at the right element end).
  const int p = disc_.degree();
  const int n = disc_.n_sub();
  const int sub = std::min(face, n - 1);
  const auto &fp = disc_.tables().face_poly;
  State v(num_components());
  for (int c = 0; c < num_components(); ++c) {
    const auto local = u.local(e, c);
    double val = local[p + sub];
    for (int k = 0; k < p; ++k) val += fp(face, k) * local[k];
    v[c] = val;
  }
  return v;
}

void Solver::face_fluxes(const FieldState &u, Eigen::MatrixXd &fluxes) const {
  const int n = disc_.n_sub();
  const std::size_t ne = disc_.num_elements();
  const std::size_t nf = ne * n;
  const Mesh &mesh = disc_.mesh();
  fluxes.resize(num_components(), static_cast<Eigen::Index>(nf + 1));

  auto check = [&](const State &s, std::size_t e, int sub, double x) {
    if (!law_->admissible(s, x)) inadmissible("a face", e, sub, x);
  };

  for (std::size_t g = 1; g < nf; ++g) {
    const std::size_t el = (g - 1) / n;
    const int jl = static_cast<int>((g - 1) % n);
    const std::size_t er = g / n;
    const int jr = static_cast<int>(g % n);
    const double x = mesh.subcell(er, jr).left;
    // Left trace taken at the right face of sub-cell jl; within an element
    // only the indicator part differs between the two sides.
    State ul = trace(u, el, jl + 1);
    if (jl + 1 < n) {
      for (int c = 0; c < num_components(); ++c) {
        const auto local = u.local(el, c);
        ul[c] += local[disc_.degree() + jl] - local[disc_.degree() + jl + 1];
      }
    }
    const State ur = trace(u, er, jr);
    check(ul, el, jl, x);
    check(ur, er, jr, x);
    fluxes.col(static_cast<Eigen::Index>(g)) = law_->roe_flux(ul, ur, x);
  }

  const State first = trace(u, 0, 0);
  const State last = trace(u, ne - 1, n);
  check(first, 0, 0, mesh.left());
  check(last, ne - 1, n - 1, mesh.right());
  if (left_.kind() == BoundaryCondition::Kind::kPeriodic) {
    const State f = law_->roe_flux(last, first, mesh.left());
    fluxes.col(0) = f;
    fluxes.col(static_cast<Eigen::Index>(nf)) = f;
    return;
  }
  const State ghost_l = boundary_ghost(left_, first, last, *law_, mesh.left());
  const State ghost_r = boundary_ghost(right_, last, first, *law_, mesh.right());
  fluxes.col(0) = law_->roe_flux(ghost_l, first, mesh.left());
  fluxes.col(static_cast<Eigen::Index>(nf)) =
      law_->roe_flux(last, ghost_r, mesh.right());
}

Eigen::VectorXd Solver::residual(const FieldState &u) const {
  const int m = num_components();
  const int p = disc_.degree();
  const int n = disc_.n_sub();
  const ReferenceTables &t = disc_.tables();
  const int q = t.points_per_subcell;
  const std::size_t ne = disc_.num_elements();
  const bool with_source = law_->has_source();

  Eigen::MatrixXd fluxes;
  face_fluxes(u, fluxes);

  Eigen::VectorXd out = Eigen::VectorXd::Zero(u.coefficients().size());
  const double *coef = u.coefficients().data();
  double *res = out.data();
  State uq(m);
  for (std::size_t e = 0; e < ne; ++e) {
    const Interval geo = disc_.mesh().element(e);
    const double jac = 0.5 * geo.width();
    const double center = geo.center();
    for (int pt = 0; pt < t.num_points(); ++pt) {
      const int j = pt / q;
      for (int c = 0; c < m; ++c) {
        const double *local = coef + u.offset(e, c);
        double v = local[p + j];
        for (int k = 0; k < p; ++k) v += t.poly(pt, k) * local[k];
        uq[c] = v;
      }
      const double x = center + jac * t.xi[pt];
      if (!law_->admissible(uq, x)) inadmissible("a quadrature point", e, j, x);
      const double w = t.weight[pt];
      if (p > 0) {
        // (F, d phi/dx)_k = int F dL/dxi dxi; the Jacobians cancel.
        const State f = law_->flux(uq, x);
        for (int c = 0; c < m; ++c) {
          double *r = res + u.offset(e, c);
          const double wf = w * f[c];
          for (int k = 0; k < p; ++k) r[k] += wf * t.poly_deriv(pt, k);
        }
      }
      if (with_source) {
        const State s = law_->source(uq, x);
        for (int c = 0; c < m; ++c) {
          double *r = res + u.offset(e, c);
          const double ws = w * jac * s[c];
          for (int k = 0; k < p; ++k) r[k] += ws * t.poly(pt, k);
          r[p + j] += ws;
        }
      }
    }
    const auto gl = static_cast<Eigen::Index>(e * n);
    const auto gr = gl + n;
    for (int c = 0; c < m; ++c) {
      double *r = res + u.offset(e, c);
      // Interior sub-cell faces cancel for the element-wide Legendre modes.
      for (int k = 0; k < p; ++k) {
        r[k] -= fluxes(c, gr) * t.face_poly(n, k) -
                fluxes(c, gl) * t.face_poly(0, k);
      }
      for (int j = 0; j < n; ++j) {
        r[p + j] -= fluxes(c, gl + j + 1) - fluxes(c, gl + j);
      }
    }
  }
  return out;
}

Eigen::VectorXd Solver::mass_solve(const Eigen::VectorXd &v) const {
  Eigen::VectorXd out(v.size());
  const int dof = disc_.dof();
  const auto &factor = disc_.reference_mass_factor();
  const std::size_t blocks = static_cast<std::size_t>(v.size()) / dof;
  const int m = num_components();
  for (std::size_t b = 0; b < blocks; ++b) {
    const double jac = disc_.jacobian(b / m);
    const auto off = static_cast<Eigen::Index>(b * dof);
    out.segment(off, dof) = factor.solve(v.segment(off, dof)) / jac;
  }
  return out;
}

Eigen::VectorXd Solver::mass_apply(const Eigen::VectorXd &v) const {
  Eigen::VectorXd out(v.size());
  const int dof = disc_.dof();
  const std::size_t blocks = static_cast<std::size_t>(v.size()) / dof;
  const int m = num_components();
  for (std::size_t b = 0; b < blocks; ++b) {
    const double jac = disc_.jacobian(b / m);
    const auto off = static_cast<Eigen::Index>(b * dof);
    out.segment(off, dof) =
        jac * (disc_.reference_matrices().mass * v.segment(off, dof));
  }
  return out;
}

Eigen::VectorXd Solver::apply_penalty(const FieldState &u,
                                      std::span<const double> gamma) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(u.coefficients().size());
  const auto &mpp = disc_.reference_matrices().penalty_mass;
  for (std::size_t e = 0; e < u.num_elements(); ++e) {
    if (gamma[e] == 0.0) continue;
    if (gamma[e] < 0.0) throw ConfigError("penalty must be non-negative");
    const double scale = gamma[e] * disc_.jacobian(e);
    for (int c = 0; c < u.num_components(); ++c) {
      const auto off = static_cast<Eigen::Index>(u.offset(e, c));
      out.segment(off, u.dof()) = scale * (mpp * u.local(e, c));
    }
  }
  return out;
}

SensorReport Solver::penalty_parameters(const FieldState &u) const {
  SensorReport report;
  if (options_.sensor_enabled) {
    report = sensor_->evaluate(u);
  } else {
    report.s.assign(u.num_elements(), 0.0);
    report.s0.assign(u.num_elements(), 0.0);
    report.gamma.assign(u.num_elements(), 0.0);
  }
  if (options_.forced) report.gamma[options_.forced->element] = options_.forced->gamma;
  return report;
}

FieldState Solver::imex_step(const FieldState &u, double dt,
                             std::span<const double> gamma,
                             const ImexTableau &tableau) const {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const std::size_t ne = u.num_elements();
  const int m = u.num_components();
  const int dof = u.dof();
  const auto &ref = disc_.reference_matrices();

  bool any_penalty = false;
  for (std::size_t e = 0; e < ne; ++e) {
    if (gamma[e] < 0.0) throw ConfigError("penalty must be non-negative");
    any_penalty = any_penalty || gamma[e] > 0.0;
  }

  // Stage matrices (M + kappa gamma_K M_pp), factorized once per distinct
  // kappa; the element Jacobian cancels from both sides.
  double cached_kappa = -1.0;
  std::vector<std::optional<PenalizedSystem>> systems(ne);

  auto implicit = [&](const Eigen::VectorXd &stage, double kappa) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(stage.size());
    if (!any_penalty) return r;
    if (kappa != cached_kappa) {
      for (std::size_t e = 0; e < ne; ++e) {
        if (gamma[e] > 0.0) {
          systems[e].emplace(ref, kappa * gamma[e]);
        }
      }
      cached_kappa = kappa;
    }
    for (std::size_t e = 0; e < ne; ++e) {
      if (gamma[e] == 0.0) continue;
      for (int c = 0; c < m; ++c) {
        const auto off = static_cast<Eigen::Index>(u.offset(e, c));
        const Eigen::VectorXd rhs =
            -gamma[e] * (ref.penalty_mass * stage.segment(off, dof));
        r.segment(off, dof) = systems[e]->solve(rhs);
      }
    }
    return r;
  };
  auto explicit_part = [&](const Eigen::VectorXd &v) {
    return mass_solve(residual(like(u, v, u.time)));
  };

  Eigen::VectorXd next =
      sgdg::imex_step(u.coefficients(), dt, tableau, implicit, explicit_part);
  return like(u, std::move(next), u.time + dt);
}

FieldState Solver::imex_step(const FieldState &u, double dt,
                             const ImexTableau &tableau) const {
  const SensorReport report = penalty_parameters(u);
  return imex_step(u, dt, report.gamma, tableau);
}

FieldState Solver::explicit_step(const FieldState &u, double dt,
                                 const ImexTableau &tableau) const {
  auto explicit_part = [&](const Eigen::VectorXd &v) {
    return mass_solve(residual(like(u, v, u.time)));
  };
  Eigen::VectorXd next =
      sgdg::explicit_step(u.coefficients(), dt, tableau, explicit_part);
  return like(u, std::move(next), u.time + dt);
}

double Solver::max_wave_speed(const FieldState &u) const {
  const int m = num_components();
  const int p = disc_.degree();
  const ReferenceTables &t = disc_.tables();
  double speed = 0.0;
  State uq(m);
  for (std::size_t e = 0; e < disc_.num_elements(); ++e) {
    const Interval geo = disc_.mesh().element(e);
    for (int pt = 0; pt < t.num_points(); ++pt) {
      const int j = t.subcell_of_point(pt);
      for (int c = 0; c < m; ++c) {
        const auto local = u.local(e, c);
        double v = local[p + j];
        for (int k = 0; k < p; ++k) v += t.poly(pt, k) * local[k];
        uq[c] = v;
      }
      const double x = geo.center() + 0.5 * geo.width() * t.xi[pt];
      speed = std::max(speed, law_->max_wave_speed(uq, x));
    }
  }
  return speed;
}

Trajectory Solver::advance(const FieldState &u0, double dt, double t_final,
                           const AdvanceOptions &options) const {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_final > u0.time)) throw ConfigError("t_final must exceed start time");

  std::vector<double> targets;
  for (double ts : options.snapshot_times) {
    if (ts > u0.time && ts < t_final) targets.push_back(ts);
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  const std::size_t num_snapshots = targets.size();
  targets.push_back(t_final);

  Trajectory traj;
  FieldState current = u0;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const double target = targets[ti];
    while (current.time < target) {
      double h = std::min(dt, target - current.time);
      bool lands = h < dt || target - (current.time + dt) <= 1e-9 * dt;
      if (lands) h = target - current.time;
      if (h <= 1e-12 * dt) break;

      const SensorReport report = penalty_parameters(current);
      FieldState next;
      try {
        next = imex_step(current, h, report.gamma);
      } catch (const AdmissibilityError &err) {
        std::ostringstream os;
        os << err.what() << " during step " << traj.steps << " (t="
           << current.time << ")";
        throw AdmissibilityError(os.str());
      }
      next.time = lands ? target : current.time + h;
      if (!next.all_finite()) {
        std::ostringstream os;
        os << "non-finite state after step " << traj.steps << " (t="
           << next.time << ")";
        throw SolverAbort(os.str());
      }
      const double rate =
          (next.coefficients() - current.coefficients()).norm() / h;
      if (options.observer) {
        options.observer(
            StepInfo{traj.steps, next.time, h, next, report, rate});
      }
      current = std::move(next);
      ++traj.steps;
    }
    if (ti < num_snapshots) {
      traj.snapshots.push_back({target, current, penalty_parameters(current)});
    }
  }
  traj.snapshots.push_back({current.time, current, penalty_parameters(current)});
  return traj;
}

}  // namespace sgdg
