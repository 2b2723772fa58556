#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "sgdg/errors.hpp"
#include "sgdg/harness.hpp"
#include "sgdg/solver.hpp"

using namespace sgdg;

namespace {

State s1(double v) {
  State s(1);
  s[0] = v;
  return s;
}

SolverOptions no_sensor() {
  SolverOptions o;
  o.sensor_enabled = false;
  return o;
}

Solver periodic_solver(std::shared_ptr<const ConservationLaw> law, int ne, int n,
                       int p, SolverOptions options = {}) {
  return Solver(Discretization(build_uniform_mesh(0.0, 1.0, ne, n), p), std::move(law),
                BoundaryCondition::periodic(), BoundaryCondition::periodic(),
                std::move(options));
}

// Hand-rolled ARS(2,2,2) step for u' = lambda u + mu u, mu implicit.
double scalar_ars(double u, double dt, double lambda, double mu) {
  const double alpha = 1.0 - std::sqrt(0.5);
  const double delta = -2.0 * std::sqrt(2.0) / 3.0;
  const double rh1 = lambda * u;
  const double u2 = u + dt * alpha * rh1;
  const double r2 = mu * u2 / (1.0 - dt * alpha * mu);
  const double rh2 = lambda * (u2 + dt * alpha * r2);
  const double u3 = u + dt * ((1.0 - alpha) * r2 + delta * rh1 + (1.0 - delta) * rh2);
  const double r3 = mu * u3 / (1.0 - dt * alpha * mu);
  const double rh3 = lambda * (u3 + dt * alpha * r3);
  return u + dt * ((1.0 - alpha) * (r2 + rh2) + alpha * (r3 + rh3));
}

double run_scalar(double dt, double t, double lambda, double mu) {
  const ImexTableau tab = ImexTableau::ars222();
  double u = 1.0;
  const int steps = static_cast<int>(std::lround(t / dt));
  for (int k = 0; k < steps; ++k) {
    u = imex_step(u, dt, tab,
                  [&](double stage, double h) { return mu * stage / (1.0 - h * mu); },
                  [&](double stage) { return lambda * stage; });
  }
  return u;
}

}  // namespace

TEST_CASE("constant states are preserved") {
  const auto law_burgers = std::make_shared<Burgers>();
  const auto law_conv = std::make_shared<Convection>(1.0);
  const auto law_euler = std::make_shared<Euler1D>();
  for (const auto &[law, m] :
       {std::pair<std::shared_ptr<const ConservationLaw>, int>{law_burgers, 1},
        {law_conv, 1}, {law_euler, 3}}) {
    for (int p : {0, 2, 4}) {
      SolverOptions forced;
      forced.forced = ForcedPenalty{1, 1e6};
      const Solver solver = periodic_solver(law, 4, 6, p, forced);
      const auto constant = [m = m](double) {
        State s(m);
        if (m == 1) s << 0.7;
        else s << 1.2, 0.3, 3.1;
        return s;
      };
      FieldState u = project_initial(solver.discretization(), m, constant);
      const FieldState u0 = u;
      CHECK(solver.residual(u).cwiseAbs().maxCoeff() < 1e-12);
      for (int k = 0; k < 100; ++k) {
        u = solver.imex_step(u, 1e-3);
      }
      CHECK((u.coefficients() - u0.coefficients()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("one-cell elements without modes reduce to finite volumes") {
  const Solver solver = periodic_solver(std::make_shared<Burgers>(), 3, 1, 0, no_sensor());
  FieldState u(3, 1, 1);
  u.coefficients() << 1.0, -0.5, 2.0;
  // Roe flux for Burgers at each face, periodic wrap.
  const auto face = [](double l, double r) {
    const double a = 0.5 * (l + r);
    return 0.25 * (l * l + r * r) - 0.5 * std::abs(a) * (r - l);
  };
  const double f01 = face(1.0, -0.5), f12 = face(-0.5, 2.0), f20 = face(2.0, 1.0);
  const Eigen::VectorXd r = solver.residual(u);
  CHECK(r[0] == doctest::Approx(-(f01 - f20)).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(-(f12 - f01)).epsilon(1e-14));
  CHECK(r[2] == doctest::Approx(-(f20 - f12)).epsilon(1e-14));
  const Eigen::VectorXd du = solver.mass_solve(r);
  CHECK(du[0] == doctest::Approx(-3.0 * (f01 - f20)).epsilon(1e-14));
}

TEST_CASE("linear convection of a linear profile") {
  const int ne = 5, n = 3, p = 2;
  const Solver solver = periodic_solver(std::make_shared<Convection>(1.0), ne, n, p, no_sensor());
  const FieldState u = project_initial(solver.discretization(), 1, [](double x) { return s1(x); });
  FieldState du(ne, 1, p + n);
  du.coefficients() = solver.mass_solve(solver.residual(u));
  // Away from the inflow element the time derivative is -d/dx x = -1.
  for (std::size_t e = 1; e < ne; ++e) {
    CHECK(du.local(e, 0).head(p).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((du.local(e, 0).tail(n).array() + 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("penalty application") {
  const Solver solver = periodic_solver(std::make_shared<Convection>(1.0), 2, 3, 2, no_sensor());
  const Discretization &disc = solver.discretization();
  FieldState u(2, 1, 5);
  u.local(0, 0) << 0.3, -0.2, 1.0, 2.0, 3.0;
  u.local(1, 0) << 1.0, 0.0, 0.0, 0.0, 0.0;
  const std::vector<double> zero(2, 0.0), two(2, 2.0);
  CHECK(solver.apply_penalty(u, zero).norm() == 0.0);

  FieldState constant(2, 1, 5);
  constant.coefficients().setZero();
  constant.local(0, 0).tail(3).setConstant(4.0);
  CHECK(solver.apply_penalty(constant, two).norm() == 0.0);

  const Eigen::VectorXd out = solver.apply_penalty(u, two);
  const Eigen::MatrixXd mpp = assemble_penalty_mass(disc.space(1));
  CHECK((out.segment(5, 5) - 2.0 * mpp.col(0)).norm() < 1e-14);
}

TEST_CASE("scalar IMEX step matches the hand-written recurrence") {
  const double lambda = -0.8, mu = -30.0;
  for (double dt : {0.1, 0.013}) {
    const double got = run_scalar(dt, dt, lambda, mu);
    CHECK(got == doctest::Approx(scalar_ars(1.0, dt, lambda, mu)).epsilon(1e-15));
  }
}

TEST_CASE("scalar IMEX order") {
  const double lambda = -1.0, mu = -2.0, t = 1.0;
  const double exact = std::exp((lambda + mu) * t);
  double previous = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double dt = 0.1 / (1 << k);
    const double err = std::abs(run_scalar(dt, t, lambda, mu) - exact);
    if (k > 0) {
      CHECK(std::log2(previous / err) == doctest::Approx(2.0).epsilon(0.05));
    }
    previous = err;
  }
}

TEST_CASE("zero penalty gives the explicit scheme bit for bit") {
  const Solver solver = periodic_solver(std::make_shared<Burgers>(), 5, 6, 3);
  const FieldState u = project_initial(solver.discretization(), 1, [](double x) {
    return s1(0.5 + std::sin(2 * std::numbers::pi * x));
  });
  const std::vector<double> zero(5, 0.0);
  const FieldState a = solver.imex_step(u, 1e-3, zero);
  const FieldState b = solver.explicit_step(u, 1e-3);
  CHECK(a.coefficients() == b.coefficients());
}

TEST_CASE("frozen penalty damps the polynomial part") {
  std::mt19937 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  const Solver solver = periodic_solver(std::make_shared<Convection>(0.0), 4, 5, 3, no_sensor());
  const Discretization &disc = solver.discretization();
  for (int trial = 0; trial < 20; ++trial) {
    FieldState u(4, 1, 8);
    for (auto &v : u.coefficients()) v = g(rng);
    std::vector<double> gamma(4);
    for (auto &v : gamma) v = std::abs(g(rng)) * 100.0;
    const FieldState next = solver.imex_step(u, 0.01, gamma);
    CHECK(polynomial_energy(disc, next, 0) <= polynomial_energy(disc, u, 0));
  }
}

TEST_CASE("advance lands on the final time") {
  const Solver solver = periodic_solver(std::make_shared<Convection>(1.0), 4, 4, 2);
  const FieldState u0 = project_initial(solver.discretization(), 1, [](double x) {
    return s1(std::sin(2 * std::numbers::pi * x));
  });
  const double dt = 1e-3;
  std::vector<double> steps;
  AdvanceOptions opts;
  opts.observer = [&](const StepInfo &info) { steps.push_back(info.dt); };
  const Trajectory traj = solver.advance(u0, dt, 3.5 * dt, opts);
  CHECK(traj.steps == 4);
  REQUIRE(steps.size() == 4);
  CHECK(steps.back() == doctest::Approx(0.5 * dt).epsilon(1e-9));
  CHECK(traj.snapshots.back().t == 3.5 * dt);
  CHECK(count_steps(dt, 3.5 * dt) == 4);

  opts.snapshot_times = {0.0015};
  const Trajectory snap = solver.advance(u0, dt, 0.003, opts);
  REQUIRE(snap.snapshots.size() == 2);
  CHECK(snap.snapshots[0].t == 0.0015);
  CHECK(snap.snapshots[1].t == doctest::Approx(0.003).epsilon(1e-15));
}

TEST_CASE("unstable steps are reported") {
  const Solver solver = periodic_solver(std::make_shared<Convection>(1.0), 8, 4, 3, no_sensor());
  const FieldState u0 = project_initial(solver.discretization(), 1, [](double x) {
    return s1(std::sin(2 * std::numbers::pi * x));
  });
  CHECK_THROWS_AS(solver.advance(u0, 0.05, 500.0), SolverAbort);
}

TEST_CASE("mass is conserved with the sensor active") {
  RunConfig config = default_config(CaseKind::kBurgers);
  const Solver solver = make_solver(config);
  const Discretization &disc = solver.discretization();
  const FieldState u0 = initial_state(config, disc);
  const double m0 = total_mass(disc, u0, 0);
  double worst = 0.0;
  std::size_t active_at_055 = 0;
  AdvanceOptions opts;
  opts.snapshot_times = {0.55};
  opts.observer = [&](const StepInfo &info) {
    worst = std::max(worst, std::abs(total_mass(disc, info.state, 0) - m0));
  };
  const Trajectory traj = solver.advance(u0, 1e-3, 0.88, opts);
  CHECK(worst < 1e-11 * std::abs(m0));
  for (double g : traj.snapshots.front().sensor.gamma) active_at_055 += g > 0.0;
  CHECK(traj.snapshots.front().t == 0.55);
  CHECK(active_at_055 >= 1);
  CHECK(active_at_055 <= 3);
}

TEST_CASE("invalid solver setups") {
  const Discretization disc(build_uniform_mesh(0.0, 1.0, 3, 4), 2);
  CHECK_THROWS_AS(Solver(disc, std::make_shared<Burgers>(), BoundaryCondition::periodic(),
                         BoundaryCondition::solid_wall()),
                  ConfigError);
  SolverOptions bad;
  bad.forced = ForcedPenalty{5, 1.0};
  CHECK_THROWS_AS(Solver(disc, std::make_shared<Burgers>(), BoundaryCondition::periodic(),
                         BoundaryCondition::periodic(), bad),
                  ConfigError);
}
