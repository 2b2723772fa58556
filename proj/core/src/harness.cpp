#include "sgdg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sgdg/errors.hpp"
#include "sgdg/quadrature.hpp"

namespace sgdg {
namespace {

std::vector<std::string> component_names(const ConservationLaw &law) {
  if (law.name() == "euler1d") return {"rho", "rho_u", "rho_E"};
  if (law.name() == "nozzle") return {"A_rho", "A_rho_u", "A_rho_E"};
  return {"u"};
}

SensorConfig sensor_config(const RunConfig &c) {
  SensorConfig s;
  s.c_pen = c.c_pen;
  s.tau = c.tau;
  return s;
}

bool is_convection(CaseKind k) {
  return k == CaseKind::kConvectionGaussian ||
         k == CaseKind::kConvectionHeaviside ||
         k == CaseKind::kConvectionRecovery;
}

bool is_shock_tube(CaseKind k) {
  return k == CaseKind::kShuOsher || k == CaseKind::kFvComparison;
}

double sampled_max(const Discretization &disc, const FieldState &u, int c) {
  // Eight points per sub-cell, faces excluded.
  constexpr int kSamples = 8;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < disc.num_elements(); ++e) {
    const ElementSpace space = disc.space(e);
    for (int j = 0; j < disc.n_sub(); ++j) {
      const Interval k = space.subcell(j);
      for (int s = 0; s < kSamples; ++s) {
        const double x = k.left + (s + 0.5) * k.width() / kSamples;
        best = std::max(best, evaluate(space, u.local(e, c), x));
      }
    }
  }
  return best;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string_view norm_name(NormKind kind) {
  return kind == NormKind::kL1 ? "L1" : "L2";
}

double error_norm(const Discretization &disc, const FieldState &u, int c,
                  const std::function<double(double)> &reference,
                  NormKind kind, std::span<const double> breakpoints) {
  std::vector<double> sorted(breakpoints.begin(), breakpoints.end());
  std::sort(sorted.begin(), sorted.end());
  const GaussRule rule = gauss_rule(disc.degree() + 4);
  double sum = 0.0;
  std::vector<double> cuts;
  for (std::size_t e = 0; e < disc.num_elements(); ++e) {
    const ElementSpace space = disc.space(e);
    const auto local = u.local(e, c);
    for (int j = 0; j < disc.n_sub(); ++j) {
      const Interval k = space.subcell(j);
      cuts.assign({k.left});
      for (auto it = std::upper_bound(sorted.begin(), sorted.end(), k.left);
           it != sorted.end() && *it < k.right; ++it) {
        cuts.push_back(*it);
      }
      cuts.push_back(k.right);
      for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
        const double a = cuts[piece];
        const double w = cuts[piece + 1] - a;
        for (std::size_t g = 0; g < rule.size(); ++g) {
          const double x = a + 0.5 * w * (rule.nodes[g] + 1.0);
          // Evaluate inside sub-cell j even at rounding-level edge cases.
          double v = local[disc.degree() + j];
          const double xi = space.to_reference(x);
          for (int m = 0; m < disc.degree(); ++m) {
            v += local[m] * legendre_eval(m + 1, xi);
          }
          const double d = std::abs(v - reference(x));
          sum += 0.5 * w * rule.weights[g] * (kind == NormKind::kL1 ? d : d * d);
        }
      }
    }
  }
  return kind == NormKind::kL1 ? sum : std::sqrt(sum);
}

Discretization make_discretization(const RunConfig &config) {
  const CaseSetup setup = make_case(config.kind);
  return Discretization(build_uniform_mesh(setup.left, setup.right,
                                           static_cast<std::size_t>(config.n_elements),
                                           config.n),
                        config.p);
}

Solver make_solver(const RunConfig &config) {
  const CaseSetup setup = make_case(config.kind);
  SolverOptions options;
  options.sensor = sensor_config(config);
  options.sensor_enabled = config.c_pen > 0.0 && config.p > 0;
  options.forced = config.force_gamma;
  return Solver(make_discretization(config), setup.law, setup.left_bc,
                setup.right_bc, options);
}

FieldState initial_state(const RunConfig &config, const Discretization &disc) {
  const CaseSetup setup = make_case(config.kind);
  const int m = setup.law->num_components();
  FieldState u = project_initial(disc, m, setup.initial, setup.breakpoints);
  if (config.c_pen > 0.0 && config.p > 0) {
    const SensorReport report =
        Sensor(disc, sensor_config(config)).evaluate(u);
    const bool flagged = std::any_of(report.gamma.begin(), report.gamma.end(),
                                     [](double g) { return g > 0.0; });
    if (flagged) {
      u = project_initial(disc, m, setup.initial, setup.breakpoints,
                          report.gamma);
    }
  }
  return u;
}

double default_time_step(const Solver &solver, const FieldState &u0) {
  const Mesh &mesh = solver.discretization().mesh();
  const double h_sub = mesh.length() / mesh.num_subcells();
  const double speed = solver.max_wave_speed(u0);
  if (!(speed > 0.0)) throw ConfigError("initial wave speed is zero");
  return kDefaultCfl * h_sub / speed;
}

RunResult run_case(const RunConfig &config, const RunOptions &options) {
  validate(config);
  const CaseSetup setup = make_case(config.kind);
  const Solver solver = make_solver(config);
  const Discretization &disc = solver.discretization();
  const int m = setup.law->num_components();

  RunResult r(config, disc, initial_state(config, disc));
  r.dt = options.dt.value_or(config.dt.value_or(default_time_step(solver, r.initial)));
  for (int c = 0; c < m; ++c) r.mass_initial.push_back(total_mass(disc, r.initial, c));
  r.polynomial_energy_initial = polynomial_energy(disc, r.initial, 0);

  const auto start = std::chrono::steady_clock::now();
  if (config.t_final > 0.0) {
    AdvanceOptions advance;
    advance.snapshot_times = config.snapshot_times;
    bool first = true;
    advance.observer = [&](const StepInfo &info) {
      if (first) {
        r.initial_change_rate = info.change_rate;
        first = false;
      }
      r.final_change_rate = info.change_rate;
      if (!r.steady_time &&
          info.change_rate < kSteadyTolerance * r.initial_change_rate) {
        r.steady_time = info.t;
      }
      if (options.record_gamma) {
        r.gamma_log.push_back({info.t - info.dt, info.sensor.gamma});
      }
    };
    r.trajectory = solver.advance(r.initial, r.dt, config.t_final, advance);
  } else {
    r.trajectory.snapshots.push_back(
        {0.0, r.initial, solver.penalty_parameters(r.initial)});
  }
  r.wall_seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();

  const FieldState &u = r.final_state();
  for (int c = 0; c < m; ++c) r.mass_final.push_back(total_mass(disc, u, c));
  r.polynomial_energy_final = polynomial_energy(disc, u, 0);
  r.peak_final = sampled_max(disc, u, 0);

  if (is_convection(config.kind)) {
    // Against pi_delta u_0: after one period the exact solution is u_0.
    const FieldState reference =
        project_initial(disc, m, setup.initial, setup.breakpoints);
    const auto ref = [&](double x) { return evaluate(disc, reference, 0, x); };
    r.error_l1 = error_norm(disc, u, 0, ref, NormKind::kL1);
    r.error_l2 = error_norm(disc, u, 0, ref, NormKind::kL2);
  } else if (is_shock_tube(config.kind) && options.reference_cells > 0 &&
             std::abs(config.t_final - kShuOsherFinalTime) < 1e-12) {
    const FvSolution ref = fv_reference(CaseKind::kShuOsher,
                                        options.reference_cells,
                                        options.cache_dir);
    const std::vector<double> faces = ref.faces();
    r.error_l1 = error_norm(
        disc, u, 0, [&](double x) { return ref(0, x); }, NormKind::kL1, faces);
  }
  return r;
}

std::string time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

std::string summary_json(const RunResult &r) {
  nlohmann::ordered_json j;
  j["case"] = std::string(case_name(r.config.kind));
  nlohmann::ordered_json cfg;
  for (const auto &key : config_keys()) cfg[key] = to_key_values(r.config).at(key);
  j["config"] = cfg;
  j["dt"] = r.dt;
  j["steps"] = r.trajectory.steps;
  j["t_final"] = r.final_state().time;
  j["wall_time_s"] = r.wall_seconds;
  j["mass_initial"] = r.mass_initial;
  j["mass_final"] = r.mass_final;
  std::vector<double> drift;
  for (std::size_t c = 0; c < r.mass_initial.size(); ++c) {
    const double scale = std::max(std::abs(r.mass_initial[c]), 1e-300);
    drift.push_back(std::abs(r.mass_final[c] - r.mass_initial[c]) / scale);
  }
  j["mass_drift_relative"] = drift;
  nlohmann::ordered_json err = nlohmann::ordered_json::object();
  if (r.error_l1) err["L1"] = *r.error_l1;
  if (r.error_l2) err["L2"] = *r.error_l2;
  j["errors"] = err;
  nlohmann::ordered_json steady;
  steady["reached"] = r.steady_time.has_value();
  steady["time"] = r.steady_time ? nlohmann::ordered_json(*r.steady_time)
                                 : nlohmann::ordered_json(nullptr);
  steady["initial_change_rate"] = r.initial_change_rate;
  steady["final_change_rate"] = r.final_change_rate;
  j["steady"] = steady;
  j["polynomial_energy_initial"] = r.polynomial_energy_initial;
  j["polynomial_energy_final"] = r.polynomial_energy_final;
  j["peak_final"] = r.peak_final;
  j["gamma_final"] = r.final_sensor().gamma;
  return j.dump(2) + "\n";
}

void write_outputs(const RunResult &r) {
  const std::filesystem::path dir(r.config.output_dir);
  std::filesystem::create_directories(dir);
  const auto names = component_names(*make_case(r.config.kind).law);
  const Discretization &disc = r.disc;
  const int m = static_cast<int>(names.size());
  const int p = disc.degree();

  for (const Snapshot &snap : r.trajectory.snapshots) {
    const std::string label = time_label(snap.t);
    std::ofstream csv(dir / ("snapshot_t" + label + ".csv"));
    csv << "x,element,subcell,sample";
    for (const auto &name : names) csv << "," << name;
    for (const auto &name : names) csv << ",avg_" << name;
    csv << ",s,s0,gamma\n";
    std::vector<Eigen::VectorXd> averages;
    for (int c = 0; c < m; ++c) averages.push_back(subcell_averages(disc, snap.state, c));
    // Sub-cell centre (sample 0) and, with polynomial modes, four more
    // points per sub-cell for plotting.
    const int samples = p > 0 ? 5 : 1;
    for (std::size_t e = 0; e < disc.num_elements(); ++e) {
      const ElementSpace space = disc.space(e);
      for (int j = 0; j < disc.n_sub(); ++j) {
        const Interval k = space.subcell(j);
        for (int s = 0; s < samples; ++s) {
          const double x = s == 0 ? k.center()
                                  : k.left + (s - 0.5) * k.width() / (samples - 1);
          csv << format_number(x) << "," << e << "," << j << "," << s;
          for (int c = 0; c < m; ++c) {
            csv << "," << format_number(evaluate(space, snap.state.local(e, c), x));
          }
          const auto g = static_cast<Eigen::Index>(e) * disc.n_sub() + j;
          for (int c = 0; c < m; ++c) csv << "," << format_number(averages[c][g]);
          csv << "," << format_number(snap.sensor.s[e]) << ","
              << format_number(snap.sensor.s0[e]) << ","
              << format_number(snap.sensor.gamma[e]) << "\n";
        }
      }
    }
    std::ofstream sensor(dir / ("sensor_t" + label + ".csv"));
    sensor << "element,left,right,s,s0,gamma\n";
    for (std::size_t e = 0; e < disc.num_elements(); ++e) {
      const Interval k = disc.mesh().element(e);
      sensor << e << "," << format_number(k.left) << ","
             << format_number(k.right) << "," << format_number(snap.sensor.s[e])
             << "," << format_number(snap.sensor.s0[e]) << ","
             << format_number(snap.sensor.gamma[e]) << "\n";
    }
  }
  std::ofstream(dir / "summary.json") << summary_json(r);
}

std::vector<ErrorRecord> convergence_study(const RunConfig &base,
                                           const std::vector<int> &levels,
                                           const RunOptions &options) {
  if (levels.size() < 3) {
    throw ConfigError("a convergence study needs at least 3 levels");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) {
      throw ConfigError("refinement levels must increase");
    }
  }
  const CaseSetup setup = make_case(base.kind);
  const double length = setup.right - setup.left;
  std::vector<ErrorRecord> out;
  std::optional<double> dt0;
  std::vector<std::optional<ErrorRecord>> previous(2);
  for (int ne : levels) {
    RunConfig config = base;
    config.n_elements = ne;
    config.snapshot_times.clear();
    if (config.force_gamma && config.force_gamma->element >= static_cast<std::size_t>(ne)) {
      config.force_gamma.reset();
    }
    const double h = length / ne;
    RunOptions run_options = options;
    ErrorRecord proto;
    proto.n_elements = ne;
    proto.h = h;
    proto.p = config.p;
    proto.n = config.n;
    try {
      if (!dt0) {
        const Solver solver = make_solver(config);
        dt0 = config.dt.value_or(
            default_time_step(solver, initial_state(config, solver.discretization())));
      }
      const double h0 = length / levels.front();
      run_options.dt = *dt0 * std::pow(h / h0, 0.5 * (config.p + 1));
      const RunResult r = run_case(config, run_options);
      const std::optional<double> errs[2] = {r.error_l1, r.error_l2};
      for (int k = 0; k < 2; ++k) {
        ErrorRecord rec = proto;
        rec.norm = k == 0 ? NormKind::kL1 : NormKind::kL2;
        if (!errs[k]) continue;
        rec.error = *errs[k];
        if (previous[k] && !previous[k]->failed && rec.error > 0.0 &&
            previous[k]->error > 0.0) {
          rec.observed_order = std::log(previous[k]->error / rec.error) /
                               std::log(previous[k]->h / rec.h);
        }
        previous[k] = rec;
        out.push_back(rec);
      }
    } catch (const std::exception &ex) {
      for (int k = 0; k < 2; ++k) {
        ErrorRecord rec = proto;
        rec.norm = k == 0 ? NormKind::kL1 : NormKind::kL2;
        rec.failed = true;
        rec.message = ex.what();
        previous[k] = rec;
        out.push_back(rec);
      }
    }
  }
  return out;
}

std::string convergence_csv(const std::vector<ErrorRecord> &records) {
  std::ostringstream os;
  os << "n_elements,h,p,n,norm,error,observed_order,status\n";
  for (const auto &r : records) {
    os << r.n_elements << "," << format_number(r.h) << "," << r.p << "," << r.n
       << "," << norm_name(r.norm) << ","
       << (r.failed ? std::string("") : format_number(r.error)) << ","
       << (r.observed_order ? format_number(*r.observed_order) : std::string(""))
       << "," << (r.failed ? "failed: " + r.message : std::string("ok")) << "\n";
  }
  return os.str();
}

}  // namespace sgdg
