#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sgdg/errors.hpp"
#include "sgdg/harness.hpp"

using namespace sgdg;

namespace {

State s1(double v) {
  State s(1);
  s[0] = v;
  return s;
}

KeyValues parse(const std::string &text) {
  std::istringstream in(text);
  return read_key_values(in);
}

}  // namespace

TEST_CASE("error norm examples") {
  const Discretization disc(build_uniform_mesh(0.0, 1.0, 4, 5), 3);
  const auto f = [](double x) { return std::sin(2 * std::numbers::pi * x); };
  const FieldState u = project_initial(disc, 1, [&](double x) { return s1(f(x)); });
  const auto self = [&](double x) { return evaluate(disc, u, 0, x); };
  CHECK(error_norm(disc, u, 0, self, NormKind::kL2) < 1e-13);
  CHECK(error_norm(disc, u, 0, self, NormKind::kL1) < 1e-13);

  FieldState zero(4, 1, 8);
  zero.coefficients().setZero();
  CHECK(error_norm(disc, zero, 0, [](double) { return 0.3; }, NormKind::kL2) ==
        doctest::Approx(0.3).epsilon(1e-14));

  FieldState bump = zero;
  bump.local(2, 0)[3 + 1] = 1.0;
  CHECK(error_norm(disc, bump, 0, [](double) { return 0.0; }, NormKind::kL1) ==
        doctest::Approx(1.0 / 20).epsilon(1e-14));
}

TEST_CASE("error norm splits at breakpoints") {
  const Discretization disc(build_uniform_mesh(0.0, 1.0, 2, 2), 1);
  FieldState zero(2, 1, 3);
  zero.coefficients().setZero();
  const double cut[] = {0.1};
  const double l1 = error_norm(disc, zero, 0, [](double x) { return x < 0.1 ? 1.0 : 0.0; },
                               NormKind::kL1, cut);
  CHECK(l1 == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("config parsing") {
  const KeyValues kv = parse(
      "# burgers with a shorter run\n"
      "case = burgers\n"
      "t_final = 0.5   # end\n"
      "force_gamma = 3:1e4\n"
      "snapshot_times = 0.1, 0.2\n");
  const RunConfig c = make_config(kv);
  CHECK(c.kind == CaseKind::kBurgers);
  CHECK(c.p == 4);
  CHECK(c.n == 8);
  CHECK(c.n_elements == 9);
  CHECK(c.dt == 1e-3);
  CHECK(c.t_final == 0.5);
  REQUIRE(c.force_gamma);
  CHECK(c.force_gamma->element == 3);
  CHECK(c.force_gamma->gamma == 1e4);
  CHECK(c.snapshot_times == std::vector<double>{0.1, 0.2});

  CHECK_THROWS_AS(parse("case = burgers\nwidth = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse("case = burgers\ncase = nozzle\n"), ConfigError);
  CHECK_THROWS_AS(parse("case burgers\n"), ConfigError);
  CHECK_THROWS_AS(make_config(parse("p = 3\n")), ConfigError);
  CHECK_THROWS_AS(make_config(parse("case = lava\n")), ConfigError);
  CHECK_THROWS_AS(make_config(parse("case = mach3-shock\n")), ConfigError);
  CHECK_THROWS_AS(make_config(parse("case = burgers\np = x\n")), ConfigError);
  CHECK_THROWS_AS(make_config(parse("case = burgers\ndt = -1\n")), ConfigError);
  CHECK_THROWS_AS(make_config(parse("case = burgers\nforce_gamma = 12:1\n")), ConfigError);
  CHECK_THROWS_AS(make_config(parse("case = fv-comparison\np = 2\n")), ConfigError);
  CHECK_THROWS_AS(make_config(parse("case = burgers\nn = 3\n")), NonInjectiveError);
  CHECK_NOTHROW(make_config(parse("case = burgers\nn = 3\nC_pen = 0\n")));
}

TEST_CASE("config round trip") {
  for (CaseKind kind : run_cases()) {
    const RunConfig c = default_config(kind);
    const RunConfig back = make_config(to_key_values(c));
    CHECK(to_key_values(back) == to_key_values(c));
    CHECK(back.dt == c.dt);
    CHECK(back.t_final == c.t_final);
    CHECK(back.snapshot_times == c.snapshot_times);
  }
  RunConfig odd = default_config(CaseKind::kShuOsher);
  odd.dt = 0.1 + 0.2;
  odd.tau = 1.0 / 3.0;
  CHECK(make_config(to_key_values(odd)).dt == odd.dt);
  CHECK(make_config(to_key_values(odd)).tau == odd.tau);
}

TEST_CASE("case names") {
  for (CaseKind kind : run_cases()) CHECK(parse_case(case_name(kind)) == kind);
  CHECK(parse_case("mach3-shock") == CaseKind::kMach3Shock);
  CHECK_THROWS_AS(parse_case("sod"), ConfigError);
}

TEST_CASE("initial state is the plain projection for smooth data") {
  RunConfig c = default_config(CaseKind::kConvectionGaussian);
  c.n_elements = 32;
  const Discretization disc = make_discretization(c);
  const FieldState u = initial_state(c, disc);
  const FieldState plain = project_initial(disc, 1, make_case(c.kind).initial);
  CHECK(u.coefficients() == plain.coefficients());
}

TEST_CASE("shock tube start is admissible") {
  const RunConfig c = default_config(CaseKind::kShuOsher);
  const Solver solver = make_solver(c);
  const FieldState u = initial_state(c, solver.discretization());
  CHECK_NOTHROW(solver.residual(u));
  CHECK(default_time_step(solver, u) > 0.0);
}

TEST_CASE("projection-only convergence study") {
  RunConfig c = default_config(CaseKind::kConvectionGaussian);
  c.t_final = 0.0;
  c.p = 2;
  const auto records = convergence_study(c, {8, 16, 32});
  REQUIRE(records.size() == 6);
  for (const auto &r : records) CHECK_FALSE(r.failed);
  CHECK_THROWS_AS(convergence_study(c, {8, 16}), ConfigError);
  CHECK_THROWS_AS(convergence_study(c, {8, 16, 16}), ConfigError);
  const std::string csv = convergence_csv(records);
  CHECK(csv.rfind("n_elements,h,p,n,norm,error,observed_order,status\n", 0) == 0);
}

TEST_CASE("a failing level does not stop the study") {
  RunConfig c = default_config(CaseKind::kConvectionGaussian);
  c.p = 1;
  c.t_final = 100.0;
  c.dt = 0.05;
  const auto records = convergence_study(c, {4, 8, 16});
  REQUIRE(records.size() == 6);
  for (const auto &r : records) {
    CHECK(r.failed);
    CHECK_FALSE(r.message.empty());
  }
}

TEST_CASE("outputs") {
  RunConfig c = default_config(CaseKind::kBurgers);
  c.t_final = 0.02;
  c.snapshot_times = {0.01};
  const auto dir = std::filesystem::temp_directory_path() / "sgdg_outputs_test";
  std::filesystem::remove_all(dir);
  c.output_dir = dir.string();
  const RunResult r = run_case(c);
  write_outputs(r);
  CHECK(std::filesystem::exists(dir / "snapshot_t0.01.csv"));
  CHECK(std::filesystem::exists(dir / "snapshot_t0.02.csv"));
  CHECK(std::filesystem::exists(dir / "sensor_t0.01.csv"));
  std::ifstream in(dir / "summary.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j.at("case") == "burgers");
  CHECK(j.at("steps") == 20);
  CHECK(j.at("config").at("t_final") == "0.02");

  // Same config, same bytes.
  const auto dir2 = dir.string() + "_again";
  c.output_dir = dir2;
  write_outputs(run_case(c));
  std::ifstream a(dir / "snapshot_t0.02.csv"), b(std::filesystem::path(dir2) / "snapshot_t0.02.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("time labels") {
  CHECK(time_label(0.88) == "0.88");
  CHECK(time_label(1.0) == "1");
  CHECK(time_label(0.0002) == "0.0002");
}
