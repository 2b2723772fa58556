#include "sgdg/cases.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sgdg/errors.hpp"

namespace sgdg {
namespace {

constexpr std::array<std::pair<CaseKind, std::string_view>, 8> kNames{{
    {CaseKind::kConvectionGaussian, "convection-gaussian"},
    {CaseKind::kConvectionHeaviside, "convection-heaviside"},
    {CaseKind::kConvectionRecovery, "convection-recovery"},
    {CaseKind::kBurgers, "burgers"},
    {CaseKind::kNozzle, "nozzle"},
    {CaseKind::kShuOsher, "shu-osher"},
    {CaseKind::kFvComparison, "fv-comparison"},
    {CaseKind::kMach3Shock, "mach3-shock"},
}};

State scalar(double v) {
  State s(1);
  s[0] = v;
  return s;
}

CaseSetup convection(CaseKind kind) {
  CaseSetup c{kind, std::make_shared<Convection>(1.0), 0.0, 1.0,
              BoundaryCondition::periodic(), BoundaryCondition::periodic(),
              {}, {}, 1.0};
  if (kind == CaseKind::kConvectionHeaviside) {
    c.initial = [](double x) { return scalar(x < 0.5 ? 1.0 : 0.0); };
    c.breakpoints = {0.5};
  } else {
    c.initial = [](double x) {
      return scalar(std::exp(-100.0 * (x - 0.5) * (x - 0.5)));
    };
  }
  return c;
}

CaseSetup shock_tube(CaseKind kind) {
  auto law = std::make_shared<Euler1D>(1.4);
  const State inlet = law->conserved(kShuOsherInlet);
  const bool rest = kind == CaseKind::kMach3Shock;
  CaseSetup c{kind, law, -5.0, 5.0,
              BoundaryCondition::prescribed(inlet),
              BoundaryCondition::solid_wall(),
              {}, {kShuOsherJump}, kShuOsherFinalTime};
  c.initial = [law, inlet, rest](double x) {
    if (x < kShuOsherJump) return inlet;
    const double rho = rest ? 1.0 : 1.0 + 0.2 * std::sin(5.0 * x);
    return law->conserved({rho, 0.0, 1.0});
  };
  if (rest) c.t_final = 1.0;
  return c;
}

}  // namespace

std::string_view case_name(CaseKind kind) {
  for (const auto &[k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

CaseKind parse_case(std::string_view name) {
  for (const auto &[k, n] : kNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown case '" + std::string(name) + "'");
}

const std::vector<CaseKind> &run_cases() {
  static const std::vector<CaseKind> cases{
      CaseKind::kConvectionGaussian, CaseKind::kConvectionHeaviside,
      CaseKind::kConvectionRecovery, CaseKind::kBurgers,
      CaseKind::kNozzle,             CaseKind::kShuOsher,
      CaseKind::kFvComparison};
  return cases;
}

CaseSetup make_case(CaseKind kind) {
  switch (kind) {
    case CaseKind::kConvectionGaussian:
    case CaseKind::kConvectionHeaviside:
    case CaseKind::kConvectionRecovery:
      return convection(kind);
    case CaseKind::kBurgers:
      return {kind, std::make_shared<Burgers>(), 0.0, 1.0,
              BoundaryCondition::periodic(), BoundaryCondition::periodic(),
              [](double x) {
                return scalar(0.5 + std::sin(2.0 * std::numbers::pi * x));
              },
              {}, 0.88};
    case CaseKind::kNozzle: {
      auto law = std::make_shared<Nozzle>(1.4);
      // Start from the inlet farfield state everywhere.
      return {kind, law, 0.0, 1.0,
              BoundaryCondition::farfield(1.0, 1.0, 0.40),
              BoundaryCondition::farfield(1.0, 1.0, 0.45),
              [law](double x) { return farfield_state(*law, 1.0, 1.0, 0.40, x); },
              {}, 0.4};
    }
    case CaseKind::kShuOsher:
    case CaseKind::kFvComparison:
    case CaseKind::kMach3Shock:
      return shock_tube(kind);
  }
  throw ConfigError("unknown case");
}

double mach3_shock_speed() {
  // rho_1 (u_1 - s) = rho_0 (0 - s) with rho_0 = 1.
  return kShuOsherInlet.rho * kShuOsherInlet.u / (kShuOsherInlet.rho - 1.0);
}

}  // namespace sgdg
