#ifndef SGDG_CASES_HPP_
#define SGDG_CASES_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sgdg/field.hpp"
#include "sgdg/physics.hpp"

namespace sgdg {

enum class CaseKind {
  kConvectionGaussian,
  kConvectionHeaviside,
  kConvectionRecovery,
  kBurgers,
  kNozzle,
  kShuOsher,
  kFvComparison,
  kMach3Shock,  // reference-only: Shu-Osher inlet state against rest
};

std::string_view case_name(CaseKind kind);
/// Throws ConfigError for unknown names.
CaseKind parse_case(std::string_view name);
/// Cases accepted by `run` (everything except the reference-only ones).
const std::vector<CaseKind> &run_cases();

/// Physical problem behind a case: law, domain, data and boundary
/// conditions. Discretization choices live in RunConfig.
struct CaseSetup {
  CaseKind kind;
  std::shared_ptr<const ConservationLaw> law;
  double left;
  double right;
  BoundaryCondition left_bc;
  BoundaryCondition right_bc;
  StateFunction initial;
  /// Jumps of the initial data, integrated piecewise on projection.
  std::vector<double> breakpoints;
  double t_final;
};

CaseSetup make_case(CaseKind kind);

inline constexpr double kShuOsherFinalTime = 1.78;
inline constexpr double kShuOsherJump = -4.0;
/// Post-shock Shu-Osher inlet state (rho, u, p).
inline constexpr Primitive kShuOsherInlet{3.857143, 2.629369, 10.3333};

/// Speed of the Mach 3 shock separating the Shu-Osher inlet state from gas at
/// rest with rho = p = 1, from the mass jump condition.
double mach3_shock_speed();

}  // namespace sgdg

#endif  // SGDG_CASES_HPP_
