#ifndef SGDG_PHYSICS_HPP_
#define SGDG_PHYSICS_HPP_

#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "sgdg/errors.hpp"

namespace sgdg {

/// Conserved state of at most three components, stored inline.
using State = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

/// Raised for rho <= 0, p <= 0 or a degenerate Roe average.
class AdmissibilityError : public SolverAbort {
 public:
  using SolverAbort::SolverAbort;
};

class ConservationLaw {
 public:
  virtual ~ConservationLaw() = default;

  virtual std::string name() const = 0;
  virtual int num_components() const = 0;

  virtual State flux(const State &u, double x) const = 0;
  /// Roe-linearized upwind flux, F(uL,uR) = (F_L+F_R)/2 - |A~|(uR-uL)/2.
  virtual State roe_flux(const State &ul, const State &ur, double x) const = 0;
  virtual double max_wave_speed(const State &u, double x) const = 0;

  virtual bool has_source() const { return false; }
  virtual State source(const State &u, double x) const;

  virtual bool admissible(const State &u, double x) const;
};

class Convection final : public ConservationLaw {
 public:
  explicit Convection(double beta = 1.0) : beta_(beta) {}
  std::string name() const override { return "convection"; }
  int num_components() const override { return 1; }
  State flux(const State &u, double x) const override;
  State roe_flux(const State &ul, const State &ur, double x) const override;
  double max_wave_speed(const State &u, double x) const override;
  double beta() const { return beta_; }

 private:
  double beta_;
};

class Burgers final : public ConservationLaw {
 public:
  std::string name() const override { return "burgers"; }
  int num_components() const override { return 1; }
  State flux(const State &u, double x) const override;
  State roe_flux(const State &ul, const State &ur, double x) const override;
  double max_wave_speed(const State &u, double x) const override;
};

struct Primitive {
  double rho;
  double u;
  double p;
};

/// 1D Euler equations for an ideal gas, conserved (rho, rho u, rho E).
class Euler1D : public ConservationLaw {
 public:
  explicit Euler1D(double gamma = 1.4, bool entropy_fix = false)
      : gamma_(gamma), entropy_fix_(entropy_fix) {}

  std::string name() const override { return "euler1d"; }
  int num_components() const override { return 3; }
  State flux(const State &u, double x) const override;
  State roe_flux(const State &ul, const State &ur, double x) const override;
  double max_wave_speed(const State &u, double x) const override;
  bool admissible(const State &u, double x) const override;

  double gamma() const { return gamma_; }
  bool entropy_fix() const { return entropy_fix_; }

  double pressure(const State &u) const;
  Primitive primitive(const State &u) const;
  State conserved(const Primitive &w) const;
  double sound_speed(const State &u) const;

  /// Roe-averaged Jacobian applied to a vector (used to verify the Roe
  /// property A~ (uR - uL) = F(uR) - F(uL)).
  State roe_matrix_times(const State &ul, const State &ur, const State &v) const;

 private:
  struct RoeAverage {
    double u, h, c, rho;
  };
  RoeAverage roe_average(const State &ul, const State &ur) const;

  double gamma_;
  bool entropy_fix_;
};

/// Nozzle cross-section and its derivative.
struct NozzleArea {
  double area;
  double slope;
};
inline constexpr double kNozzleThroat = 0.8;
NozzleArea nozzle_area(double x);

/// Quasi-1D nozzle flow in A-weighted variables (A rho, A rho u, A rho E):
/// fluxes A (rho u, rho u^2 + p, (rho E + p) u), momentum source p dA/dx.
class Nozzle final : public ConservationLaw {
 public:
  explicit Nozzle(double gamma = 1.4, bool entropy_fix = false)
      : euler_(gamma, entropy_fix) {}

  std::string name() const override { return "nozzle"; }
  int num_components() const override { return 3; }
  State flux(const State &u, double x) const override;
  State roe_flux(const State &ul, const State &ur, double x) const override;
  double max_wave_speed(const State &u, double x) const override;
  bool has_source() const override { return true; }
  State source(const State &u, double x) const override;
  bool admissible(const State &u, double x) const override;

  const Euler1D &euler() const { return euler_; }

 private:
  Euler1D euler_;
};

struct LawOptions {
  double beta = 1.0;
  double gamma = 1.4;
  bool entropy_fix = false;
};

/// "convection", "burgers", "euler1d" or "nozzle".
std::unique_ptr<ConservationLaw> make_law(std::string_view name,
                                          const LawOptions &options = {});

State flux(const ConservationLaw &law, const State &u, double x);
State roe_flux(const ConservationLaw &law, const State &ul, const State &ur,
               double x);
State source(const ConservationLaw &law, const State &u, double x);

class BoundaryCondition {
 public:
  enum class Kind { kPeriodic, kPrescribedState, kSolidWall, kWeakFarfield };

  static BoundaryCondition periodic();
  static BoundaryCondition prescribed(State state);
  static BoundaryCondition solid_wall();
  /// Farfield data (rho, u, M); c = u / M and p = rho c^2 / gamma.
  static BoundaryCondition farfield(double rho, double u, double mach);

  Kind kind() const { return kind_; }
  const State &state() const { return state_; }
  double rho() const { return rho_; }
  double velocity() const { return u_; }
  double mach() const { return mach_; }

 private:
  Kind kind_ = Kind::kPeriodic;
  State state_;
  double rho_ = 0.0, u_ = 0.0, mach_ = 0.0;
};

/// Ghost state outside the domain at coordinate x. `opposite` is the trace
/// at the other end of the domain, used only for periodic conditions.
State boundary_ghost(const BoundaryCondition &bc, const State &interior,
                     const State &opposite, const ConservationLaw &law,
                     double x);

/// Conserved state from farfield (rho, u, M) data, A-weighted for the nozzle.
State farfield_state(const ConservationLaw &law, double rho, double u,
                     double mach, double x);

}  // namespace sgdg

#endif  // SGDG_PHYSICS_HPP_
