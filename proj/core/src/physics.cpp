#include "sgdg/physics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sgdg {
namespace {

State scalar(double v) {
  State s(1);
  s[0] = v;
  return s;
}

std::string describe(const State &u, double x) {
  std::ostringstream os;
  os << "state (";
  for (Eigen::Index i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ") at x=" << x;
  return os.str();
}

}  // namespace

State ConservationLaw::source(const State &u, double) const {
  return State::Zero(u.size());
}

bool ConservationLaw::admissible(const State &u, double) const {
  return u.allFinite();
}

// --- convection -------------------------------------------------------------

State Convection::flux(const State &u, double) const {
  return scalar(beta_ * u[0]);
}

State Convection::roe_flux(const State &ul, const State &ur, double) const {
  return scalar(0.5 * beta_ * (ul[0] + ur[0]) -
                0.5 * std::abs(beta_) * (ur[0] - ul[0]));
}

double Convection::max_wave_speed(const State &, double) const {
  return std::abs(beta_);
}

// --- Burgers ----------------------------------------------------------------

State Burgers::flux(const State &u, double) const {
  return scalar(0.5 * u[0] * u[0]);
}

State Burgers::roe_flux(const State &ul, const State &ur, double) const {
  const double speed = 0.5 * (ul[0] + ur[0]);
  return scalar(0.25 * (ul[0] * ul[0] + ur[0] * ur[0]) -
                0.5 * std::abs(speed) * (ur[0] - ul[0]));
}

double Burgers::max_wave_speed(const State &u, double) const {
  return std::abs(u[0]);
}

// --- Euler ------------------------------------------------------------------

double Euler1D::pressure(const State &u) const {
  return (gamma_ - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

Primitive Euler1D::primitive(const State &u) const {
  return {u[0], u[1] / u[0], pressure(u)};
}

State Euler1D::conserved(const Primitive &w) const {
  State u(3);
  u << w.rho, w.rho * w.u, w.p / (gamma_ - 1.0) + 0.5 * w.rho * w.u * w.u;
  return u;
}

double Euler1D::sound_speed(const State &u) const {
  return std::sqrt(gamma_ * pressure(u) / u[0]);
}

bool Euler1D::admissible(const State &u, double) const {
  return u.allFinite() && u[0] > 0.0 && pressure(u) > 0.0;
}

State Euler1D::flux(const State &u, double x) const {
  if (!admissible(u, x)) {
    throw AdmissibilityError("inadmissible Euler " + describe(u, x));
  }
  const double vel = u[1] / u[0];
  const double p = pressure(u);
  State f(3);
  f << u[1], u[1] * vel + p, (u[2] + p) * vel;
  return f;
}

double Euler1D::max_wave_speed(const State &u, double) const {
  return std::abs(u[1] / u[0]) + sound_speed(u);
}

Euler1D::RoeAverage Euler1D::roe_average(const State &ul,
                                         const State &ur) const {
  const double sl = std::sqrt(ul[0]);
  const double sr = std::sqrt(ur[0]);
  const double hl = (ul[2] + pressure(ul)) / ul[0];
  const double hr = (ur[2] + pressure(ur)) / ur[0];
  RoeAverage avg;
  avg.u = (sl * ul[1] / ul[0] + sr * ur[1] / ur[0]) / (sl + sr);
  avg.h = (sl * hl + sr * hr) / (sl + sr);
  const double c2 = (gamma_ - 1.0) * (avg.h - 0.5 * avg.u * avg.u);
  if (!(c2 > 0.0)) {
    throw AdmissibilityError("Roe average has non-positive sound speed");
  }
  avg.c = std::sqrt(c2);
  avg.rho = sl * sr;
  return avg;
}

State Euler1D::roe_flux(const State &ul, const State &ur, double x) const {
  const State fl = flux(ul, x);
  const State fr = flux(ur, x);
  const RoeAverage a = roe_average(ul, ur);

  const double drho = ur[0] - ul[0];
  const double du = ur[1] / ur[0] - ul[1] / ul[0];
  const double dp = pressure(ur) - pressure(ul);
  const double c2 = a.c * a.c;
  const double alpha1 = (dp - a.rho * a.c * du) / (2.0 * c2);
  const double alpha2 = drho - dp / c2;
  const double alpha3 = (dp + a.rho * a.c * du) / (2.0 * c2);

  double l1 = std::abs(a.u - a.c);
  double l2 = std::abs(a.u);
  double l3 = std::abs(a.u + a.c);
  if (entropy_fix_) {
    const double eps = 0.05 * (std::abs(a.u) + a.c);
    auto fix = [eps](double l) {
      return l < eps ? 0.5 * (l * l / eps + eps) : l;
    };
    l1 = fix(l1);
    l2 = fix(l2);
    l3 = fix(l3);
  }

  State diss(3);
  diss << l1 * alpha1 + l2 * alpha2 + l3 * alpha3,
      l1 * alpha1 * (a.u - a.c) + l2 * alpha2 * a.u +
          l3 * alpha3 * (a.u + a.c),
      l1 * alpha1 * (a.h - a.u * a.c) + l2 * alpha2 * 0.5 * a.u * a.u +
          l3 * alpha3 * (a.h + a.u * a.c);
  return 0.5 * (fl + fr) - 0.5 * diss;
}

State Euler1D::roe_matrix_times(const State &ul, const State &ur,
                                const State &v) const {
  const RoeAverage a = roe_average(ul, ur);
  const double g = gamma_;
  // Jacobian of the Euler flux evaluated at the Roe state (u~, H~).
  Eigen::Matrix3d jac;
  jac << 0.0, 1.0, 0.0,
      0.5 * (g - 3.0) * a.u * a.u, (3.0 - g) * a.u, g - 1.0,
      a.u * (0.5 * (g - 1.0) * a.u * a.u - a.h), a.h - (g - 1.0) * a.u * a.u,
      g * a.u;
  return jac * v;
}

// --- nozzle -----------------------------------------------------------------

NozzleArea nozzle_area(double x) {
  if (x < 0.1 || x > 0.9) return {1.0, 0.0};
  const double theta = std::numbers::pi * (x - 0.5) / 0.8;
  const double cs = std::cos(theta);
  return {1.0 - (1.0 - kNozzleThroat) * cs * cs,
          (1.0 - kNozzleThroat) * std::sin(2.0 * theta) * std::numbers::pi /
              0.8};
}

bool Nozzle::admissible(const State &u, double x) const {
  return euler_.admissible(u / nozzle_area(x).area, x);
}

State Nozzle::flux(const State &u, double x) const {
  const double a = nozzle_area(x).area;
  return a * euler_.flux(u / a, x);
}

State Nozzle::roe_flux(const State &ul, const State &ur, double x) const {
  const double a = nozzle_area(x).area;
  return a * euler_.roe_flux(ul / a, ur / a, x);
}

double Nozzle::max_wave_speed(const State &u, double x) const {
  return euler_.max_wave_speed(u / nozzle_area(x).area, x);
}

State Nozzle::source(const State &u, double x) const {
  const NozzleArea geo = nozzle_area(x);
  State s = State::Zero(3);
  s[1] = euler_.pressure(u / geo.area) * geo.slope;
  return s;
}

// --- factory and free functions ---------------------------------------------

std::unique_ptr<ConservationLaw> make_law(std::string_view name,
                                          const LawOptions &options) {
  if (name == "convection") return std::make_unique<Convection>(options.beta);
  if (name == "burgers") return std::make_unique<Burgers>();
  if (name == "euler1d") {
    return std::make_unique<Euler1D>(options.gamma, options.entropy_fix);
  }
  if (name == "nozzle") {
    return std::make_unique<Nozzle>(options.gamma, options.entropy_fix);
  }
  throw ConfigError("unknown conservation law '" + std::string(name) + "'");
}

State flux(const ConservationLaw &law, const State &u, double x) {
  return law.flux(u, x);
}

State roe_flux(const ConservationLaw &law, const State &ul, const State &ur,
               double x) {
  return law.roe_flux(ul, ur, x);
}

State source(const ConservationLaw &law, const State &u, double x) {
  return law.source(u, x);
}

// --- boundary conditions ----------------------------------------------------

BoundaryCondition BoundaryCondition::periodic() { return {}; }

BoundaryCondition BoundaryCondition::prescribed(State state) {
  BoundaryCondition bc;
  bc.kind_ = Kind::kPrescribedState;
  bc.state_ = std::move(state);
  return bc;
}

BoundaryCondition BoundaryCondition::solid_wall() {
  BoundaryCondition bc;
  bc.kind_ = Kind::kSolidWall;
  return bc;
}

BoundaryCondition BoundaryCondition::farfield(double rho, double u,
                                              double mach) {
  if (mach == 0.0) throw ConfigError("farfield Mach number must be non-zero");
  if (!(rho > 0.0)) throw ConfigError("farfield density must be positive");
  BoundaryCondition bc;
  bc.kind_ = Kind::kWeakFarfield;
  bc.rho_ = rho;
  bc.u_ = u;
  bc.mach_ = mach;
  return bc;
}

State farfield_state(const ConservationLaw &law, double rho, double u,
                     double mach, double x) {
  if (mach == 0.0) throw ConfigError("farfield Mach number must be non-zero");
  const Euler1D *euler = dynamic_cast<const Euler1D *>(&law);
  double area = 1.0;
  if (const auto *nozzle = dynamic_cast<const Nozzle *>(&law)) {
    euler = &nozzle->euler();
    area = nozzle_area(x).area;
  }
  if (euler == nullptr) {
    throw ConfigError("farfield conditions need an Euler-type law");
  }
  const double c = u / mach;
  const double p = rho * c * c / euler->gamma();
  return area * euler->conserved({rho, u, p});
}

State boundary_ghost(const BoundaryCondition &bc, const State &interior,
                     const State &opposite, const ConservationLaw &law,
                     double x) {
  switch (bc.kind()) {
    case BoundaryCondition::Kind::kPeriodic:
      return opposite;
    case BoundaryCondition::Kind::kPrescribedState:
      return bc.state();
    case BoundaryCondition::Kind::kSolidWall: {
      if (law.num_components() != 3) {
        throw ConfigError("solid wall needs an Euler-type law");
      }
      State ghost = interior;
      ghost[1] = -ghost[1];
      return ghost;
    }
    case BoundaryCondition::Kind::kWeakFarfield:
      return farfield_state(law, bc.rho(), bc.velocity(), bc.mach(), x);
  }
  return interior;
}

}  // namespace sgdg
