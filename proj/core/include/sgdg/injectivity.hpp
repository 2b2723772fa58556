#ifndef SGDG_INJECTIVITY_HPP_
#define SGDG_INJECTIVITY_HPP_

#include <string>

namespace sgdg {

/// Rank check of sub-cell averaging on polynomials of total degree <= p over
/// the uniform subdivision of the unit simplex into n = (r+1)^d congruent
/// pieces.
struct InjectivityReport {
  int p = 0;
  int r = 0;
  int d = 1;
  int n = 0;     // number of sub-cells
  int dofs = 0;  // dimension of the polynomial space
  bool injective = false;
  double smin = 0.0;
  double smax = 0.0;
};

/// Relative singular-value threshold separating rank deficiency.
inline constexpr double kInjectivityTolerance = 1e-10;

InjectivityReport check_injectivity(int p, int r, int d);

/// {"p":..,"r":..,"d":..,"n":..,"dofs":..,"injective":..,"smin":..,"smax":..}
std::string to_json(const InjectivityReport &report);

}  // namespace sgdg

#endif  // SGDG_INJECTIVITY_HPP_
