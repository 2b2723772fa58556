#ifndef SGDG_QUADRATURE_HPP_
#define SGDG_QUADRATURE_HPP_

#include <vector>

namespace sgdg {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2q-1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

GaussRule gauss_rule(int q);

/// Legendre polynomial L_i with L_i(1) = 1.
double legendre_eval(int i, double x);

/// Value and first derivative of L_i at x.
struct LegendreValue {
  double value;
  double derivative;
};
LegendreValue legendre_eval_with_derivative(int i, double x);

}  // namespace sgdg

#endif  // SGDG_QUADRATURE_HPP_
