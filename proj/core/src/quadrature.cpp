#include "sgdg/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "sgdg/errors.hpp"

namespace sgdg {

double legendre_eval(int i, double x) {
  return legendre_eval_with_derivative(i, x).value;
}

LegendreValue legendre_eval_with_derivative(int i, double x) {
  if (i < 0) throw ConfigError("Legendre index must be non-negative");
  if (i == 0) return {1.0, 0.0};
  // Bonnet recurrence for values, and L'_{k+1} = L'_{k-1} + (2k+1) L_k.
  double p_prev = 1.0, p = x;
  double d_prev = 0.0, d = 1.0;
  for (int k = 1; k < i; ++k) {
    const double p_next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1);
    const double d_next = d_prev + (2 * k + 1) * p;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return {p, d};
}

GaussRule gauss_rule(int q) {
  if (q < 1) throw ConfigError("Gauss rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre_eval_with_derivative(q, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = legendre_eval_with_derivative(q, x).derivative;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

}  // namespace sgdg
