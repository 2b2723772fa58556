#ifndef SGDG_IMEX_HPP_
#define SGDG_IMEX_HPP_

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sgdg {

/// Additive Runge-Kutta coefficients: implicit A, b and explicit A^, b^.
struct ImexTableau {
  Eigen::MatrixXd a;
  Eigen::MatrixXd a_hat;
  Eigen::VectorXd b;
  Eigen::VectorXd b_hat;

  int stages() const { return static_cast<int>(b.size()); }

  /// ARS(2,2,2): alpha = 1 - 1/sqrt(2), delta = -2 sqrt(2) / 3.
  static ImexTableau ars222() {
    const double alpha = 1.0 - 1.0 / std::sqrt(2.0);
    const double delta = -2.0 * std::sqrt(2.0) / 3.0;
    ImexTableau t;
    t.a = Eigen::MatrixXd::Zero(3, 3);
    t.a(1, 1) = alpha;
    t.a(2, 1) = 1.0 - alpha;
    t.a(2, 2) = alpha;
    t.a_hat = Eigen::MatrixXd::Zero(3, 3);
    t.a_hat(1, 0) = alpha;
    t.a_hat(2, 0) = delta;
    t.a_hat(2, 1) = 1.0 - delta;
    t.b = Eigen::Vector3d(0.0, 1.0 - alpha, alpha);
    t.b_hat = t.b;
    return t;
  }
};

/// One IMEX step for M u' = f(u) + g(u) with g frozen-linear:
///
///   u_i   = u + dt sum_{j<i} (a_ij r_j + a^_ij r^_j)
///   r_i   = implicit(u_i, dt a_ii)      solves (M - kappa dg) r = g(u_i)
///   r^_i  = explicit(u_i + dt a_ii r_i) solves M r^ = f(.)
///   u_new = u + dt sum_j (b_j r_j + b^_j r^_j)
///
/// Vec needs +, -, scalar * and a zero of the same shape via `u * 0.0`.
template <class Vec, class Implicit, class Explicit>
Vec imex_step(const Vec &u, double dt, const ImexTableau &tab,
              Implicit &&implicit, Explicit &&explicit_part) {
  const int s = tab.stages();
  std::vector<Vec> r, r_hat;
  r.reserve(s);
  r_hat.reserve(s);
  for (int i = 0; i < s; ++i) {
    Vec acc = u * 0.0;
    for (int j = 0; j < i; ++j) {
      acc = acc + (tab.a(i, j) * r[j] + tab.a_hat(i, j) * r_hat[j]);
    }
    const Vec stage = u + dt * acc;
    r.push_back(implicit(stage, dt * tab.a(i, i)));
    r_hat.push_back(explicit_part(Vec(stage + (dt * tab.a(i, i)) * r[i])));
  }
  Vec acc = u * 0.0;
  for (int j = 0; j < s; ++j) {
    acc = acc + (tab.b[j] * r[j] + tab.b_hat[j] * r_hat[j]);
  }
  return u + dt * acc;
}

/// The explicit half of the same scheme, used when g vanishes.
template <class Vec, class Explicit>
Vec explicit_step(const Vec &u, double dt, const ImexTableau &tab,
                  Explicit &&explicit_part) {
  const int s = tab.stages();
  std::vector<Vec> r_hat;
  r_hat.reserve(s);
  for (int i = 0; i < s; ++i) {
    Vec acc = u * 0.0;
    for (int j = 0; j < i; ++j) acc = acc + tab.a_hat(i, j) * r_hat[j];
    const Vec stage = u + dt * acc;
    r_hat.push_back(explicit_part(stage));
  }
  Vec acc = u * 0.0;
  for (int j = 0; j < s; ++j) acc = acc + tab.b_hat[j] * r_hat[j];
  return u + dt * acc;
}

}  // namespace sgdg

#endif  // SGDG_IMEX_HPP_
