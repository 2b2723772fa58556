#include "sgdg/basis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sgdg/errors.hpp"

namespace sgdg {

ElementSpace::ElementSpace(int p, int n, Interval geometry)
    : p_(p), n_(n), geometry_(geometry) {
  if (p_ < 0) throw ConfigError("polynomial degree must be non-negative");
  if (n_ < 1) throw ConfigError("sub-cell count must be positive");
  if (!(geometry_.right > geometry_.left)) {
    throw ConfigError("element must have positive width");
  }
}

double ElementSpace::to_reference(double x) const {
  return (2.0 * x - geometry_.left - geometry_.right) / geometry_.width();
}

double ElementSpace::to_physical(double xi) const {
  return geometry_.center() + 0.5 * geometry_.width() * xi;
}

Interval ElementSpace::subcell(int sub) const {
  if (sub < 0 || sub >= n_) throw std::out_of_range("sub-cell index");
  const double h = geometry_.width() / n_;
  const double right =
      sub + 1 == n_ ? geometry_.right : geometry_.left + (sub + 1) * h;
  return {geometry_.left + sub * h, right};
}

Interval ElementSpace::reference_subcell(int sub) const {
  if (sub < 0 || sub >= n_) throw std::out_of_range("sub-cell index");
  const double h = 2.0 / n_;
  return {-1.0 + sub * h, sub + 1 == n_ ? 1.0 : -1.0 + (sub + 1) * h};
}

int ElementSpace::subcell_of(double x) const {
  const double t = (x - geometry_.left) / geometry_.width() * n_;
  return std::clamp(static_cast<int>(std::floor(t)), 0, n_ - 1);
}

double basis_eval(const ElementSpace &space, int i, double x) {
  if (i < 0 || i >= space.dof()) {
    throw std::out_of_range("basis index " + std::to_string(i) +
                            " out of range");
  }
  if (i < space.num_poly()) {
    return legendre_eval(i + 1, space.to_reference(x));
  }
  const Interval k = space.subcell(i - space.num_poly());
  const bool last = i - space.num_poly() == space.n_sub() - 1;
  const bool inside = x >= k.left && (x < k.right || (last && x <= k.right));
  return inside ? 1.0 : 0.0;
}

ReferenceTables::ReferenceTables(int p_, int n_, int q)
    : p(p_), n(n_), points_per_subcell(q) {
  const GaussRule rule = gauss_rule(q);
  const int np = n * q;
  xi.resize(np);
  weight.resize(np);
  poly.resize(np, p);
  poly_deriv.resize(np, p);
  const double h = 2.0 / n;
  for (int j = 0; j < n; ++j) {
    const double a = -1.0 + j * h;
    for (int k = 0; k < q; ++k) {
      const int pt = j * q + k;
      xi[pt] = a + 0.5 * h * (rule.nodes[k] + 1.0);
      weight[pt] = 0.5 * h * rule.weights[k];
      for (int m = 0; m < p; ++m) {
        const auto lv = legendre_eval_with_derivative(m + 1, xi[pt]);
        poly(pt, m) = lv.value;
        poly_deriv(pt, m) = lv.derivative;
      }
    }
  }
  face_poly.resize(n + 1, p);
  for (int f = 0; f <= n; ++f) {
    const double x = f == n ? 1.0 : -1.0 + f * h;
    for (int m = 0; m < p; ++m) face_poly(f, m) = legendre_eval(m + 1, x);
  }
}

Eigen::MatrixXd assemble_mass(const ElementSpace &space) {
  const int p = space.num_poly();
  const int n = space.n_sub();
  const ReferenceTables t(space.degree(), n,
                          default_points_per_subcell(space.degree()));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(space.dof(), space.dof());
  Eigen::VectorXd phi(space.dof());
  for (int pt = 0; pt < t.num_points(); ++pt) {
    phi.setZero();
    phi.head(p) = t.poly.row(pt).transpose();
    phi[p + t.subcell_of_point(pt)] = 1.0;
    m.noalias() += t.weight[pt] * phi * phi.transpose();
  }
  m *= space.jacobian();
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd polynomial_mass(const ElementSpace &space) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(space.num_poly(), space.num_poly());
  for (int k = 0; k < space.num_poly(); ++k) {
    m(k, k) = space.jacobian() * 2.0 / (2 * (k + 1) + 1);
  }
  return m;
}

Eigen::MatrixXd legendre_subcell_averages(const ElementSpace &space) {
  const int p = space.degree();
  const int n = space.n_sub();
  const int q = default_points_per_subcell(p);
  const ReferenceTables t(p, n, q);
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(n, p + 1);
  const double measure = 2.0 / n;
  for (int pt = 0; pt < t.num_points(); ++pt) {
    const int j = t.subcell_of_point(pt);
    avg(j, 0) += t.weight[pt];
    for (int k = 0; k < p; ++k) avg(j, k + 1) += t.weight[pt] * t.poly(pt, k);
  }
  return avg / measure;
}

Eigen::MatrixXd ho_projection_matrix(const ElementSpace &space) {
  const int p = space.num_poly();
  const int n = space.n_sub();
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(p, space.dof());
  proj.leftCols(p).setIdentity();
  if (p == 0) return proj;
  // (1_j, L_k)_K / (L_k, L_k)_K = avg_j(L_k) (2k+1) / n
  const Eigen::MatrixXd avg = legendre_subcell_averages(space);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < p; ++k) {
      proj(k, p + j) = avg(j, k + 1) * (2 * (k + 1) + 1) / n;
    }
  }
  return proj;
}

Eigen::MatrixXd assemble_penalty_mass(const ElementSpace &space) {
  const int p = space.num_poly();
  Eigen::MatrixXd mpp = Eigen::MatrixXd::Zero(space.dof(), space.dof());
  mpp.topLeftCorner(p, p) = polynomial_mass(space);
  return mpp;
}

MassMatrices assemble_mass_matrices(const ElementSpace &space) {
  return {assemble_mass(space), assemble_penalty_mass(space)};
}

double evaluate(const ElementSpace &space, const LocalCoefficients &c,
                double x) {
  const double xi = space.to_reference(x);
  double v = c[space.num_poly() + space.subcell_of(x)];
  for (int k = 0; k < space.num_poly(); ++k) v += c[k] * legendre_eval(k + 1, xi);
  return v;
}

}  // namespace sgdg
