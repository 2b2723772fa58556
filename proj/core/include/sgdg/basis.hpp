#ifndef SGDG_BASIS_HPP_
#define SGDG_BASIS_HPP_

#include <Eigen/Dense>

#include "sgdg/mesh.hpp"
#include "sgdg/quadrature.hpp"

namespace sgdg {

/// Local coefficients of one solution component on one element.
using LocalCoefficients = Eigen::VectorXd;

/// Discretization space on one element: zero-average Legendre modes of
/// degree 1..p followed by the n sub-cell indicators, left to right.
///
/// p = 0 gives piecewise constants on the sub-grid (finite volumes), n = 1
/// gives the usual DG polynomial space of degree p.
class ElementSpace {
 public:
  ElementSpace(int p, int n, Interval geometry = {-1.0, 1.0});

  int degree() const { return p_; }
  int n_sub() const { return n_; }
  int num_poly() const { return p_; }
  int dof() const { return p_ + n_; }
  int indicator_index(int sub) const { return p_ + sub; }

  const Interval &geometry() const { return geometry_; }
  double jacobian() const { return 0.5 * geometry_.width(); }
  double to_reference(double x) const;
  double to_physical(double xi) const;

  Interval subcell(int sub) const;
  /// Sub-cell bounds in the reference coordinate.
  Interval reference_subcell(int sub) const;
  /// Sub-cell containing x, half-open to the right except the last one.
  int subcell_of(double x) const;

  /// Same (p, n) on another element.
  ElementSpace on(Interval geometry) const { return {p_, n_, geometry}; }

 private:
  int p_;
  int n_;
  Interval geometry_;
};

/// phi_i(x): Legendre mode i+1 for i < p, indicator of sub-cell i-p otherwise.
double basis_eval(const ElementSpace &space, int i, double x);

/// Quadrature points per sub-cell used for every element integral.
inline int default_points_per_subcell(int p) { return p + 2; }

/// Per-sub-cell Gauss data in reference coordinates, shared by every element
/// with the same (p, n). Point index is sub * points_per_subcell + k.
struct ReferenceTables {
  ReferenceTables(int p, int n, int points_per_subcell);

  int p;
  int n;
  int points_per_subcell;
  Eigen::VectorXd xi;          // reference coordinate of each point
  Eigen::VectorXd weight;      // reference weights, sum over all points = 2
  Eigen::MatrixXd poly;        // (points x p): L_1..L_p
  Eigen::MatrixXd poly_deriv;  // (points x p): dL/dxi
  Eigen::MatrixXd face_poly;   // (n+1 x p): L_k at sub-cell faces

  int num_points() const { return n * points_per_subcell; }
  int subcell_of_point(int point) const { return point / points_per_subcell; }
};

/// Element mass matrix M_ij = (phi_j, phi_i)_K.
Eigen::MatrixXd assemble_mass(const ElementSpace &space);

/// Penalty mass matrix (u_p(phi_j), u_p(phi_i))_K where u_p is the Legendre
/// mode part of a basis function: diag(M_poly, 0).
Eigen::MatrixXd assemble_penalty_mass(const ElementSpace &space);

struct MassMatrices {
  Eigen::MatrixXd mass;
  Eigen::MatrixXd penalty_mass;
};
MassMatrices assemble_mass_matrices(const ElementSpace &space);

/// diag((L_k, L_k)_K), k = 1..p.
Eigen::MatrixXd polynomial_mass(const ElementSpace &space);

/// (p x dof) matrix mapping local coefficients to the Legendre coefficients
/// of their zero-average polynomial L2 projection.
Eigen::MatrixXd ho_projection_matrix(const ElementSpace &space);

/// (n x (p+1)) matrix of sub-cell averages of L_0..L_p.
Eigen::MatrixXd legendre_subcell_averages(const ElementSpace &space);

/// Value of the represented function at x inside the element.
double evaluate(const ElementSpace &space, const LocalCoefficients &c,
                double x);

}  // namespace sgdg

#endif  // SGDG_BASIS_HPP_
