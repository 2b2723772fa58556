#ifndef SGDG_FIELD_HPP_
#define SGDG_FIELD_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sgdg/basis.hpp"
#include "sgdg/mesh.hpp"
#include "sgdg/physics.hpp"

namespace sgdg {

/// Mesh plus the per-(p, n) reference data shared by every element. Element
/// matrices are the reference ones scaled by the element Jacobian h/2.
class Discretization {
 public:
  Discretization(Mesh mesh, int p);

  const Mesh &mesh() const { return mesh_; }
  int degree() const { return p_; }
  int n_sub() const { return mesh_.n_sub(); }
  int dof() const { return p_ + mesh_.n_sub(); }
  std::size_t num_elements() const { return mesh_.num_elements(); }

  ElementSpace space(std::size_t e) const {
    return {p_, mesh_.n_sub(), mesh_.element(e)};
  }
  double jacobian(std::size_t e) const {
    return 0.5 * mesh_.element(e).width();
  }

  const ReferenceTables &tables() const { return tables_; }
  /// Matrices on the reference element [-1, 1].
  const MassMatrices &reference_matrices() const { return reference_; }
  const Eigen::LLT<Eigen::MatrixXd> &reference_mass_factor() const {
    return mass_factor_;
  }
  const Eigen::MatrixXd &reference_poly_mass() const { return poly_mass_; }
  /// (p x dof), element independent.
  const Eigen::MatrixXd &ho_projection() const { return ho_projection_; }
  /// (n x (p+1)) sub-cell averages of L_0..L_p, element independent.
  const Eigen::MatrixXd &subcell_averages() const { return averages_; }

 private:
  Mesh mesh_;
  int p_;
  ReferenceTables tables_;
  MassMatrices reference_;
  Eigen::LLT<Eigen::MatrixXd> mass_factor_;
  Eigen::MatrixXd poly_mass_;
  Eigen::MatrixXd ho_projection_;
  Eigen::MatrixXd averages_;
};

/// Global coefficient vector U, laid out element-major, then component,
/// then local dof.
class FieldState {
 public:
  FieldState() = default;
  FieldState(std::size_t num_elements, int num_components, int dof);

  std::size_t num_elements() const { return num_elements_; }
  int num_components() const { return m_; }
  int dof() const { return dof_; }
  std::size_t size() const { return static_cast<std::size_t>(data_.size()); }

  std::size_t offset(std::size_t e, int c) const {
    return (e * static_cast<std::size_t>(m_) + c) * dof_;
  }
  auto local(std::size_t e, int c) {
    return data_.segment(static_cast<Eigen::Index>(offset(e, c)), dof_);
  }
  auto local(std::size_t e, int c) const {
    return data_.segment(static_cast<Eigen::Index>(offset(e, c)), dof_);
  }

  Eigen::VectorXd &coefficients() { return data_; }
  const Eigen::VectorXd &coefficients() const { return data_; }

  double time = 0.0;

  bool all_finite() const { return data_.allFinite(); }

 private:
  std::size_t num_elements_ = 0;
  int m_ = 0;
  int dof_ = 0;
  Eigen::VectorXd data_;
};

using StateFunction = std::function<State(double)>;

/// U_0 = pi_delta u_0 per element and component, or the penalized
/// projection where a per-element gamma > 0 is given. Sub-cells containing a
/// breakpoint are integrated piecewise.
FieldState project_initial(const Discretization &disc, int num_components,
                           const StateFunction &u0,
                           std::span<const double> breakpoints = {},
                           std::span<const double> gamma = {});

/// Sub-cell averages of component c, in global sub-cell order.
Eigen::VectorXd subcell_averages(const Discretization &disc,
                                 const FieldState &u, int c);

/// Point value of component c at x.
double evaluate(const Discretization &disc, const FieldState &u, int c,
                double x);

/// Squared L2 norm of the Legendre mode part of component c, summed over
/// elements or on a single element.
double polynomial_energy(const Discretization &disc, const FieldState &u,
                         int c);
double polynomial_energy(const Discretization &disc, const FieldState &u,
                         int c, std::size_t e);

/// Integral of component c over the domain.
double total_mass(const Discretization &disc, const FieldState &u, int c);

}  // namespace sgdg

#endif  // SGDG_FIELD_HPP_
