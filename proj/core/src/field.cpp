#include "sgdg/field.hpp"

#include <optional>
#include <stdexcept>

#include "sgdg/projections.hpp"

namespace sgdg {

Discretization::Discretization(Mesh mesh, int p)
    : mesh_(std::move(mesh)),
      p_(p),
      tables_(p, mesh_.n_sub(), default_points_per_subcell(p)) {
  const ElementSpace ref(p_, mesh_.n_sub());
  reference_ = assemble_mass_matrices(ref);
  mass_factor_.compute(reference_.mass);
  if (mass_factor_.info() != Eigen::Success) {
    throw std::runtime_error("reference mass matrix is not positive definite");
  }
  poly_mass_ = polynomial_mass(ref);
  ho_projection_ = ho_projection_matrix(ref);
  averages_ = legendre_subcell_averages(ref);
}

FieldState::FieldState(std::size_t num_elements, int num_components, int dof)
    : num_elements_(num_elements),
      m_(num_components),
      dof_(dof),
      data_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(
          num_elements * static_cast<std::size_t>(num_components) * dof))) {}

FieldState project_initial(const Discretization &disc, int num_components,
                           const StateFunction &u0,
                           std::span<const double> breakpoints,
                           std::span<const double> gamma) {
  if (!gamma.empty() && gamma.size() != disc.num_elements()) {
    throw std::invalid_argument("one penalty value per element expected");
  }
  FieldState u(disc.num_elements(), num_components, disc.dof());
  QuadratureOptions options;
  options.breakpoints = breakpoints;
  for (std::size_t e = 0; e < disc.num_elements(); ++e) {
    const ElementSpace space = disc.space(e);
    const bool penalized = !gamma.empty() && gamma[e] > 0.0;
    std::optional<PenalizedSystem> system;
    if (penalized) system.emplace(disc.reference_matrices(), gamma[e]);
    for (int c = 0; c < num_components; ++c) {
      const Eigen::VectorXd b =
          load_vector([&](double x) { return u0(x)[c]; }, space, options) /
          disc.jacobian(e);
      u.local(e, c) = penalized ? system->solve(b)
                                : disc.reference_mass_factor().solve(b);
    }
  }
  return u;
}

Eigen::VectorXd subcell_averages(const Discretization &disc,
                                 const FieldState &u, int c) {
  const int p = disc.degree();
  const int n = disc.n_sub();
  Eigen::VectorXd out(static_cast<Eigen::Index>(disc.num_elements()) * n);
  for (std::size_t e = 0; e < disc.num_elements(); ++e) {
    const auto local = u.local(e, c);
    Eigen::VectorXd avg = local.tail(n);
    if (p > 0) avg += disc.subcell_averages().rightCols(p) * local.head(p);
    out.segment(static_cast<Eigen::Index>(e) * n, n) = avg;
  }
  return out;
}

double evaluate(const Discretization &disc, const FieldState &u, int c,
                double x) {
  const std::size_t e = disc.mesh().locate(x);
  return evaluate(disc.space(e), u.local(e, c), x);
}

double polynomial_energy(const Discretization &disc, const FieldState &u,
                         int c, std::size_t e) {
  if (disc.degree() == 0) return 0.0;
  const auto modes = u.local(e, c).head(disc.degree());
  return disc.jacobian(e) * modes.dot(disc.reference_poly_mass() * modes);
}

double polynomial_energy(const Discretization &disc, const FieldState &u,
                         int c) {
  double sum = 0.0;
  for (std::size_t e = 0; e < disc.num_elements(); ++e) {
    sum += polynomial_energy(disc, u, c, e);
  }
  return sum;
}

double total_mass(const Discretization &disc, const FieldState &u, int c) {
  // Legendre modes integrate to zero; only the indicators carry mass.
  double sum = 0.0;
  for (std::size_t e = 0; e < disc.num_elements(); ++e) {
    const double width = disc.mesh().element(e).width() / disc.n_sub();
    sum += width * u.local(e, c).tail(disc.n_sub()).sum();
  }
  return sum;
}

}  // namespace sgdg
