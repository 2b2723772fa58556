#include "sgdg/projections.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "sgdg/errors.hpp"

namespace sgdg {
namespace {

constexpr double kRankTolerance = 1e-10;

}  // namespace

Eigen::VectorXd load_vector(const ScalarFunction &f, const ElementSpace &space,
                            const QuadratureOptions &options) {
  const int p = space.num_poly();
  const int q = options.points_per_subcell > 0
                    ? options.points_per_subcell
                    : default_points_per_subcell(space.degree());
  const GaussRule rule = gauss_rule(q);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.dof());
  std::vector<double> cuts;
  for (int j = 0; j < space.n_sub(); ++j) {
    const Interval k = space.subcell(j);
    cuts.assign({k.left});
    for (double x : options.breakpoints) {
      if (x > k.left && x < k.right) cuts.push_back(x);
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(k.right);
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
      const double a = cuts[piece];
      const double h = cuts[piece + 1] - a;
      for (std::size_t g = 0; g < rule.size(); ++g) {
        const double x = a + 0.5 * h * (rule.nodes[g] + 1.0);
        const double wf = 0.5 * h * rule.weights[g] * f(x);
        const double xi = space.to_reference(x);
        for (int m = 0; m < p; ++m) b[m] += wf * legendre_eval(m + 1, xi);
        b[p + j] += wf;
      }
    }
  }
  return b;
}

PenalizedSystem::PenalizedSystem(const ElementSpace &space, double kappa)
    : PenalizedSystem(assemble_mass_matrices(space), kappa) {}

PenalizedSystem::PenalizedSystem(const MassMatrices &matrices, double kappa) {
  if (kappa < 0.0) throw ConfigError("penalty must be non-negative");
  factor_.compute(matrices.mass + kappa * matrices.penalty_mass);
  if (factor_.info() != Eigen::Success) {
    throw std::runtime_error("penalized mass matrix is not positive definite");
  }
}

Eigen::VectorXd PenalizedSystem::solve(const Eigen::VectorXd &rhs) const {
  return factor_.solve(rhs);
}

LocalCoefficients project_l2(const ScalarFunction &f, const ElementSpace &space,
                             const QuadratureOptions &options) {
  const Eigen::MatrixXd m = assemble_mass(space);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("element mass matrix is singular");
  }
  return llt.solve(load_vector(f, space, options));
}

Eigen::VectorXd project_ho(const LocalCoefficients &c,
                           const ElementSpace &space) {
  return ho_projection_matrix(space) * c;
}

Eigen::VectorXd project_lo(const LocalCoefficients &c,
                           const ElementSpace &space) {
  const int p = space.num_poly();
  const Eigen::MatrixXd avg = legendre_subcell_averages(space);
  Eigen::VectorXd out = c.tail(space.n_sub());
  if (p > 0) out += avg.rightCols(p) * c.head(p);
  return out;
}

LocalCoefficients project_penalized(const ScalarFunction &f,
                                    const ElementSpace &space, double gamma,
                                    const QuadratureOptions &options) {
  if (gamma < 0.0) throw ConfigError("penalty gamma must be non-negative");
  const PenalizedSystem system(space, gamma);
  return system.solve(load_vector(f, space, options));
}

AveragePreservingProjector::AveragePreservingProjector(
    const ElementSpace &space) {
  const int n = space.n_sub();
  const int dofs = space.degree() + 1;
  const Eigen::MatrixXd avg = legendre_subcell_averages(space);
  // Uniform sub-grid: the weights |k_j| are equal and scale out; keep them
  // explicit so the fit matches the weighted definition on any sub-grid.
  Eigen::VectorXd sqrt_w(n);
  for (int j = 0; j < n; ++j) sqrt_w[j] = std::sqrt(space.subcell(j).width());
  const Eigen::MatrixXd weighted = sqrt_w.asDiagonal() * avg;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      weighted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd &sv = svd.singularValues();
  smax_ = sv.size() > 0 ? sv[0] : 0.0;
  smin_ = n >= dofs ? sv[dofs - 1] : 0.0;
  if (n < dofs || smin_ <= kRankTolerance * smax_) {
    throw NonInjectiveError(
        "sub-cell averaging is not injective for p=" +
        std::to_string(space.degree()) + ", n=" + std::to_string(n));
  }
  const Eigen::MatrixXd weighted_pinv =
      svd.matrixV() * sv.cwiseInverse().asDiagonal() *
      svd.matrixU().transpose();
  pinv_ = weighted_pinv * sqrt_w.asDiagonal();
  residual_ = Eigen::MatrixXd::Identity(n, n) - avg * pinv_;
}

Eigen::VectorXd AveragePreservingProjector::fit(
    const Eigen::VectorXd &averages) const {
  return pinv_ * averages;
}

Eigen::VectorXd AveragePreservingProjector::residual(
    const Eigen::VectorXd &averages) const {
  return residual_ * averages;
}

Eigen::VectorXd project_avg_preserving(const LocalCoefficients &c,
                                       const ElementSpace &space) {
  const AveragePreservingProjector projector(space);
  return projector.fit(project_lo(c, space));
}

}  // namespace sgdg
