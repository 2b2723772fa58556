#ifndef SGDG_PROJECTIONS_HPP_
#define SGDG_PROJECTIONS_HPP_

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "sgdg/basis.hpp"

namespace sgdg {

using ScalarFunction = std::function<double(double)>;

struct QuadratureOptions {
  /// Gauss points per integration piece; 0 selects p + 2.
  int points_per_subcell = 0;
  /// Physical locations where the integrand may jump. Sub-cells containing
  /// one are integrated piecewise.
  std::span<const double> breakpoints = {};
};

/// b_i = (f, phi_i)_K.
Eigen::VectorXd load_vector(const ScalarFunction &f, const ElementSpace &space,
                            const QuadratureOptions &options = {});

/// Cholesky factor of M + kappa M_pp. The penalty only touches the
/// Legendre block, so the factorization stays accurate up to kappa ~ 1e12.
class PenalizedSystem {
 public:
  PenalizedSystem(const MassMatrices &matrices, double kappa);
  PenalizedSystem(const ElementSpace &space, double kappa);

  Eigen::VectorXd solve(const Eigen::VectorXd &rhs) const;

 private:
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

/// L2 projection onto V_delta(K).
LocalCoefficients project_l2(const ScalarFunction &f, const ElementSpace &space,
                             const QuadratureOptions &options = {});

/// Legendre coefficients (L_1..L_p) of the zero-average polynomial projection.
Eigen::VectorXd project_ho(const LocalCoefficients &c,
                           const ElementSpace &space);

/// Sub-cell averages of the represented function.
Eigen::VectorXd project_lo(const LocalCoefficients &c,
                           const ElementSpace &space);

/// Minimizer of |w - f|^2 + gamma |w_p|^2 over V_delta(K), w_p being the
/// Legendre mode part of w.
LocalCoefficients project_penalized(const ScalarFunction &f,
                                    const ElementSpace &space, double gamma,
                                    const QuadratureOptions &options = {});

/// Best full polynomial (L_0..L_p) for a given set of sub-cell averages, in
/// the |k_j|-weighted least-squares sense. The pseudo-inverse is built once
/// from an SVD; construction throws NonInjectiveError when averaging is not
/// injective on polynomials of degree p.
class AveragePreservingProjector {
 public:
  explicit AveragePreservingProjector(const ElementSpace &space);

  /// Legendre coefficients L_0..L_p.
  Eigen::VectorXd fit(const Eigen::VectorXd &averages) const;
  /// Sub-cell averages minus the averages of the fitted polynomial.
  Eigen::VectorXd residual(const Eigen::VectorXd &averages) const;

  double smallest_singular_value() const { return smin_; }
  double largest_singular_value() const { return smax_; }

 private:
  Eigen::MatrixXd pinv_;      // (p+1) x n
  Eigen::MatrixXd residual_;  // n x n
  double smin_ = 0.0;
  double smax_ = 0.0;
};

/// Legendre coefficients L_0..L_p of the average-preserving polynomial.
Eigen::VectorXd project_avg_preserving(const LocalCoefficients &c,
                                       const ElementSpace &space);

}  // namespace sgdg

#endif  // SGDG_PROJECTIONS_HPP_
