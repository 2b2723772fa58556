#ifndef SGDG_REFERENCE_HPP_
#define SGDG_REFERENCE_HPP_

#include <filesystem>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sgdg/cases.hpp"

namespace sgdg {

/// Piecewise-constant solution on a uniform grid of `cells` cells.
class FvSolution {
 public:
  FvSolution() = default;
  FvSolution(double left, double right, double time, Eigen::MatrixXd values);

  double left() const { return left_; }
  double right() const { return right_; }
  double time() const { return time_; }
  int cells() const { return static_cast<int>(values_.cols()); }
  int num_components() const { return static_cast<int>(values_.rows()); }
  double width() const { return (right_ - left_) / cells(); }
  /// (components x cells) cell averages.
  const Eigen::MatrixXd &values() const { return values_; }

  /// Value of component c at x; a point on a face takes the right cell.
  double operator()(int c, double x) const;
  /// Interior cell faces, in increasing order.
  std::vector<double> faces() const;

 private:
  double left_ = 0.0;
  double right_ = 1.0;
  double time_ = 0.0;
  Eigen::MatrixXd values_;
};

struct FvOptions {
  double cfl = 0.4;
  /// Defaults to the case's final time.
  std::optional<double> t_final;
};

/// First-order finite volumes with the Roe flux and forward Euler, the step
/// recomputed from the current wave speed and the last one trimmed to land
/// on t_final.
FvSolution fv_solve(const CaseSetup &setup, int cells,
                    const FvOptions &options = {});

/// fv_solve at the case's final time, read from or written to
/// `cache_dir/<case>_<cells>.bin` when a directory is given. Unreadable or
/// inconsistent cache files are recomputed and overwritten.
FvSolution fv_reference(CaseKind kind, int cells,
                        const std::optional<std::filesystem::path> &cache_dir =
                            std::nullopt);

/// L1 distance between two piecewise-constant solutions on the same domain.
double l1_distance(const FvSolution &a, const FvSolution &b, int component);

}  // namespace sgdg

#endif  // SGDG_REFERENCE_HPP_
