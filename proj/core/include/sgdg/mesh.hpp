#ifndef SGDG_MESH_HPP_
#define SGDG_MESH_HPP_

#include <cstddef>
#include <utility>
#include <vector>

namespace sgdg {

struct Interval {
  double left;
  double right;

  double width() const { return right - left; }
  double center() const { return 0.5 * (left + right); }
};

/// 1D element partition with a uniform sub-grid of `n_sub` cells per element.
class Mesh {
 public:
  /// `boundaries` must be strictly increasing with at least two entries.
  Mesh(std::vector<double> boundaries, int n_sub);

  std::size_t num_elements() const { return boundaries_.size() - 1; }
  int n_sub() const { return n_sub_; }
  std::size_t num_subcells() const { return num_elements() * n_sub_; }

  double left() const { return boundaries_.front(); }
  double right() const { return boundaries_.back(); }
  double length() const { return right() - left(); }

  const std::vector<double> &element_boundaries() const { return boundaries_; }
  Interval element(std::size_t e) const;
  Interval subcell(std::size_t e, int sub) const;

  /// Element index containing x; the right end maps to the last element.
  std::size_t locate(double x) const;

 private:
  std::vector<double> boundaries_;
  int n_sub_;
};

Mesh build_uniform_mesh(double a, double b, int n_elements, int n_sub);

/// Bounds of sub-cell `sub` of element `element`; throws std::out_of_range.
Interval subcell_bounds(const Mesh &mesh, std::size_t element, int sub);

}  // namespace sgdg

#endif  // SGDG_MESH_HPP_
