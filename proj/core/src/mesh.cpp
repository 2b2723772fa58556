#include "sgdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sgdg/errors.hpp"

namespace sgdg {

Mesh::Mesh(std::vector<double> boundaries, int n_sub)
    : boundaries_(std::move(boundaries)), n_sub_(n_sub) {
  if (boundaries_.size() < 2) {
    throw ConfigError("mesh needs at least one element");
  }
  if (n_sub_ < 1) {
    throw ConfigError("mesh needs at least one sub-cell per element");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (!(boundaries_[i] > boundaries_[i - 1])) {
      throw ConfigError("element boundaries must be strictly increasing");
    }
  }
}

Interval Mesh::element(std::size_t e) const {
  if (e >= num_elements()) {
    throw std::out_of_range("element index " + std::to_string(e) +
                            " out of range");
  }
  return {boundaries_[e], boundaries_[e + 1]};
}

Interval Mesh::subcell(std::size_t e, int sub) const {
  if (sub < 0 || sub >= n_sub_) {
    throw std::out_of_range("sub-cell index " + std::to_string(sub) +
                            " out of range");
  }
  const Interval k = element(e);
  const double h = k.width() / n_sub_;
  // The last sub-cell ends exactly on the element boundary.
  const double right = sub + 1 == n_sub_ ? k.right : k.left + (sub + 1) * h;
  return {k.left + sub * h, right};
}

std::size_t Mesh::locate(double x) const {
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), x);
  if (it == boundaries_.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - boundaries_.begin()) - 1;
  return std::min(idx, num_elements() - 1);
}

Mesh build_uniform_mesh(double a, double b, int n_elements, int n_sub) {
  if (!(b > a)) throw ConfigError("domain must satisfy b > a");
  if (n_elements < 1) throw ConfigError("n_elements must be positive");
  if (n_sub < 1) throw ConfigError("n_sub must be positive");
  std::vector<double> boundaries(static_cast<std::size_t>(n_elements) + 1);
  const double h = (b - a) / n_elements;
  for (int i = 0; i <= n_elements; ++i) boundaries[i] = a + i * h;
  boundaries.back() = b;
  return Mesh(std::move(boundaries), n_sub);
}

Interval subcell_bounds(const Mesh &mesh, std::size_t element, int sub) {
  return mesh.subcell(element, sub);
}

}  // namespace sgdg
