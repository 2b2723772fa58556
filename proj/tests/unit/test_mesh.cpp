#include <doctest.h>

#include <stdexcept>

#include "sgdg/errors.hpp"
#include "sgdg/mesh.hpp"

using namespace sgdg;

TEST_CASE("single element with one sub-cell") {
  const Mesh mesh = build_uniform_mesh(0.0, 1.0, 1, 1);
  CHECK(mesh.num_elements() == 1);
  CHECK(mesh.num_subcells() == 1);
  const Interval k = subcell_bounds(mesh, 0, 0);
  CHECK(k.left == 0.0);
  CHECK(k.right == 1.0);
}

TEST_CASE("nine elements of eight sub-cells") {
  const Mesh mesh = build_uniform_mesh(0.0, 1.0, 9, 8);
  CHECK(mesh.num_elements() == 9);
  CHECK(mesh.num_subcells() == 72);
  for (std::size_t e = 0; e < 9; ++e) {
    CHECK(mesh.element(e).width() == doctest::Approx(1.0 / 9).epsilon(1e-14));
  }
  const Interval k = subcell_bounds(mesh, 0, 7);
  CHECK(k.left == doctest::Approx(7.0 / 72).epsilon(1e-14));
  CHECK(k.right == doctest::Approx(8.0 / 72).epsilon(1e-14));
}

TEST_CASE("shock tube mesh widths") {
  const Mesh mesh = build_uniform_mesh(-5.0, 5.0, 64, 5);
  CHECK(mesh.element(10).width() == doctest::Approx(0.15625).epsilon(1e-14));
  CHECK(mesh.subcell(10, 2).width() == doctest::Approx(0.03125).epsilon(1e-14));
}

TEST_CASE("halving and identity sub-grids") {
  const Mesh halves = build_uniform_mesh(0.0, 1.0, 1, 2);
  CHECK(subcell_bounds(halves, 0, 0).left == 0.0);
  CHECK(subcell_bounds(halves, 0, 0).right == 0.5);

  const Mesh whole = build_uniform_mesh(0.0, 2.0, 4, 1);
  for (std::size_t e = 0; e < 4; ++e) {
    CHECK(subcell_bounds(whole, e, 0).left == whole.element(e).left);
    CHECK(subcell_bounds(whole, e, 0).right == whole.element(e).right);
  }
}

TEST_CASE("out of range indices throw") {
  const Mesh mesh = build_uniform_mesh(0.0, 1.0, 3, 4);
  CHECK_THROWS_AS(subcell_bounds(mesh, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(subcell_bounds(mesh, 0, 4), std::out_of_range);
  CHECK_THROWS_AS(subcell_bounds(mesh, 0, -1), std::out_of_range);
}

TEST_CASE("invalid construction") {
  CHECK_THROWS_AS(build_uniform_mesh(1.0, 0.0, 3, 2), ConfigError);
  CHECK_THROWS_AS(build_uniform_mesh(0.0, 1.0, 0, 2), ConfigError);
  CHECK_THROWS_AS(build_uniform_mesh(0.0, 1.0, 3, 0), ConfigError);
  CHECK_THROWS_AS(Mesh({0.0, 0.5, 0.5, 1.0}, 2), ConfigError);
}

TEST_CASE("sub-cells tile the domain") {
  for (int ne : {1, 3, 7, 64}) {
    for (int n : {1, 2, 5, 8}) {
      const Mesh mesh = build_uniform_mesh(-5.0, 5.0, ne, n);
      double total = 0.0;
      double cursor = mesh.left();
      for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
        const Interval el = mesh.element(e);
        for (int j = 0; j < n; ++j) {
          const Interval k = subcell_bounds(mesh, e, j);
          CHECK(k.left == doctest::Approx(cursor).epsilon(1e-13));
          CHECK(k.right > k.left);
          CHECK(k.left >= el.left - 1e-14);
          CHECK(k.right <= el.right + 1e-14);
          total += k.width();
          cursor = k.right;
        }
      }
      CHECK(std::abs(total - 10.0) < 1e-13 * 10.0);
      CHECK(cursor == doctest::Approx(mesh.right()).epsilon(1e-14));
    }
  }
}

TEST_CASE("locate maps points to their element") {
  const Mesh mesh = build_uniform_mesh(0.0, 1.0, 4, 2);
  CHECK(mesh.locate(0.0) == 0);
  CHECK(mesh.locate(0.3) == 1);
  CHECK(mesh.locate(0.75) == 3);
  CHECK(mesh.locate(1.0) == 3);
}
