#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sgdg/basis.hpp"
#include "sgdg/projections.hpp"
#include "sgdg/quadrature.hpp"

using namespace sgdg;

TEST_CASE("legendre values") {
  CHECK(legendre_eval(0, 0.3) == 1.0);
  CHECK(legendre_eval(0, -0.9) == 1.0);
  CHECK(legendre_eval(1, 0.5) == 0.5);
  CHECK(legendre_eval(2, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i <= 10; ++i) {
    for (double x : {-1.0, -0.7, 0.0, 0.2, 0.95}) {
      CHECK(legendre_eval(i, x) ==
            doctest::Approx(oracle::legendre(i, x)).epsilon(1e-13));
      const LegendreValue lv = legendre_eval_with_derivative(i, x);
      const double h = 1e-6;
      const double fd =
          (oracle::legendre(i, x + h) - oracle::legendre(i, x - h)) / (2 * h);
      if (std::abs(x) < 0.99) CHECK(lv.derivative == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("gauss rules") {
  const GaussRule one = gauss_rule(1);
  REQUIRE(one.size() == 1);
  CHECK(one.nodes[0] == doctest::Approx(0.0));
  CHECK(one.weights[0] == doctest::Approx(2.0));

  const GaussRule two = gauss_rule(2);
  REQUIRE(two.size() == 2);
  CHECK(std::abs(two.nodes[0]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  double x2 = 0.0, x3 = 0.0;
  for (std::size_t g = 0; g < 2; ++g) {
    x2 += two.weights[g] * two.nodes[g] * two.nodes[g];
    x3 += two.weights[g] * std::pow(two.nodes[g], 3);
  }
  CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(x3) < 1e-15);

  for (int q = 1; q <= 20; ++q) {
    const GaussRule r = gauss_rule(q);
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    CHECK(std::abs(sum - 2.0) < 1e-14);
    // Exact up to degree 2q-1.
    for (int d = 0; d <= 2 * q - 1; ++d) {
      double s = 0.0;
      for (std::size_t g = 0; g < r.size(); ++g) s += r.weights[g] * std::pow(r.nodes[g], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
}

TEST_CASE("basis evaluation") {
  const ElementSpace space(2, 4, {0.0, 1.0});
  // Indicator of sub-cell 1 is dof p+1.
  CHECK(basis_eval(space, 3, 0.3) == 1.0);
  CHECK(basis_eval(space, 3, 0.6) == 0.0);
  CHECK(basis_eval(space, 0, 0.5) == doctest::Approx(0.0));
  CHECK(basis_eval(space, 1, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("mass matrix examples") {
  const Eigen::MatrixXd fv = assemble_mass(ElementSpace(0, 2, {0.0, 1.0}));
  CHECK(fv.isApprox(Eigen::Matrix2d{{0.5, 0.0}, {0.0, 0.5}}, 1e-15));

  const Eigen::MatrixXd dg = assemble_mass(ElementSpace(1, 1));
  CHECK(dg(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(dg(1, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(dg(0, 1)) < 1e-15);

  const Eigen::MatrixXd mixed = assemble_mass(ElementSpace(1, 2));
  CHECK(mixed(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(mixed(1, 0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(mixed(0, 2) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("mass matrix matches the brute-force Gram matrix") {
  for (int p = 0; p <= 6; ++p) {
    for (int n = 1; n <= 10; ++n) {
      const double a = 0.3, b = 1.1;
      const Eigen::MatrixXd m = assemble_mass(ElementSpace(p, n, {a, b}));
      const Eigen::MatrixXd ref = oracle::gram(p, n, a, b);
      CAPTURE(p);
      CAPTURE(n);
      CHECK((m - ref).norm() <= 1e-12 * ref.norm());
      CHECK((m - m.transpose()).norm() == 0.0);
      // Each family is orthogonal on its own.
      for (int i = 0; i < p + n; ++i) {
        for (int j = 0; j < p + n; ++j) {
          if (i != j && (i < p) == (j < p)) CHECK(std::abs(m(i, j)) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("penalty mass is the Legendre block of the mass matrix") {
  const Eigen::MatrixXd zero = assemble_penalty_mass(ElementSpace(0, 3));
  CHECK(zero.norm() == 0.0);

  for (int p = 1; p <= 6; ++p) {
    for (int n = 1; n <= 10; ++n) {
      const ElementSpace space(p, n, {-0.2, 0.7});
      const Eigen::MatrixXd mpp = assemble_penalty_mass(space);
      const Eigen::MatrixXd m = assemble_mass(space);
      CHECK((mpp.topLeftCorner(p, p) - m.topLeftCorner(p, p)).norm() < 1e-14);
      CHECK(mpp.rightCols(n).norm() == 0.0);
      CHECK(mpp.bottomRows(n).norm() == 0.0);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(mpp);
      lu.setThreshold(1e-12);
      CHECK(lu.rank() == p);
      CHECK((polynomial_mass(space) - m.topLeftCorner(p, p)).norm() < 1e-14);
    }
  }
}

TEST_CASE("Gram matrix of the zero-average projection of an indicator") {
  // Reference value for the alternative penalty form: the projection of the
  // left-half indicator on [-1, 1] is -3/4 L_1 with squared norm 3/8.
  const ElementSpace space(1, 2);
  const Eigen::MatrixXd proj = ho_projection_matrix(space);
  CHECK(proj(0, 1) == doctest::Approx(-0.75).epsilon(1e-14));
  const Eigen::MatrixXd gram = proj.transpose() * polynomial_mass(space) * proj;
  CHECK(gram(1, 1) == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
  const double brute = oracle::integrate(
      [](double x) { return std::pow(-0.75 * x, 2); }, -1.0, 1.0);
  CHECK(gram(1, 1) == doctest::Approx(brute).epsilon(1e-14));
}

TEST_CASE("reference tables") {
  const ReferenceTables t(3, 4, 5);
  CHECK(t.num_points() == 20);
  CHECK(t.weight.sum() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(t.subcell_of_point(7) == 1);
  for (int q = 0; q < t.num_points(); ++q) {
    const int j = t.subcell_of_point(q);
    CHECK(t.xi[q] > -1.0 + 0.5 * j);
    CHECK(t.xi[q] < -1.0 + 0.5 * (j + 1));
    for (int k = 0; k < 3; ++k) {
      CHECK(t.poly(q, k) == doctest::Approx(oracle::legendre(k + 1, t.xi[q])).epsilon(1e-13));
    }
  }
  for (int f = 0; f <= 4; ++f) {
    CHECK(t.face_poly(f, 2) == doctest::Approx(oracle::legendre(3, -1.0 + 0.5 * f)).epsilon(1e-13));
  }
}

TEST_CASE("evaluate reproduces the basis expansion") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const ElementSpace space(3, 5, {1.0, 3.0});
  Eigen::VectorXd c(8);
  for (int i = 0; i < 8; ++i) c[i] = coef(rng);
  for (double x : {1.0, 1.33, 2.0, 2.71, 3.0}) {
    double expected = 0.0;
    for (int i = 0; i < 8; ++i) expected += c[i] * oracle::basis(3, 5, 1.0, 3.0, i, x);
    CHECK(evaluate(space, c, x) == doctest::Approx(expected).epsilon(1e-13));
  }
}
