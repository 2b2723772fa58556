#include "sgdg/injectivity.hpp"

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "sgdg/errors.hpp"
#include "sgdg/quadrature.hpp"

namespace sgdg {
namespace {

using Point = std::array<double, 2>;
using Triangle = std::array<Point, 3>;

// Monomials are taken in coordinates centred on the simplex so that the
// singular values reflect the geometry rather than the basis scaling.
double centred(double x, int d) { return d == 1 ? 2.0 * x - 1.0 : 1.5 * (x - 1.0 / 3.0); }

Eigen::MatrixXd averages_1d(int p, int r) {
  const int m = r + 1;
  Eigen::MatrixXd a(m, p + 1);
  for (int i = 0; i < m; ++i) {
    const double ta = centred(static_cast<double>(i) / m, 1);
    const double tb = centred(static_cast<double>(i + 1) / m, 1);
    for (int k = 0; k <= p; ++k) {
      a(i, k) = (std::pow(tb, k + 1) - std::pow(ta, k + 1)) /
                ((k + 1) * (tb - ta));
    }
  }
  return a;
}

std::vector<Triangle> uniform_triangles(int r) {
  const int m = r + 1;
  const double h = 1.0 / m;
  std::vector<Triangle> tris;
  tris.reserve(static_cast<std::size_t>(m) * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i + j < m; ++i) {
      tris.push_back({Point{i * h, j * h}, Point{(i + 1) * h, j * h},
                      Point{i * h, (j + 1) * h}});
      if (i + j + 2 <= m) {
        tris.push_back({Point{(i + 1) * h, j * h},
                        Point{(i + 1) * h, (j + 1) * h},
                        Point{i * h, (j + 1) * h}});
      }
    }
  }
  return tris;
}

Eigen::MatrixXd averages_2d(int p, int r) {
  std::vector<std::pair<int, int>> exponents;
  for (int total = 0; total <= p; ++total) {
    for (int a = total; a >= 0; --a) exponents.emplace_back(a, total - a);
  }
  const auto tris = uniform_triangles(r);
  // Collapsed (Duffy) coordinates; degree p+1 in u, p in v.
  const GaussRule rule = gauss_rule(p + 2);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(tris.size()),
      static_cast<Eigen::Index>(exponents.size()));
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto &[v0, v1, v2] = tris[t];
    for (std::size_t gu = 0; gu < rule.size(); ++gu) {
      const double u = 0.5 * (rule.nodes[gu] + 1.0);
      for (std::size_t gv = 0; gv < rule.size(); ++gv) {
        const double v = 0.5 * (rule.nodes[gv] + 1.0);
        // average = 2 * int_0^1 int_0^1 f (1-u) du dv
        const double w =
            2.0 * 0.25 * rule.weights[gu] * rule.weights[gv] * (1.0 - u);
        const double l1 = u, l2 = v * (1.0 - u);
        const double x = v0[0] + l1 * (v1[0] - v0[0]) + l2 * (v2[0] - v0[0]);
        const double y = v0[1] + l1 * (v1[1] - v0[1]) + l2 * (v2[1] - v0[1]);
        const double sx = centred(x, 2), sy = centred(y, 2);
        for (std::size_t k = 0; k < exponents.size(); ++k) {
          a(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(k)) +=
              w * std::pow(sx, exponents[k].first) *
              std::pow(sy, exponents[k].second);
        }
      }
    }
  }
  return a;
}

}  // namespace

InjectivityReport check_injectivity(int p, int r, int d) {
  if (p < 0 || r < 0) throw ConfigError("p and r must be non-negative");
  if (d != 1 && d != 2) throw ConfigError("dimension must be 1 or 2");
  const Eigen::MatrixXd a = d == 1 ? averages_1d(p, r) : averages_2d(p, r);
  InjectivityReport report;
  report.p = p;
  report.r = r;
  report.d = d;
  report.n = static_cast<int>(a.rows());
  report.dofs = static_cast<int>(a.cols());
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
  report.smax = sv[0];
  report.smin = report.n >= report.dofs ? sv[report.dofs - 1] : 0.0;
  report.injective = report.smin > kInjectivityTolerance * report.smax;
  return report;
}

std::string to_json(const InjectivityReport &report) {
  nlohmann::ordered_json j;
  j["p"] = report.p;
  j["r"] = report.r;
  j["d"] = report.d;
  j["n"] = report.n;
  j["dofs"] = report.dofs;
  j["injective"] = report.injective;
  j["smin"] = report.smin;
  j["smax"] = report.smax;
  return j.dump();
}

}  // namespace sgdg
