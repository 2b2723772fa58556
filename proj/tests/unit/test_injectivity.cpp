#include <doctest.h>

#include <json.hpp>

#include "sgdg/injectivity.hpp"

using namespace sgdg;

TEST_CASE("too few sub-cells") {
  const InjectivityReport r = check_injectivity(1, 0, 1);
  CHECK(r.n == 1);
  CHECK(r.dofs == 2);
  CHECK_FALSE(r.injective);
}

TEST_CASE("one-dimensional sweep holds for r >= p") {
  for (int p = 0; p <= 8; ++p) {
    for (int r = 0; r <= 10; ++r) {
      const InjectivityReport rep = check_injectivity(p, r, 1);
      CAPTURE(p);
      CAPTURE(r);
      CHECK(rep.n == r + 1);
      CHECK(rep.dofs == p + 1);
      if (r >= p) CHECK(rep.injective);
      // With fewer averages than unknowns the map cannot be injective.
      if (r + 1 < p + 1) CHECK_FALSE(rep.injective);
    }
  }
  CHECK(check_injectivity(4, 4, 1).injective);
}

TEST_CASE("triangles, degree 4 on the r = 3 subdivision") {
  const InjectivityReport rep = check_injectivity(4, 3, 2);
  CHECK(rep.n == 16);
  CHECK(rep.dofs == 15);
  CHECK(rep.injective);
  CHECK(rep.smin > kInjectivityTolerance * rep.smax);
}

TEST_CASE("triangles obey the lemma bound") {
  for (int p = 0; p <= 5; ++p) {
    for (int r = p; r <= 6; ++r) {
      CAPTURE(p);
      CAPTURE(r);
      const InjectivityReport rep = check_injectivity(p, r, 2);
      CHECK(rep.n == (r + 1) * (r + 1));
      CHECK(rep.dofs == (p + 1) * (p + 2) / 2);
      CHECK(rep.injective);
    }
  }
  // A single triangle cannot separate linear functions.
  CHECK_FALSE(check_injectivity(1, 0, 2).injective);
}

TEST_CASE("json report") {
  const auto j = nlohmann::json::parse(to_json(check_injectivity(2, 3, 1)));
  CHECK(j.at("p") == 2);
  CHECK(j.at("r") == 3);
  CHECK(j.at("d") == 1);
  CHECK(j.at("n") == 4);
  CHECK(j.at("dofs") == 3);
  CHECK(j.at("injective") == true);
  CHECK(j.at("smin").get<double>() > 0.0);
  CHECK(j.at("smax").get<double>() >= j.at("smin").get<double>());
}
