#include <doctest.h>

#include "simplex.hpp"

using namespace denmet;

TEST_CASE("textbook maximum") {
  // max x + y st x <= 2, y <= 3
  const auto res = simplex_maximize({{1, 0}, {0, 1}}, {2, 3}, {1, 1});
  CHECK(res.status == LpStatus::optimal);
  CHECK(res.objective == doctest::Approx(5.0));
  CHECK(res.x[0] == doctest::Approx(2.0));
  CHECK(res.x[1] == doctest::Approx(3.0));
}

TEST_CASE("binding combination of constraints") {
  // max 3x + 2y st x + y <= 4, x <= 2: both constraints bind at (2, 2)
  const auto res = simplex_maximize({{1, 1}, {1, 0}}, {4, 2}, {3, 2});
  CHECK(res.status == LpStatus::optimal);
  CHECK(res.objective == doctest::Approx(10.0));
  CHECK(res.x[0] == doctest::Approx(2.0));
  CHECK(res.x[1] == doctest::Approx(2.0));
}

TEST_CASE("unbounded detection") {
  // max x st -x <= 1
  const auto res = simplex_maximize({{-1.0}}, {1.0}, {1.0});
  CHECK(res.status == LpStatus::unbounded);
}

TEST_CASE("zero objective stays at the origin") {
  const auto res = simplex_maximize({{1, 1}}, {1}, {0, 0});
  CHECK(res.status == LpStatus::optimal);
  CHECK(res.objective == 0.0);
}

TEST_CASE("degenerate vertices terminate under Bland's rule") {
  // classic degeneracy: several constraints meet at the optimum
  const auto res = simplex_maximize({{1, 0}, {1, 0}, {1, 1}}, {1, 1, 1}, {1, 1});
  CHECK(res.status == LpStatus::optimal);
  CHECK(res.objective == doctest::Approx(1.0));
}

TEST_CASE("negative rhs is rejected") {
  CHECK_THROWS_AS(simplex_maximize({{1.0}}, {-1.0}, {1.0}), error);
}
