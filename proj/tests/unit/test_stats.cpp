#include <doctest.h>

#include <cmath>

#include "pliable/errors.hpp"
#include "pliable/stats.hpp"

using namespace pliable::stats;

TEST_CASE("running mean and variance") {
  Running r;
  for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}) r.add(x);
  CHECK(r.mean() == doctest::Approx(5.0));
  CHECK(r.variance() == doctest::Approx(32.0 / 7.0));
  CHECK(r.sem() == doctest::Approx(std::sqrt(32.0 / 7.0 / 8.0)));
}

TEST_CASE("chi-square tail matches closed forms") {
  // dof 2: exp(-x/2). dof 1 at 3.841459: 0.05.
  CHECK(chi_square_sf(3.0, 2) == doctest::Approx(std::exp(-1.5)));
  CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("uniformity test on exact and skewed counts") {
  const auto even = chi_square_uniform({100, 100, 100, 100});
  CHECK(even.statistic == doctest::Approx(0.0));
  CHECK(even.dof == 3);
  CHECK(even.p_value == doctest::Approx(1.0));
  const auto skew = chi_square_uniform({400, 0, 0, 0});
  CHECK(skew.p_value < 1e-6);
}

TEST_CASE("independence test") {
  const auto indep = chi_square_independence({{10, 20}, {30, 60}});
  CHECK(indep.statistic == doctest::Approx(0.0));
  CHECK(indep.dof == 1);
  const auto dep = chi_square_independence({{50, 0}, {0, 50}});
  CHECK(dep.p_value < 1e-10);
  const auto dropped = chi_square_independence({{10, 20, 0}, {30, 60, 0}});
  CHECK(dropped.dof == 1);
}

TEST_CASE("binomials") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK(binomial(3, 5) == 0);
  CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0));
}
