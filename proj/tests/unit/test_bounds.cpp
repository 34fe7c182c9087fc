#include <doctest.h>

#include <cmath>

#include "pliable/errors.hpp"
#include "pliable/solvers.hpp"

using namespace pliable;
using namespace pliable::solvers;

TEST_CASE("expected pattern count examples") {
  CHECK(expected_patterns(2, 2, 0.5, 1, 0) == doctest::Approx(0.0));
  CHECK(expected_patterns(2, 2, 0.5, 1, 1) == doctest::Approx(std::log(2.0)));
  CHECK(expected_patterns(2, 2, 0.5, 1, 2) == doctest::Approx(std::log(0.125)));
  CHECK_THROWS_AS(expected_patterns(2, 2, 0.5, 2, 2), DomainError);
  CHECK_THROWS_AS(expected_patterns(2, 2, 1.0, 1, 1), DomainError);
}

TEST_CASE("expected count for k = 1 equals C(n, c) m p^c") {
  // One star: choose its message and c leaves; all c edges present.
  const double got = std::exp(expected_patterns(7, 9, 0.3, 3, 1));
  CHECK(got == doctest::Approx(7 * 84 * std::pow(0.3, 3)));
}

TEST_CASE("k0 bracket") {
  const auto small = k0_bracket(2, 2, 0.5, 1);
  CHECK(small.k0 == 1);
  CHECK(k0_bracket(4, 3, 0.5, 5).k0 == 0);
  const auto b = k0_bracket(1024, 1024, 0.5, 1);
  CHECK(b.in_bracket);
  CHECK(b.in_strict_bracket);
  CHECK(b.x1 <= b.x2);
  // k0 is the last k whose expected count reaches one.
  CHECK(expected_patterns(1024, 1024, 0.5, 1, b.k0) >= 0.0);
  CHECK(expected_patterns(1024, 1024, 0.5, 1, b.k0 + 1) < 0.0);
  CHECK(std::isfinite(b.x1_root));
}
