#include <doctest.h>

#include <algorithm>
#include <vector>

#include "pliable/errors.hpp"
#include "pliable/gf.hpp"

using namespace pliable;
using gf::Field;
using gf::Matrix;
using gf::Vector;

namespace {

// Every binary r x c matrix, row-major bits of `code`.
Matrix binary(std::size_t r, std::size_t c, std::size_t code) {
  Matrix m(r, c);
  for (std::size_t k = 0; k < r * c; ++k) m.set(k / c, k % c, (code >> k) & 1U);
  return m;
}

// Span membership by trying all 2^c combinations of the columns.
bool span_oracle(const Vector& v, const Matrix& m) {
  for (std::size_t mask = 0; mask < (std::size_t{1} << m.cols()); ++mask) {
    Vector s(m.rows(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (mask >> j & 1) {
        for (std::size_t r = 0; r < m.rows(); ++r) s[r] ^= m.at(r, j);
      }
    }
    if (s == v) return true;
  }
  return false;
}

// Rank as log2 of the number of distinct column combinations.
std::size_t rank_oracle(const Matrix& m) {
  std::vector<Vector> seen;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m.cols()); ++mask) {
    Vector s(m.rows(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (mask >> j & 1) {
        for (std::size_t r = 0; r < m.rows(); ++r) s[r] ^= m.at(r, j);
      }
    }
    if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(s);
  }
  std::size_t r = 0;
  while ((std::size_t{1} << r) < seen.size()) ++r;
  return r;
}

}  // namespace

TEST_CASE("field arithmetic over GF(5)") {
  Field f(5);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.mul(3, 4) == 2);
  for (std::uint32_t a = 1; a < 5; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.reduce(-1) == 4);
  CHECK_THROWS_AS(Field(4), DomainError);
  CHECK_THROWS_AS(f.inv(0), DomainError);
}

TEST_CASE("rank and span agree with exhaustive enumeration over GF(2)") {
  for (std::size_t code = 0; code < (1U << 9); ++code) {
    const auto m = binary(3, 3, code);
    CHECK(gf::rank(m) == rank_oracle(m));
    for (std::size_t v = 0; v < 8; ++v) {
      const Vector vec{static_cast<std::uint32_t>(v & 1), static_cast<std::uint32_t>(v >> 1 & 1),
                       static_cast<std::uint32_t>(v >> 2 & 1)};
      CHECK(gf::in_span(vec, m) == span_oracle(vec, m));
    }
  }
}

TEST_CASE("isolated columns are exactly those whose removal drops the rank") {
  for (std::size_t code = 0; code < (1U << 12); code += 7) {
    const auto m = binary(3, 4, code);
    std::vector<std::size_t> expect;
    for (std::size_t j = 0; j < 4; ++j) {
      std::vector<std::size_t> rest;
      for (std::size_t k = 0; k < 4; ++k) {
        if (k != j) rest.push_back(k);
      }
      if (gf::rank(m.select_columns(rest)) < gf::rank(m)) expect.push_back(j);
    }
    CHECK(gf::isolated_columns(m) == expect);
  }
}

TEST_CASE("solve_for returns the pinned unknown or reports why not") {
  // x1 = b1 + b2, x2 = b2: b1 = x1 - x2.
  const auto a = Matrix::from_rows({{1, 1}, {0, 1}});
  const Vector x{1, 1};
  CHECK(gf::solve_for(a, x, 0) == 0);
  CHECK(gf::solve_for(a, x, 1) == 1);
  const auto under = Matrix::from_rows({{1, 1}});
  CHECK_THROWS_AS(gf::solve_for(under, Vector{1}, 0), NotDetermined);
  const auto twice = Matrix::from_rows({{1, 0}, {1, 0}});
  CHECK_THROWS_AS(gf::solve_for(twice, Vector{0, 1}, 0), InconsistentSystem);
}

TEST_CASE("solve_for over GF(3) matches brute-force solution search") {
  Field f(3);
  const auto a = Matrix::from_rows({{1, 2, 0}, {0, 1, 1}, {2, 0, 1}}, f);
  for (std::uint32_t b0 = 0; b0 < 3; ++b0) {
    for (std::uint32_t b1 = 0; b1 < 3; ++b1) {
      for (std::uint32_t b2 = 0; b2 < 3; ++b2) {
        const Vector b{b0, b1, b2};
        const auto x = gf::multiply(a, b);
        if (gf::rank(a) == 3) {
          CHECK(gf::solve_for(a, x, 0) == b0);
          CHECK(gf::solve_for(a, x, 2) == b2);
        }
      }
    }
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const auto a = Matrix::from_rows({{1, 0}, {0, 1}});
  CHECK_THROWS_AS(gf::in_span(Vector{1, 0, 1}, a), DimensionError);
  CHECK_THROWS_AS(gf::multiply(a, Vector{1}), DimensionError);
}
