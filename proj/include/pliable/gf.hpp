#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace pliable::gf {

/// Prime field GF(q). Elements are plain integers in [0, q).
class Field {
 public:
  /// Throws DomainError unless q is prime.
  explicit Field(std::uint32_t q = 2);

  std::uint32_t modulus() const { return q_; }

  std::uint32_t reduce(std::int64_t v) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % q_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + q_ - b) % q_; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q_);
  }
  /// Multiplicative inverse; throws DomainError for 0.
  std::uint32_t inv(std::uint32_t a) const;

  bool operator==(const Field&) const = default;

  static bool is_prime(std::uint32_t q);

 private:
  std::uint32_t q_;
};

using Vector = std::vector<std::uint32_t>;

/// Dense row-major matrix over a prime field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field = Field{});

  /// Entries are validated against the field (each must be < q).
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols, Field field = Field{});
  static Matrix from_rows(std::initializer_list<Vector> rows, Field field = Field{});
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows, Field field = Field{});
  static Matrix identity(std::size_t n, Field field = Field{});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint32_t v);

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix select_columns(std::span<const std::size_t> idx) const;
  Matrix with_column(std::span<const std::uint32_t> v) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_{};
  Vector data_;
};

/// Row rank by Gaussian elimination.
std::size_t rank(const Matrix& m);

/// True iff v is a linear combination of the columns of `cols`.
/// Throws DimensionError when v.size() != cols.rows().
bool in_span(std::span<const std::uint32_t> v, const Matrix& cols);

/// Value of unknown `target_col` in A_sub * b = x.
///
/// Throws InconsistentSystem when no b solves the system and NotDetermined
/// when b[target_col] differs between solutions.
std::uint32_t solve_for(const Matrix& a_sub, std::span<const std::uint32_t> x, std::size_t target_col);

/// Indices of columns that are not in the span of the other columns.
std::vector<std::size_t> isolated_columns(const Matrix& m);

/// Matrix-vector product over the matrix's field.
Vector multiply(const Matrix& a, std::span<const std::uint32_t> b);

}  // namespace pliable::gf
