#include "pliable/gf.hpp"

#include <string>
#include <utility>

#include "pliable/errors.hpp"

namespace pliable::gf {

bool Field::is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) throw DomainError("field modulus " + std::to_string(q) + " is not prime");
}

std::uint32_t Field::reduce(std::int64_t v) const {
  const std::int64_t q = q_;
  return static_cast<std::uint32_t>(((v % q) + q) % q);
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a % q_ == 0) throw DomainError("zero has no inverse");
  // Fermat: a^(q-2).
  std::uint64_t result = 1, base = a % q_, e = q_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols, Field field) {
  Matrix m(rows.size(), cols, field);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged row in matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<Vector> rows, Field field) {
  std::vector<Vector> v(rows);
  return from_rows(v, v.empty() ? 0 : v.front().size(), field);
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows, Field field) {
  Matrix m(rows, cols.size(), field);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionError("ragged column in matrix literal");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, std::uint32_t v) {
  if (v >= field_.modulus()) {
    throw DomainError("entry " + std::to_string(v) + " outside GF(" + std::to_string(field_.modulus()) + ")");
  }
  data_[r * cols_ + c] = v;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix m(rows_, idx.size(), field_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    for (std::size_t r = 0; r < rows_; ++r) m.data_[r * idx.size() + k] = at(r, idx[k]);
  }
  return m;
}

Matrix Matrix::with_column(std::span<const std::uint32_t> v) const {
  if (v.size() != rows_) throw DimensionError("column length does not match row count");
  Matrix m(rows_, cols_ + 1, field_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m.data_[r * (cols_ + 1) + c] = at(r, c);
    m.set(r, cols_, v[r]);
  }
  return m;
}

namespace {

// In-place reduction to reduced row echelon form. Returns the pivot column
// of each pivot row, in order.
std::vector<std::size_t> rref(std::vector<Vector>& rows, std::size_t cols, const Field& f) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
    std::size_t p = lead;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[lead], rows[p]);
    const std::uint32_t scale = f.inv(rows[lead][c]);
    for (auto& e : rows[lead]) e = f.mul(e, scale);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][c] == 0) continue;
      const std::uint32_t factor = rows[r][c];
      for (std::size_t k = 0; k < rows[r].size(); ++k) {
        rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[lead][k]));
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

std::vector<Vector> to_rows(const Matrix& m) {
  std::vector<Vector> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = m.row(r);
  return rows;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  auto rows = to_rows(m);
  return rref(rows, m.cols(), m.field()).size();
}

bool in_span(std::span<const std::uint32_t> v, const Matrix& cols) {
  if (v.size() != cols.rows()) throw DimensionError("vector length does not match column height");
  return rank(cols) == rank(cols.with_column(v));
}

std::uint32_t solve_for(const Matrix& a_sub, std::span<const std::uint32_t> x, std::size_t target_col) {
  if (x.size() != a_sub.rows()) throw DimensionError("right-hand side length does not match row count");
  if (target_col >= a_sub.cols()) throw DimensionError("target column out of range");

  const Field& f = a_sub.field();
  const std::size_t n = a_sub.cols();
  std::vector<Vector> rows(a_sub.rows());
  for (std::size_t r = 0; r < a_sub.rows(); ++r) {
    rows[r] = a_sub.row(r);
    if (x[r] >= f.modulus()) throw DomainError("right-hand side entry outside the field");
    rows[r].push_back(x[r]);
  }
  const auto pivots = rref(rows, n, f);

  for (std::size_t r = pivots.size(); r < rows.size(); ++r) {
    if (rows[r][n] != 0) throw InconsistentSystem("transmissions are inconsistent with the coding matrix");
  }
  for (std::size_t p = 0; p < pivots.size(); ++p) {
    if (pivots[p] != target_col) continue;
    // Unique iff the pivot row has no free-column entries.
    for (std::size_t c = 0; c < n; ++c) {
      if (c != target_col && rows[p][c] != 0) throw NotDetermined("target unknown is not uniquely determined");
    }
    return rows[p][n];
  }
  throw NotDetermined("target unknown is not uniquely determined");
}

std::vector<std::size_t> isolated_columns(const Matrix& m) {
  // Column j is isolated iff e_j lies in the row space, i.e. iff j is a
  // pivot whose reduced row has no other nonzero entry.
  auto rows = to_rows(m);
  const auto pivots = rref(rows, m.cols(), m.field());
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < pivots.size(); ++p) {
    bool alone = true;
    for (std::size_t c = 0; c < m.cols() && alone; ++c) {
      if (c != pivots[p] && rows[p][c] != 0) alone = false;
    }
    if (alone) out.push_back(pivots[p]);
  }
  return out;
}

Vector multiply(const Matrix& a, std::span<const std::uint32_t> b) {
  if (b.size() != a.cols()) throw DimensionError("vector length does not match column count");
  const Field& f = a.field();
  Vector out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint32_t acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (b[c] >= f.modulus()) throw DomainError("vector entry outside the field");
      acc = f.add(acc, f.mul(a.at(r, c), b[c]));
    }
    out[r] = acc;
  }
  return out;
}

}  // namespace pliable::gf
