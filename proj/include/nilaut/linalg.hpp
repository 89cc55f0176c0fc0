#pragma once

// Exact linear algebra over Q and Z. Elimination is fraction-free (Bareiss):
// rational input is first scaled row-by-row to integers, so intermediates
// stay integral and exact divisions replace rational normalisation.

#include <cstddef>
#include <optional>
#include <vector>

#include "nilaut/rational.hpp"

namespace nilaut {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using RatVector = std::vector<Rational>;

// When enabled, solve() and nullspace() multiply their answers back into A
// and throw std::logic_error on any residual. Tests switch this on.
void set_linalg_self_check(bool enabled);
bool linalg_self_check();

RatVector mat_vec(const RatMatrix& a, const RatVector& x);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

// A particular solution of A x = b (free variables set to 0), or nullopt if
// the system is inconsistent. Throws DimensionMismatch if b.size() != rows.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

// A basis of { x : A x = 0 }, one vector per free column, each with a 1 in
// that column and 0 in the other free columns. Empty when A has full column rank.
std::vector<RatVector> nullspace(const RatMatrix& a);

std::size_t matrix_rank(const RatMatrix& a);

// Row indices of a maximal linearly independent set of rows, chosen greedily
// in order.
std::vector<std::size_t> independent_rows(const RatMatrix& a);

// Bareiss determinant. Throws std::invalid_argument for non-square input.
Integer int_determinant(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);

}  // namespace nilaut
