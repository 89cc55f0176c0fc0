#include "nilaut/linalg.hpp"

#include <atomic>
#include <stdexcept>
#include <utility>

#include "nilaut/errors.hpp"

namespace nilaut {

namespace {

std::atomic<bool> g_self_check{false};

// Row echelon form over Z. rows[k] has its leading entry in pivots[k];
// rows beyond pivots.size() are zero and dropped.
struct Echelon {
  IntMatrix m;
  std::vector<std::size_t> pivots;
};

// Scales each row by the lcm of its denominators.
IntMatrix integral_rows(const RatMatrix& a, std::size_t extra_cols = 0,
                        const RatVector* extra = nullptr) {
  const std::size_t cols = a.cols() + extra_cols;
  IntMatrix m(a.rows(), cols);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < a.cols(); ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
    if (extra) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*extra)[r].get_den_mpz_t());
    for (std::size_t c = 0; c < a.cols(); ++c)
      m(r, c) = a(r, c).get_num() * (l / a(r, c).get_den());
    if (extra) m(r, a.cols()) = (*extra)[r].get_num() * (l / (*extra)[r].get_den());
  }
  return m;
}

Echelon bareiss_echelon(IntMatrix m, std::size_t* swaps = nullptr) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer prev = 1;
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  Integer t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      if (swaps) ++*swaps;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        // m(i,j) = (m(r,c) m(i,j) - m(i,c) m(r,j)) / prev, exact.
        mpz_mul(t.get_mpz_t(), m(r, c).get_mpz_t(), m(i, j).get_mpz_t());
        mpz_submul(t.get_mpz_t(), m(i, c).get_mpz_t(), m(r, j).get_mpz_t());
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

// Back substitution on an echelon form with the given values of the free
// variables (indexed by column); fills the pivot variables.
void back_substitute(const Echelon& e, RatVector& x, std::size_t ncols) {
  for (std::size_t k = e.pivots.size(); k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    Rational s = 0;
    for (std::size_t j = pc + 1; j < ncols; ++j)
      if (e.m(k, j) != 0 && x[j] != 0) s += Rational(e.m(k, j)) * x[j];
    x[pc] = -s / Rational(e.m(k, pc));
  }
}

void check_solution(const RatMatrix& a, const RatVector& x, const RatVector& b) {
  if (mat_vec(a, x) != b) throw std::logic_error("linalg self-check: residual is nonzero");
}

}  // namespace

void set_linalg_self_check(bool enabled) { g_self_check.store(enabled); }
bool linalg_self_check() { return g_self_check.load(); }

RatVector mat_vec(const RatMatrix& a, const RatVector& x) {
  if (x.size() != a.cols()) throw DimensionMismatch("mat_vec: vector length differs from cols");
  RatVector y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) y[r] += a(r, c) * x[c];
  return y;
}

template <typename T>
static Matrix<T> mul_impl(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0)
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) { return mul_impl(a, b); }
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) { return mul_impl(a, b); }

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: right-hand side length differs from rows");
  const std::size_t n = a.cols();
  Echelon e = bareiss_echelon(integral_rows(a, 1, &b));
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  // Treat the augmented column as the value -1 of an extra variable.
  RatVector x(n + 1);
  x[n] = -1;
  back_substitute(e, x, n + 1);
  x.pop_back();
  if (linalg_self_check()) check_solution(a, x, b);
  return x;
}

std::vector<RatVector> nullspace(const RatMatrix& a) {
  const std::size_t n = a.cols();
  Echelon e = bareiss_echelon(integral_rows(a));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t pc : e.pivots) is_pivot[pc] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(n);
    x[f] = 1;
    back_substitute(e, x, n);
    if (linalg_self_check()) check_solution(a, x, RatVector(a.rows()));
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t matrix_rank(const RatMatrix& a) { return bareiss_echelon(integral_rows(a)).pivots.size(); }

std::vector<std::size_t> independent_rows(const RatMatrix& a) {
  // Rows of A are the columns of A^T; pivot columns of A^T's echelon form
  // pick the first maximal independent set of rows.
  RatMatrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return bareiss_echelon(integral_rows(t)).pivots;
}

Integer int_determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("int_determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  std::size_t swaps = 0;
  Echelon e = bareiss_echelon(a, &swaps);
  if (e.pivots.size() < n) return 0;
  Integer det = e.m(n - 1, n - 1);
  return swaps % 2 == 0 ? det : Integer(-det);
}

bool is_unimodular(const IntMatrix& a) {
  const Integer det = int_determinant(a);
  return det == 1 || det == -1;
}

}  // namespace nilaut
