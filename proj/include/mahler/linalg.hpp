#ifndef MAHLER_LINALG_HPP
#define MAHLER_LINALG_HPP

// Exact dense linear algebra: nullspace bases over Rational.
//
// Forward elimination is fraction-free (Bareiss): after each pivot step the
// working entries are minors of the row-permuted input, so the division by
// the previous pivot is exact integer division. Back-substitution on the
// resulting echelon form yields the reduced-echelon parametric basis, one
// vector per free column with a 1 in that column and 0 in the other free
// columns. That basis is unique given the matrix, which makes the solver
// deterministic by construction.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mahler/rational.hpp"

namespace mahler {

using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {

struct Echelon {
  std::vector<std::vector<BigInt>> a;  // echelon form, rows r x cols c
  std::vector<std::size_t> pivot_col;  // pivot column of each pivot row
};

inline Echelon bareiss_echelon(const RationalMatrix& m, std::size_t cols) {
  Echelon e;
  e.a.reserve(m.size());
  for (const auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("kernel_basis: ragged matrix");
    BigInt den(1);
    for (const Rational& x : row) {
      BigInt d = x.get_den();
      den = den / gcd(den, d) * d;
    }
    std::vector<BigInt> r;
    r.reserve(cols);
    for (const Rational& x : row) r.push_back(BigInt(x.get_num() * (den / x.get_den())));
    e.a.push_back(std::move(r));
  }

  const std::size_t rows = e.a.size();
  BigInt prev(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pr = row;
    while (pr < rows && e.a[pr][col] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(e.a[pr], e.a[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        BigInt t = e.a[row][col] * e.a[i][j] - e.a[i][col] * e.a[row][j];
        mpz_divexact(e.a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      e.a[i][col] = 0;
    }
    prev = e.a[row][col];
    e.pivot_col.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace detail

// Basis of { v : M v = 0 }, in the canonical reduced-echelon parametrization,
// ordered by free column index. Calling twice on equal input gives equal output.
inline std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m,
                                                       std::size_t cols) {
  detail::Echelon e = detail::bareiss_echelon(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t pi = e.pivot_col.size(); pi-- > 0;) {
      std::size_t pc = e.pivot_col[pi];
      Rational s(0);
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (v[j] == 0 || e.a[pi][j] == 0) continue;
        s += Rational(e.a[pi][j]) * v[j];
      }
      v[pc] = -s / Rational(e.a[pi][pc]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t rank(const RationalMatrix& m, std::size_t cols) {
  return detail::bareiss_echelon(m, cols).pivot_col.size();
}

}  // namespace mahler

#endif
