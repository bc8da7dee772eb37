#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hyparr/rational.hpp"

namespace hyparr {

struct RatMatrix {
  std::vector<RatVector> rows;
  std::size_t ncols = 0;

  RatMatrix() = default;
  RatMatrix(std::vector<RatVector> r, std::size_t cols) : rows(std::move(r)), ncols(cols) {
    for (const auto& row : rows)
      if (row.size() != ncols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix row");
  }

  std::size_t nrows() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
};

inline RatMatrix transpose(const RatMatrix& m) {
  std::vector<RatVector> out(m.ncols, RatVector(m.nrows()));
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (std::size_t j = 0; j < m.ncols; ++j) out[j][i] = m.rows[i][j];
  return RatMatrix(std::move(out), m.nrows());
}

inline RatVector apply(const RatMatrix& m, const RatVector& x) {
  RatVector out(m.nrows());
  for (std::size_t i = 0; i < m.nrows(); ++i) out[i] = dot(m.rows[i], x);
  return out;
}

/// Integer row echelon form produced by fraction-free (Bareiss) elimination.
/// Each input row is first scaled to a primitive integer row; every division
/// inside the sweep is exact.
struct Echelon {
  std::vector<std::vector<Integer>> rows;  // first `pivots.size()` rows are nonzero
  std::vector<std::size_t> pivots;         // pivot column of each nonzero row

  std::size_t rank() const { return pivots.size(); }
};

inline Echelon bareiss_echelon(const RatMatrix& m) {
  Echelon e;
  e.rows.reserve(m.nrows());
  for (const auto& row : m.rows) e.rows.push_back(primitive_integer(row));
  auto& a = e.rows;
  const std::size_t nr = a.size();
  Integer prev = 1;
  Integer t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.ncols && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && a[p][c] == 0) ++p;
    if (p == nr) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < m.ncols; ++j) {
        t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

inline std::size_t rank(const RatMatrix& m) { return bareiss_echelon(m).rank(); }

inline std::size_t rank_of(const std::vector<RatVector>& rows, std::size_t ncols) {
  return rank(RatMatrix(rows, ncols));
}

/// Scales `v` to integer entries with gcd 1 and a positive first nonzero entry.
inline RatVector normalize_direction(const RatVector& v) {
  auto ints = primitive_integer(v);
  int s = 0;
  for (const auto& x : ints)
    if (x != 0) {
      s = sgn(x);
      break;
    }
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s < 0 ? Rational(-ints[i]) : Rational(ints[i]);
  return out;
}

/// Rational basis of {x : Mx = 0}, one row per free column in increasing
/// column order, each row normalized by normalize_direction.
inline RatMatrix kernel_basis(const RatMatrix& m) {
  const Echelon e = bareiss_echelon(m);
  const std::size_t n = m.ncols;
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;

  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(n, Rational(0));
    x[f] = 1;
    for (std::size_t r = e.rank(); r-- > 0;) {
      const auto& row = e.rows[r];
      const std::size_t pc = e.pivots[r];
      Rational s = 0;
      for (std::size_t j = pc + 1; j < n; ++j)
        if (row[j] != 0 && x[j] != 0) s += Rational(row[j]) * x[j];
      x[pc] = -s / Rational(row[pc]);
    }
    basis.push_back(normalize_direction(x));
  }
  return RatMatrix(std::move(basis), n);
}

}  // namespace hyparr
