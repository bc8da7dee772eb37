#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// elimination, feasibility or lattice code; they share only the scalar type.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "hyparr/hyparr.hpp"

namespace oracle {

using hyparr::Rational;
using hyparr::RatVector;
using Rows = std::vector<RatVector>;

/// Textbook Gauss-Jordan over the rationals; returns the reduced rows and
/// the pivot columns.
inline std::pair<Rows, std::vector<std::size_t>> rref(Rows m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational piv = m[r][c];
    for (auto& x : m[r]) x /= piv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < ncols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return {m, pivots};
}

inline std::size_t rank(const Rows& m, std::size_t ncols) { return rref(m, ncols).second.size(); }

/// Null space of the matrix whose rows are `m`, via reduced echelon form.
inline Rows null_space(const Rows& m, std::size_t ncols) {
  auto [r, piv] = rref(m, ncols);
  Rows out;
  std::vector<bool> is_piv(ncols, false);
  for (auto c : piv) is_piv[c] = true;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    RatVector v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][f];
    out.push_back(v);
  }
  return out;
}

/// Gordan by circuits: the strict system is infeasible iff some minimal
/// dependent subset of rows has a dependence with all coefficients positive.
inline bool feasible(const Rows& rows, std::size_t dim) {
  const std::size_t m = rows.size();
  const std::size_t max_size = std::min(m, dim + 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size > max_size) continue;
    Rows cols;  // transpose of the chosen rows: dim x size
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) idx.push_back(i);
    for (std::size_t j = 0; j < dim; ++j) {
      RatVector c;
      for (auto i : idx) c.push_back(rows[i][j]);
      cols.push_back(c);
    }
    const Rows ker = null_space(cols, size);
    if (ker.size() != 1) continue;
    int s = 0;
    bool same = true;
    for (const auto& y : ker[0]) {
      const int t = sgn(y);
      if (t == 0 || (s != 0 && t != s)) {
        same = false;
        break;
      }
      s = t;
    }
    if (same) return false;
  }
  return true;
}

/// Searches integer points with |x|_1 = radius for a strict witness.
inline std::optional<RatVector> grid_witness(const Rows& rows, std::size_t dim, long radius) {
  RatVector x(dim);
  std::optional<RatVector> found;
  auto rec = [&](auto&& self, std::size_t pos, long remaining) -> void {
    if (found) return;
    if (pos + 1 == dim) {
      for (long v : {remaining, -remaining}) {
        x[pos] = v;
        bool ok = true;
        for (const auto& r : rows) ok = ok && hyparr::dot(r, x) > 0;
        if (ok) {
          found = x;
          return;
        }
        if (remaining == 0) break;
      }
      return;
    }
    for (long v = -remaining; v <= remaining; ++v) {
      x[pos] = v;
      self(self, pos + 1, remaining - std::labs(v));
    }
  };
  if (dim == 0) return rows.empty() ? std::optional<RatVector>(RatVector{}) : std::nullopt;
  rec(rec, 0, radius);
  return found;
}

/// Every closure of every subset of hyperplanes, keyed by contains-mask,
/// with its codimension.
inline std::map<std::uint64_t, std::size_t> brute_flats(const hyparr::Arrangement& a) {
  std::map<std::uint64_t, std::size_t> out;
  const std::size_t n = a.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    Rows rows;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1) rows.push_back(a.form(i));
    const std::size_t r = rank(rows, a.dim);
    std::uint64_t closure = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rows with = rows;
      with.push_back(a.form(i));
      if (rank(with, a.dim) == r) closure |= std::uint64_t{1} << i;
    }
    out[closure] = r;
  }
  return out;
}

inline std::vector<std::size_t> codim_profile(const std::map<std::uint64_t, std::size_t>& flats, std::size_t dim) {
  std::vector<std::size_t> out(dim + 1, 0);
  for (const auto& [m, c] : flats) ++out[c];
  return out;
}

inline Rows signed_rows(const hyparr::Arrangement& a, std::uint64_t neg, std::uint64_t mask) {
  Rows rows;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mask >> i & 1) rows.push_back((neg >> i & 1) ? hyparr::negated(a.form(i)) : a.form(i));
  return rows;
}

/// Bit i of the result = sign of hyperplane i is '-'. Converts to the
/// library's lexicographic string directly.
inline std::string sign_string(std::uint64_t neg, std::size_t n) {
  std::string s(n, '+');
  for (std::size_t i = 0; i < n; ++i)
    if (neg >> i & 1) s[i] = '-';
  return s;
}

/// Sigma_k by brute force over all 2^n sign vectors and all flats.
inline std::set<std::string> brute_sigma(const hyparr::Arrangement& a, std::size_t k) {
  const auto flats = brute_flats(a);
  std::set<std::string> out;
  for (std::uint64_t neg = 0; neg < (std::uint64_t{1} << a.size()); ++neg) {
    bool ok = true;
    for (const auto& [mask, codim] : flats) {
      if (codim == 0 || codim > k) continue;
      if (!feasible(signed_rows(a, neg, mask), a.dim)) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(sign_string(neg, a.size()));
  }
  return out;
}

inline std::set<std::string> brute_chambers(const hyparr::Arrangement& a) {
  std::set<std::string> out;
  const std::uint64_t all = (std::uint64_t{1} << a.size()) - 1;
  for (std::uint64_t neg = 0; neg <= all; ++neg)
    if (feasible(signed_rows(a, neg, all), a.dim)) out.insert(sign_string(neg, a.size()));
  return out;
}

/// Flow on the chamber graph: adjacent = sign strings differing in one place.
/// Crosses the lowest index where the chamber disagrees with eps and the
/// flipped string is a chamber.
inline std::vector<std::string> brute_flow(const std::set<std::string>& chambers, const std::string& eps,
                                           std::string start) {
  std::vector<std::string> path{start};
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (start[i] == eps[i]) continue;
      std::string next = start;
      next[i] = eps[i];
      if (chambers.count(next)) {
        start = next;
        path.push_back(start);
        moved = true;
        break;
      }
    }
    if (!moved) return path;
  }
}

inline std::set<std::string> brute_sinks(const std::set<std::string>& chambers, const std::string& eps) {
  std::set<std::string> out;
  for (const auto& c : chambers) {
    bool sink = true;
    for (std::size_t i = 0; i < eps.size() && sink; ++i) {
      if (c[i] == eps[i]) continue;
      std::string next = c;
      next[i] = eps[i];
      if (chambers.count(next)) sink = false;
    }
    if (sink) out.insert(c);
  }
  return out;
}

/// Random essential, repeat-free arrangement with small integer coefficients.
inline hyparr::Arrangement random_arrangement(std::mt19937_64& rng, std::size_t max_dim, std::size_t max_n,
                                              long coef = 2) {
  for (;;) {
    const std::size_t l = 2 + rng() % (max_dim - 1);
    const std::size_t n = l + rng() % (max_n - l + 1);
    std::vector<RatVector> forms;
    for (std::size_t i = 0; i < n; ++i) {
      RatVector f(l);
      for (auto& x : f) x = static_cast<long>(rng() % (2 * coef + 1)) - coef;
      forms.push_back(f);
    }
    auto a = hyparr::make_arrangement(l, forms);
    try {
      return hyparr::validate(a);
    } catch (const hyparr::Error&) {
    }
  }
}

}  // namespace oracle
