#pragma once

#include <optional>
#include <vector>

#include "hyparr/consistency.hpp"

namespace hyparr {

struct Chamber {
  SignVector signs;
  RatVector witness;
  IndexMask walls = 0;
};

struct FlowPath {
  std::vector<Chamber> chambers;
  std::vector<std::size_t> crossed;  // 0-based hyperplane indices

  std::size_t length() const { return crossed.size(); }
};

/// i is a wall of the chamber iff the chamber's other half-spaces meet inside
/// H_i. H_i is parametrized by a kernel basis of alpha_i, which turns this
/// into a strict system in dim - 1 variables.
inline bool is_wall(const Arrangement& a, const SignVector& signs, std::size_t i, const RatMatrix& hyperplane_basis) {
  std::vector<RatVector> rows;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == i) continue;
    RatVector r(hyperplane_basis.nrows());
    for (std::size_t b = 0; b < hyperplane_basis.nrows(); ++b) r[b] = dot(a.form(j), hyperplane_basis.rows[b]);
    if (signs[j] < 0) r = negated(r);
    rows.push_back(std::move(r));
  }
  return strict_feasible(StrictSystem{hyperplane_basis.nrows(), std::move(rows)}).feasible();
}

inline RatMatrix hyperplane_basis(const Arrangement& a, std::size_t i) {
  return kernel_basis(RatMatrix({a.form(i)}, a.dim));
}

inline IndexMask walls(const Arrangement& a, const SignVector& signs) {
  check_signs(a, signs);
  IndexMask out = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (is_wall(a, signs, i, hyperplane_basis(a, i))) out |= bit(i);
  return out;
}

/// Chamber with the given signs, or nullopt if the half-spaces do not meet.
inline std::optional<Chamber> chamber_of(const Arrangement& a, const SignVector& signs) {
  auto r = is_globally_consistent(a, signs);
  if (!r) return std::nullopt;
  return Chamber{signs, r.certificate.witness(), walls(a, signs)};
}

inline Chamber require_chamber(const Arrangement& a, const SignVector& signs) {
  auto c = chamber_of(a, signs);
  if (!c) throw Error(ErrorKind::InvalidArgument, "'" + signs.str() + "' is not a chamber");
  return *c;
}

/// All chambers in lexicographic order of their sign strings. A prefix is
/// extended only while its half-spaces still meet; the parent's witness
/// settles one of the two children without a new feasibility call.
inline std::vector<Chamber> enumerate_chambers(const Arrangement& arr, const EnumerationOptions& opts = {}) {
  const Arrangement a = validate(arr);
  check_enumerable(a.size(), opts);
  const std::size_t n = a.size();
  std::vector<RatMatrix> bases;
  for (std::size_t i = 0; i < n; ++i) bases.push_back(hyperplane_basis(a, i));

  std::vector<Chamber> out;
  std::vector<RatVector> rows;
  auto dfs = [&](auto&& self, std::size_t pos, const SignVector& signs, const RatVector& w) -> void {
    if (pos == n) {
      Chamber c{signs, w, 0};
      for (std::size_t i = 0; i < n; ++i)
        if (is_wall(a, signs, i, bases[i])) c.walls |= bit(i);
      out.push_back(std::move(c));
      return;
    }
    const int here = sign(dot(a.form(pos), w));
    for (int s : {+1, -1}) {
      RatVector row = s < 0 ? negated(a.form(pos)) : a.form(pos);
      rows.push_back(row);
      const SignVector next = signs.with(pos, s);
      if (here == s) {
        self(self, pos + 1, next, w);
      } else {
        auto r = strict_feasible(StrictSystem{a.dim, rows});
        if (r.feasible()) self(self, pos + 1, next, r.witness());
      }
      rows.pop_back();
    }
  };
  RatVector origin_substitute(a.dim, Rational(0));
  origin_substitute[0] = 1;
  // The seed witness only serves the empty prefix; its sign on H_1 may be 0.
  dfs(dfs, 0, SignVector::all_positive(n), origin_substitute);
  return out;
}

/// Lexicographically smallest chamber, found greedily: every consistent
/// prefix extends to a chamber.
inline Chamber first_chamber(const Arrangement& a) {
  std::vector<RatVector> rows;
  SignVector signs = SignVector::all_positive(a.size());
  RatVector w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    rows.push_back(a.form(i));
    auto r = strict_feasible(StrictSystem{a.dim, rows});
    if (!r.feasible()) {
      rows.back() = negated(a.form(i));
      signs = signs.with(i, -1);
      r = strict_feasible(StrictSystem{a.dim, rows});
    }
    w = r.witness();
  }
  return Chamber{signs, w, walls(a, signs)};
}

inline bool is_sink(const Arrangement& a, const SignVector& eps, const Chamber& c) {
  check_signs(a, eps);
  for (auto i : indices_of(c.walls))
    if (c.signs[i] != eps[i]) return false;
  return true;
}

/// Walks from `start`, each step crossing the lowest-index wall whose far
/// side is the chosen half-space, until a sink is reached.
inline FlowPath flow_to_sink(const Arrangement& a, const SignVector& eps, const Chamber& start) {
  check_signs(a, eps);
  FlowPath path;
  path.chambers.push_back(start);
  for (;;) {
    const Chamber& c = path.chambers.back();
    std::optional<std::size_t> step;
    for (auto i : indices_of(c.walls))
      if (c.signs[i] != eps[i]) {
        step = i;
        break;
      }
    if (!step) return path;
    if (path.length() == a.size())
      throw Error(ErrorKind::InternalError, "flow exceeded n steps");
    Chamber next = require_chamber(a, c.signs.flipped(*step));
    path.crossed.push_back(*step);
    path.chambers.push_back(std::move(next));
  }
}

inline std::vector<Chamber> all_sinks(const Arrangement& a, const SignVector& eps,
                                      const EnumerationOptions& opts = {}) {
  check_signs(a, eps);
  std::vector<Chamber> out;
  for (auto& c : enumerate_chambers(a, opts))
    if (is_sink(a, eps, c)) out.push_back(std::move(c));
  return out;
}

}  // namespace hyparr
