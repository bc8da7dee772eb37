#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "hyparr/linalg.hpp"

namespace hyparr {

/// Homogeneous strict system {x : row_i . x > 0 for all i}.
struct StrictSystem {
  std::size_t dim = 0;
  std::vector<RatVector> rows;
};

struct PrimalWitness {
  RatVector point;
};

/// Nonnegative, nonzero multipliers with sum_i y_i row_i = 0.
struct DualCertificate {
  RatVector multipliers;
};

class FeasibilityResult {
 public:
  FeasibilityResult(PrimalWitness w) : value_(std::move(w)) {}
  FeasibilityResult(DualCertificate d) : value_(std::move(d)) {}

  bool feasible() const { return std::holds_alternative<PrimalWitness>(value_); }
  const RatVector& witness() const { return std::get<PrimalWitness>(value_).point; }
  const RatVector& dual() const { return std::get<DualCertificate>(value_).multipliers; }

 private:
  std::variant<PrimalWitness, DualCertificate> value_;
};

inline bool verify_witness(const StrictSystem& sys, const RatVector& x) {
  if (x.size() != sys.dim) return false;
  for (const auto& r : sys.rows)
    if (sign(dot(r, x)) <= 0) return false;
  return true;
}

inline bool verify_dual(const StrictSystem& sys, const RatVector& y) {
  if (y.size() != sys.rows.size()) return false;
  bool nonzero = false;
  for (const auto& v : y) {
    if (v < 0) return false;
    if (v != 0) nonzero = true;
  }
  if (!nonzero) return false;
  for (std::size_t j = 0; j < sys.dim; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * sys.rows[i][j];
    if (s != 0) return false;
  }
  return true;
}

inline bool verify_certificate(const StrictSystem& sys, const FeasibilityResult& r) {
  return r.feasible() ? verify_witness(sys, r.witness()) : verify_dual(sys, r.dual());
}

namespace detail {

// A derived inequality c . x > 0 together with the nonnegative integer
// combination of the (integer-scaled) input rows that produced it.
struct DerivedRow {
  std::vector<Integer> coef;
  std::vector<std::pair<std::uint32_t, Integer>> mult;  // sorted by input index, all > 0
};

inline bool all_zero(const std::vector<Integer>& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline void reduce_by_gcd(DerivedRow& r) {
  Integer g = 0;
  for (const auto& c : r.coef) g = gcd(g, c);
  for (const auto& [i, m] : r.mult) g = gcd(g, m);
  if (g <= 1) return;
  for (auto& c : r.coef) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  for (auto& [i, m] : r.mult) mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), g.get_mpz_t());
}

inline std::string direction_key(const std::vector<Integer>& coef) {
  Integer g = 0;
  for (const auto& c : coef) g = gcd(g, c);
  std::string key;
  for (const auto& c : coef) {
    key += Integer(c / g).get_str();
    key += ',';
  }
  return key;
}

inline bool support_within(const DerivedRow& a, const DerivedRow& b) {
  std::size_t j = 0;
  for (const auto& [i, mu] : a.mult) {
    while (j < b.mult.size() && b.mult[j].first < i) ++j;
    if (j == b.mult.size() || b.mult[j].first != i) return false;
  }
  return true;
}

// Rows of equal direction are merged only when one support contains the
// other; Chernikov pruning relies on the smaller supports surviving.
inline std::vector<DerivedRow> dedupe(std::vector<DerivedRow> rows) {
  std::vector<DerivedRow> out;
  std::unordered_map<std::string, std::vector<std::size_t>> seen;
  std::vector<bool> dead;
  for (auto& r : rows) {
    auto& same = seen[direction_key(r.coef)];
    bool covered = false;
    for (auto k : same)
      if (!dead[k] && support_within(out[k], r)) covered = true;
    if (covered) continue;
    for (auto k : same)
      if (!dead[k] && support_within(r, out[k])) dead[k] = true;
    same.push_back(out.size());
    out.push_back(std::move(r));
    dead.push_back(false);
  }
  std::vector<DerivedRow> kept;
  for (std::size_t k = 0; k < out.size(); ++k)
    if (!dead[k]) kept.push_back(std::move(out[k]));
  return kept;
}

inline DerivedRow combine(const DerivedRow& p, const DerivedRow& q, std::size_t var) {
  const Integer a = -q.coef[var];  // > 0
  const Integer& b = p.coef[var];  // > 0
  DerivedRow r;
  r.coef.resize(p.coef.size());
  for (std::size_t k = 0; k < p.coef.size(); ++k) r.coef[k] = a * p.coef[k] + b * q.coef[k];
  r.coef[var] = 0;
  std::size_t i = 0, j = 0;
  while (i < p.mult.size() || j < q.mult.size()) {
    if (j == q.mult.size() || (i < p.mult.size() && p.mult[i].first < q.mult[j].first)) {
      r.mult.emplace_back(p.mult[i].first, a * p.mult[i].second);
      ++i;
    } else if (i == p.mult.size() || q.mult[j].first < p.mult[i].first) {
      r.mult.emplace_back(q.mult[j].first, b * q.mult[j].second);
      ++j;
    } else {
      r.mult.emplace_back(p.mult[i].first, a * p.mult[i].second + b * q.mult[j].second);
      ++i;
      ++j;
    }
  }
  reduce_by_gcd(r);
  return r;
}

}  // namespace detail

/// Decides {row_i . x > 0} exactly by Fourier-Motzkin elimination, last
/// coordinate first. Returns a witness point or a Gordan dual certificate.
///
/// Derived rows are pruned by direction (duplicates) and by Chernikov's rule:
/// after t eliminations a row built from more than t + 1 inputs is redundant.
inline FeasibilityResult strict_feasible(const StrictSystem& sys) {
  const std::size_t d = sys.dim;
  const std::size_t m = sys.rows.size();
  for (const auto& r : sys.rows)
    if (r.size() != d) throw Error(ErrorKind::DimensionMismatch, "system row has wrong dimension");

  // Input row i is scaled by scale[i] > 0 to a primitive integer row.
  std::vector<Rational> scale(m);
  std::vector<detail::DerivedRow> rows;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    detail::DerivedRow r;
    r.coef = primitive_integer(sys.rows[i]);
    r.mult.emplace_back(static_cast<std::uint32_t>(i), Integer(1));
    scale[i] = 1;
    for (std::size_t k = 0; k < d; ++k)
      if (sys.rows[i][k] != 0) {
        scale[i] = Rational(r.coef[k]) / sys.rows[i][k];
        break;
      }
    rows.push_back(std::move(r));
  }

  auto dual_from = [&](const detail::DerivedRow& r) {
    RatVector y(m, Rational(0));
    for (const auto& [i, mu] : r.mult) y[i] = Rational(mu) * scale[i];
    auto ints = primitive_integer(y);
    for (std::size_t i = 0; i < m; ++i) y[i] = Rational(ints[i]);
    return FeasibilityResult(DualCertificate{std::move(y)});
  };

  for (const auto& r : rows)
    if (detail::all_zero(r.coef)) return dual_from(r);
  rows = detail::dedupe(std::move(rows));

  // levels[j] holds the rows that still involved variable j when it was eliminated.
  std::vector<std::vector<std::vector<Integer>>> levels(d);
  std::size_t eliminated = 0;
  for (std::size_t j = d; j-- > 0 && !rows.empty();) {
    std::vector<const detail::DerivedRow*> pos, neg;
    std::vector<detail::DerivedRow> next;
    for (const auto& r : rows) {
      const int s = sgn(r.coef[j]);
      if (s > 0)
        pos.push_back(&r);
      else if (s < 0)
        neg.push_back(&r);
      else
        next.push_back(r);
    }
    for (const auto* r : pos) levels[j].push_back(r->coef);
    for (const auto* r : neg) levels[j].push_back(r->coef);
    ++eliminated;
    for (const auto* p : pos)
      for (const auto* q : neg) {
        auto r = detail::combine(*p, *q, j);
        if (detail::all_zero(r.coef)) return dual_from(r);
        if (r.mult.size() > eliminated + 1) continue;
        next.push_back(std::move(r));
      }
    rows = detail::dedupe(std::move(next));
  }
  // Every variable eliminated: surviving rows would read 0 > 0 and were caught above.

  RatVector x(d, Rational(0));
  for (std::size_t j = 0; j < d; ++j) {
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
    for (const auto& c : levels[j]) {
      Rational s = 0;
      for (std::size_t k = 0; k < j; ++k)
        if (c[k] != 0 && x[k] != 0) s += Rational(c[k]) * x[k];
      const Rational bound = -s / Rational(c[j]);
      if (c[j] > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      }
    }
    if (has_lo && has_hi)
      x[j] = (lo + hi) / 2;
    else if (has_lo)
      x[j] = Rational(floor_of(lo) + 1);
    else if (has_hi)
      x[j] = Rational(ceil_of(hi) - 1);
  }
  if (m == 0 && d > 0) x[0] = 1;
  if (!verify_witness(sys, x))
    throw Error(ErrorKind::InternalError, "elimination produced an invalid witness");
  return FeasibilityResult(PrimalWitness{std::move(x)});
}

/// A witness scaled onto the boundary of the unit cross-polytope
/// (l1 norm 1), so witnesses of different systems are comparable.
inline RatVector interior_witness(const StrictSystem& sys) {
  auto r = strict_feasible(sys);
  if (!r.feasible()) throw Error(ErrorKind::Infeasible, "system has a dual certificate of infeasibility");
  RatVector w = r.witness();
  const Rational n = l1_norm(w);
  if (n != 0)
    for (auto& x : w) x /= n;
  return w;
}

}  // namespace hyparr
