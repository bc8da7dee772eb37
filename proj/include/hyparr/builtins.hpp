#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyparr/chambers.hpp"

namespace hyparr {

struct GenericitySeed {
  std::uint64_t seed = 1;
  long coefficient_bound = 9;
};

/// Retries before a randomized construction gives up.
inline constexpr int kGenericityRetries = 64;

inline RatVector unit_vector(std::size_t dim, std::size_t i) {
  RatVector e(dim, Rational(0));
  e[i] = 1;
  return e;
}

/// Coordinate hyperplanes x_1, ..., x_l.
inline Arrangement boolean(std::size_t l) {
  if (l == 0) throw Error(ErrorKind::InvalidArgument, "boolean arrangement needs l >= 1");
  std::vector<RatVector> forms;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < l; ++i) {
    forms.push_back(unit_vector(l, i));
    labels.push_back("x" + std::to_string(i + 1));
  }
  return validate(make_arrangement(l, std::move(forms), std::move(labels)));
}

/// {x = 0, y = 0, z = 0, x + y + z = 0} in R^3.
inline Arrangement generic4() {
  std::vector<RatVector> forms{unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2),
                               RatVector{Rational(1), Rational(1), Rational(1)}};
  return validate(make_arrangement(3, std::move(forms), {"x", "y", "z", "x+y+z"}));
}

namespace detail {

class CoefficientSource {
 public:
  explicit CoefficientSource(const GenericitySeed& s) : rng_(s.seed), bound_(s.coefficient_bound) {
    if (bound_ < 1) throw Error(ErrorKind::InvalidArgument, "coefficient bound must be positive");
  }

  Rational next() {
    const auto span = static_cast<std::uint64_t>(2 * bound_ + 1);
    return Rational(static_cast<long>(rng_() % span) - bound_);
  }

  RatVector vector(std::size_t dim) {
    RatVector v(dim);
    for (auto& x : v) x = next();
    return v;
  }

 private:
  std::mt19937_64 rng_;
  long bound_;
};

// Calls f(mask) for every subset of {0..n-1} of size r.
template <typename F>
bool all_subsets(std::size_t n, std::size_t r, F&& f) {
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  if (r > n) return true;
  for (;;) {
    IndexMask mask = 0;
    for (auto i : idx) mask |= bit(i);
    if (!f(mask)) return false;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Every subset of at most l forms is linearly independent.
inline bool is_generic(const Arrangement& a) {
  const std::size_t r = std::min(a.dim, a.size());
  return detail::all_subsets(a.size(), r, [&](IndexMask m) { return rank_of(a.forms(m), a.dim) == r; });
}

/// n random integer forms in R^l, redrawn until generic. Deterministic in the seed.
inline Arrangement generic(std::size_t n, std::size_t l, const GenericitySeed& seed = {}) {
  if (l < 1 || n < l) throw Error(ErrorKind::InvalidArgument, "generic arrangement needs n >= l >= 1");
  if (n > kMaxHyperplanes) throw Error(ErrorKind::TooLarge, "at most 64 hyperplanes are supported");
  detail::CoefficientSource src(seed);
  for (int attempt = 0; attempt < kGenericityRetries; ++attempt) {
    std::vector<RatVector> forms;
    for (std::size_t i = 0; i < n; ++i) forms.push_back(src.vector(l));
    Arrangement a = make_arrangement(l, std::move(forms));
    bool nonzero = true;
    for (const auto& h : a.hyperplanes) nonzero = nonzero && !is_zero(h.form);
    if (!nonzero || !is_generic(a)) continue;
    if (n > 1 && l == 1) continue;
    return validate(a);
  }
  throw Error(ErrorKind::GenericityFailed, "no generic arrangement found within the retry budget");
}

/// Six affine lines: two triple points {1,3,5} at (6,2) and {2,4,6} at (4,2),
/// parallel classes {1,2}, {3,4}, {5,6}.
inline AffineArrangement x2_affine() {
  auto line = [](long a, long b, long c, std::string label) {
    return AffineHyperplane{RatVector{Rational(a), Rational(b)}, Rational(c), std::move(label)};
  };
  AffineArrangement b;
  b.dim = 2;
  b.hyperplanes = {line(1, 2, -10, "H1"), line(1, 2, -8, "H2"), line(1, 0, -6, "H3"),
                   line(1, 0, -4, "H4"),  line(1, -2, -2, "H5"), line(1, -2, 0, "H6")};
  return b;
}

/// Checks the incidence data of the coned realization: the eight affine
/// points (two triple, six double) and the three parallel classes meeting
/// the line at infinity.
inline void verify_x2_realization(const Lattice& lat) {
  const std::size_t inf = 6;
  std::vector<std::vector<std::size_t>> triples, doubles, at_infinity;
  for (const Flat* f : lat.of_codim(2)) {
    auto idx = indices_of(f->contains);
    if (f->contains & bit(inf))
      at_infinity.push_back(idx);
    else if (idx.size() == 3)
      triples.push_back(idx);
    else if (idx.size() == 2)
      doubles.push_back(idx);
    else
      throw Error(ErrorKind::RealizationInvalid, "unexpected multiple point in X2");
  }
  const std::vector<std::vector<std::size_t>> want_triples{{0, 2, 4}, {1, 3, 5}};
  const std::vector<std::vector<std::size_t>> want_inf{{0, 1, 6}, {2, 3, 6}, {4, 5, 6}};
  if (triples != want_triples || doubles.size() != 6 || at_infinity != want_inf)
    throw Error(ErrorKind::RealizationInvalid, "X2 realization does not match its incidence data");
}

inline Arrangement x2_coned() {
  Arrangement a = cone(x2_affine());
  verify_x2_realization(build_lattice(a));
  return a;
}

/// x_i - x_j for i < j in R^m, essentialized to R^(m-1).
inline Arrangement braid(std::size_t m) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "braid arrangement needs m >= 2");
  std::vector<RatVector> forms;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      RatVector f(m, Rational(0));
      f[i] = 1;
      f[j] = -1;
      forms.push_back(std::move(f));
      labels.push_back("x" + std::to_string(i + 1) + "-x" + std::to_string(j + 1));
    }
  return essentialize(forms, m, std::move(labels));
}

/// Subspaces X, Y given by their defining form sets are in general position
/// when codim(X cap Y) = min(l, codim X + codim Y).
inline bool in_general_position(const Arrangement& a, const Flat& x, const Arrangement& b, const Flat& y) {
  auto rows = a.forms(x.contains);
  for (auto& r : b.forms(y.contains)) rows.push_back(std::move(r));
  return rank_of(rows, a.dim) == std::min(a.dim, x.codim + y.codim);
}

struct GenericUnion {
  Arrangement arrangement;     // A's hyperplanes first, then those of gB
  SignVector witness;          // locally consistent, globally inconsistent
  std::vector<RatVector> transform;  // rows of g; forms of gB are beta . g
};

/// A together with a generic linear image of B, plus a sign vector that is
/// locally consistent but globally inconsistent: a chamber C0 of A, the first
/// hyperplane of gB oriented away from C0, and a chamber of gB extending that
/// orientation.
inline GenericUnion generic_union(const Arrangement& a_in, const Arrangement& b, const GenericitySeed& seed = {}) {
  const Arrangement a = validate(a_in);
  check_central(b);
  if (b.dim != a.dim) throw Error(ErrorKind::DimensionMismatch, "arrangements live in different dimensions");
  const std::size_t l = a.dim, n = a.size(), k = b.size();
  if (n + k > kMaxHyperplanes) throw Error(ErrorKind::TooLarge, "union exceeds 64 hyperplanes");
  const Lattice lat_a = build_lattice(a);
  const auto chambers_a = enumerate_chambers(a);
  detail::CoefficientSource src(seed);

  for (int attempt = 0; attempt < kGenericityRetries; ++attempt) {
    std::vector<RatVector> g;
    for (std::size_t i = 0; i < l; ++i) g.push_back(src.vector(l));
    if (rank_of(g, l) != l) continue;

    Arrangement gb{l, {}};
    for (const auto& h : b.hyperplanes) {
      RatVector f(l, Rational(0));
      for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < l; ++i) f[j] += h.form[i] * g[i][j];
      gb.hyperplanes.push_back({std::move(f), h.label});
    }
    Arrangement u = a;
    for (const auto& h : gb.hyperplanes) u.hyperplanes.push_back(h);
    try {
      validate(u);
    } catch (const Error&) {
      continue;
    }
    const Lattice lat_b = build_lattice_unchecked(gb);
    bool transversal = true;
    for (const auto& x : lat_a.flats())
      for (const auto& y : lat_b.flats())
        if (transversal && !in_general_position(a, x, gb, y)) transversal = false;
    if (!transversal) continue;

    const Lattice lat_u = build_lattice(u);
    const RatVector& beta = gb.form(0);
    for (const auto& c0 : chambers_a) {
      const int side = sign(dot(beta, c0.witness));
      auto rows = signed_forms(a, c0.signs, full_mask(n));
      rows.push_back(side > 0 ? negated(beta) : beta);
      if (strict_feasible(StrictSystem{l, rows}).feasible()) continue;  // gH separates C0

      // Chamber of gB with the first sign pointing away from C0, greedily.
      SignVector eps = SignVector::all_positive(n + k);
      for (std::size_t i = 0; i < n; ++i) eps = eps.with(i, c0.signs[i]);
      std::vector<RatVector> brows{side > 0 ? negated(beta) : beta};
      eps = eps.with(n, -side);
      for (std::size_t j = 1; j < k; ++j) {
        brows.push_back(gb.form(j));
        if (!strict_feasible(StrictSystem{l, brows}).feasible()) {
          brows.back() = negated(gb.form(j));
          eps = eps.with(n + j, -1);
        }
      }
      if (!is_globally_consistent(u, eps) && is_locally_consistent(lat_u, eps)) return {u, eps, g};
    }
  }
  throw Error(ErrorKind::WitnessNotFound, "no transversal union with a verified witness within the retry budget");
}

}  // namespace hyparr
