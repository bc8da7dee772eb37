#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "hyparr/chambers.hpp"

namespace hyparr {

struct ObstructionOptions {
  EnumerationOptions enumeration;
  std::size_t samples = 0;  // > 0 enables witness search when n exceeds the limit
  std::uint64_t seed = 1;
};

/// A flat strictly containing the gap flat, with the witness showing the
/// witness sign vector is consistent there.
struct UpperWitness {
  IndexMask flat = 0;
  RatVector point;
};

struct ObstructionGap {
  std::size_t k = 0;
  SignVector witness;
  IndexMask flat = 0;  // codim k + 1
  RatVector dual;      // over the localization at `flat`, in index order
  std::vector<UpperWitness> upper;

  /// Nonvanishing of pi_k is only asserted for k >= 2.
  bool homotopy_claim() const { return k >= 2; }
};

struct ObstructionReport {
  std::vector<ObstructionGap> gaps;
  std::optional<std::size_t> minimal_k;
  bool kpi1_possible = true;
  bool exhaustive = true;  // false when gaps come from witness search
  std::vector<std::uint64_t> counts;  // filled by exhaustive runs only
};

namespace detail {

inline ObstructionGap complete_gap(const Lattice& lat, const SigmaGap& g) {
  ObstructionGap out{g.k, g.witness, g.flat, g.dual, {}};
  for (const Flat& y : lat.flats()) {
    if (y.codim == 0 || y.contains == g.flat || (y.contains & g.flat) != y.contains) continue;
    auto r = strict_feasible(subsystem(lat.arrangement(), g.witness, y.contains));
    if (!r.feasible())
      throw Error(ErrorKind::InternalError, "gap witness fails above its minimal flat");
    out.upper.push_back({y.contains, r.witness()});
  }
  return out;
}

inline void finish(ObstructionReport& r) {
  std::sort(r.gaps.begin(), r.gaps.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  for (const auto& g : r.gaps)
    if (g.homotopy_claim()) {
      if (!r.minimal_k) r.minimal_k = g.k;
      r.kpi1_possible = false;
    }
}

}  // namespace detail

/// Random sign vectors and perturbed chambers, each classified by the lowest
/// codimension at which it fails. Keeps the smallest witness per gap level.
inline ObstructionReport search_obstruction(const Lattice& lat, std::size_t samples, std::uint64_t seed) {
  const Arrangement& a = lat.arrangement();
  const std::size_t n = a.size();
  std::mt19937_64 rng(seed);
  std::map<std::size_t, SignVector> best;
  for (std::size_t s = 0; s < samples; ++s) {
    SignVector eps;
    if (s % 2 == 0) {
      eps = SignVector(n, rng() & full_mask(n));
    } else {
      RatVector x(a.dim);
      for (;;) {
        for (auto& c : x) c = static_cast<long>(rng() % 201) - 100;
        bool generic = true;
        for (std::size_t i = 0; i < n && generic; ++i) generic = dot(a.form(i), x) != 0;
        if (generic) break;
      }
      eps = sign_vector_of_point(a, x);
      const std::size_t flips = 1 + rng() % std::min<std::size_t>(n, 3);
      for (std::size_t f = 0; f < flips; ++f) eps = eps.flipped(rng() % n);
    }
    auto idx = first_inconsistent_flat(lat, eps, lat.dim());
    if (!idx) continue;
    const std::size_t k = lat.flats()[*idx].codim - 1;
    auto it = best.find(k);
    if (it == best.end() || eps < it->second) best[k] = eps;
  }
  ObstructionReport r;
  r.exhaustive = false;
  for (const auto& [k, eps] : best) r.gaps.push_back(detail::complete_gap(lat, make_gap(lat, k, eps)));
  detail::finish(r);
  return r;
}

/// Every k with Sigma_k strictly containing Sigma_{k+1}, each with its
/// lexicographically smallest witness, the inconsistent flat of codimension
/// k + 1 with its dual certificate, and primal witnesses at every larger flat.
inline ObstructionReport detect_obstruction(const Lattice& lat, const ObstructionOptions& opts = {}) {
  if (lat.n() > opts.enumeration.limit && opts.samples > 0)
    return search_obstruction(lat, opts.samples, opts.seed);
  const auto filtration = sigma_filtration(lat, opts.enumeration);
  ObstructionReport r;
  r.counts = filtration.counts;
  for (const auto& g : filtration.gaps) r.gaps.push_back(detail::complete_gap(lat, g));
  detail::finish(r);
  return r;
}

/// Rank-one monodromy data certifying a nontrivial sphere: a sink of the
/// flow, the separating set T of hyperplanes whose chosen side misses the
/// sink, and weights a_i with sum a_i integral and rotation
/// r = sum_{i in T} a_i mod 1 nonzero. The twisted intersection number is
/// 1 - exp(2 pi i r), nonzero exactly because r is not an integer.
struct MonodromyCertificate {
  SignVector eps;
  Chamber sink;
  FlowPath flow;
  IndexMask separating = 0;
  std::vector<Rational> weights;
  Rational weight_sum;
  Rational rotation;  // in (0, 1)
};

inline Rational fractional_part(const Rational& q) { return q - Rational(floor_of(q)); }

inline bool verify_monodromy(const Arrangement& a, const MonodromyCertificate& c) {
  if (c.weights.size() != a.size()) return false;
  Rational total = 0, t_sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += c.weights[i];
    if (c.separating & bit(i)) t_sum += c.weights[i];
  }
  if (total.get_den() != 1 || total != c.weight_sum) return false;
  if (fractional_part(t_sum) != c.rotation || c.rotation <= 0 || c.rotation >= 1) return false;
  if (c.separating == 0 || c.separating == full_mask(a.size())) return false;
  return c.separating == c.sink.signs.difference(c.eps) && is_sink(a, c.eps, c.sink);
}

namespace detail {

inline void require_sphere_signs(const Lattice& lat, const SignVector& eps) {
  check_signs(lat.arrangement(), eps);
  if (is_globally_consistent(lat.arrangement(), eps))
    throw Error(ErrorKind::GloballyConsistent,
                "'" + eps.str() + "' is globally consistent; its sphere is null-homotopic");
  if (!is_locally_consistent(lat, eps))
    throw Error(ErrorKind::NotLocallyConsistent, "'" + eps.str() + "' is not locally consistent");
}

inline MonodromyCertificate certify_with(const Lattice& lat, const SignVector& eps,
                                         std::vector<Rational> weights, const std::optional<SignVector>& start) {
  const Arrangement& a = lat.arrangement();
  require_sphere_signs(lat, eps);
  if (weights.size() != a.size())
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(a.size()) + " weights");
  MonodromyCertificate c;
  c.eps = eps;
  c.flow = flow_to_sink(a, eps, start ? require_chamber(a, *start) : first_chamber(a));
  c.sink = c.flow.chambers.back();
  c.separating = c.sink.signs.difference(eps);
  c.weights = std::move(weights);
  Rational t_sum = 0;
  c.weight_sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    c.weight_sum += c.weights[i];
    if (c.separating & bit(i)) t_sum += c.weights[i];
  }
  if (c.weight_sum.get_den() != 1)
    throw Error(ErrorKind::WeightConditionViolated,
                "weights sum to " + to_string(c.weight_sum) + ", not an integer");
  if (t_sum.get_den() == 1)
    throw Error(ErrorKind::WeightConditionViolated,
                "weights over the separating set sum to the integer " + to_string(t_sum));
  for (const auto& w : c.weights)
    if (w <= 0 || w >= 1)
      throw Error(ErrorKind::WeightConditionViolated, "weight " + to_string(w) + " outside (0, 1)");
  c.rotation = fractional_part(t_sum);
  if (!verify_monodromy(a, c)) throw Error(ErrorKind::InternalError, "monodromy certificate failed to verify");
  return c;
}

}  // namespace detail

/// Certificate with the uniform weights a_i = 1/n.
inline MonodromyCertificate certify_nontrivial_sphere(const Lattice& lat, const SignVector& eps,
                                                      const std::optional<SignVector>& start = std::nullopt) {
  const std::size_t n = lat.n();
  return detail::certify_with(lat, eps, std::vector<Rational>(n, Rational(Integer(1), Integer(n))), start);
}

inline MonodromyCertificate custom_weights(const Lattice& lat, const SignVector& eps,
                                           std::vector<Rational> weights,
                                           const std::optional<SignVector>& start = std::nullopt) {
  return detail::certify_with(lat, eps, std::move(weights), start);
}

/// A point x + i v of C^l. Real parts lie on the boundary of the unit
/// cross-polytope.
struct ComplexSamplePoint {
  RatVector real;
  RatVector imag;
  IndexMask near = 0;             // hyperplanes the imaginary part is steered by
  std::optional<Rational> delta;  // threshold defining `near`; none when unbounded
};

/// Near set of x: the hyperplanes through x plus those with |alpha_i(x)| below
/// the largest threshold that keeps the set inside some localization A_X,
/// X != 0 (that is, of rank below dim).
inline std::pair<IndexMask, std::optional<Rational>> near_set(const Arrangement& a, const RatVector& x) {
  std::vector<std::pair<Rational, std::size_t>> values;
  IndexMask near = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational v = abs(dot(a.form(i), x));
    if (v == 0)
      near |= bit(i);
    else
      values.emplace_back(std::move(v), i);
  }
  std::stable_sort(values.begin(), values.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  std::size_t pos = 0;
  while (pos < values.size()) {
    std::size_t end = pos;
    IndexMask group = 0;
    while (end < values.size() && values[end].first == values[pos].first) group |= bit(values[end++].second);
    if (rank_of(a.forms(near | group), a.dim) >= a.dim) return {near, values[pos].first};
    near |= group;
    pos = end;
  }
  return {near, std::nullopt};
}

/// Point-wise samples of the sphere S(eps) in the complexified complement.
/// Even-numbered real parts are drawn inside proper flats (so they lie on
/// hyperplanes), odd-numbered ones uniformly from an integer box.
inline std::vector<ComplexSamplePoint> sample_sphere_points(const Lattice& lat, const SignVector& eps, std::size_t m,
                                                            std::uint64_t seed = 1) {
  const Arrangement& a = lat.arrangement();
  check_signs(a, eps);
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
  if (!is_locally_consistent(lat, eps))
    throw Error(ErrorKind::NotLocallyConsistent, "'" + eps.str() + "' is not locally consistent");

  std::vector<const Flat*> proper;
  for (const auto& f : lat.flats())
    if (f.codim >= 1 && f.codim < lat.dim()) proper.push_back(&f);

  std::mt19937_64 rng(seed);
  auto draw = [&](long bound) { return Rational(static_cast<long>(rng() % (2 * bound + 1)) - bound); };
  std::vector<ComplexSamplePoint> out;
  out.reserve(m);
  for (std::size_t s = 0; s < m; ++s) {
    RatVector x(a.dim, Rational(0));
    do {
      std::fill(x.begin(), x.end(), Rational(0));
      if (s % 2 == 0 && !proper.empty()) {
        const Flat& f = *proper[(s / 2) % proper.size()];
        for (const auto& b : f.kernel.rows) {
          const Rational c = draw(4);
          for (std::size_t j = 0; j < a.dim; ++j) x[j] += c * b[j];
        }
      } else {
        for (auto& c : x) c = draw(6);
      }
    } while (is_zero(x));
    const Rational norm = l1_norm(x);
    for (auto& c : x) c /= norm;

    auto [near, delta] = near_set(a, x);
    ComplexSamplePoint p;
    p.imag = interior_witness(subsystem(a, eps, near));
    p.real = std::move(x);
    p.near = near;
    p.delta = std::move(delta);
    out.push_back(std::move(p));
  }
  return out;
}

/// Recomputes every alpha_i(x) and alpha_i(v) from scratch: the point avoids
/// all complexified hyperplanes, and wherever x lies on H_i (or near it) the
/// imaginary part points into the chosen half-space.
inline bool verify_sample_point(const Arrangement& a, const SignVector& eps, const ComplexSamplePoint& p) {
  if (p.real.size() != a.dim || p.imag.size() != a.dim) return false;
  if (l1_norm(p.real) != 1) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational re = 0, im = 0;
    for (std::size_t j = 0; j < a.dim; ++j) {
      re += a.form(i)[j] * p.real[j];
      im += a.form(i)[j] * p.imag[j];
    }
    if (re == 0 && im == 0) return false;
    if ((re == 0 || (p.near & bit(i))) && sign(im) != eps[i]) return false;
  }
  return true;
}

}  // namespace hyparr
