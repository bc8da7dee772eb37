#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hyparr/arrangement.hpp"

namespace hyparr {

/// An intersection subspace, identified by the closed set of hyperplanes
/// containing it.
struct Flat {
  IndexMask contains = 0;
  std::size_t codim = 0;
  RatMatrix kernel;  // rows span the subspace

  bool is_boolean() const { return popcount(contains) == codim; }
};

/// Closure of `mask`: every hyperplane containing the intersection of the
/// hyperplanes in `mask`.
inline Flat flat_of(const Arrangement& a, IndexMask mask) {
  Flat f;
  const auto rows = a.forms(mask);
  f.kernel = kernel_basis(RatMatrix(rows, a.dim));
  f.codim = a.dim - f.kernel.nrows();
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool inside = true;
    for (const auto& b : f.kernel.rows)
      if (dot(a.form(i), b) != 0) {
        inside = false;
        break;
      }
    if (inside) f.contains |= bit(i);
  }
  return f;
}

inline bool flat_order(const Flat& x, const Flat& y) {
  if (x.codim != y.codim) return x.codim < y.codim;
  return indices_of(x.contains) < indices_of(y.contains);
}

/// L(A) with Moebius values. Flats are sorted by codimension, then by their
/// index lists; moebius[i] belongs to flats[i].
class Lattice {
 public:
  Lattice() = default;

  const Arrangement& arrangement() const { return arrangement_; }
  std::size_t dim() const { return arrangement_.dim; }
  std::size_t n() const { return arrangement_.size(); }
  const std::vector<Flat>& flats() const { return flats_; }
  const std::vector<long>& moebius() const { return moebius_; }

  std::optional<std::size_t> find(IndexMask contains) const {
    auto it = index_.find(contains);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Flat& at(IndexMask contains) const {
    auto i = find(contains);
    if (!i) throw Error(ErrorKind::UnknownFlat, "no flat with the given index set");
    return flats_[*i];
  }

  /// Flats of the given codimension, in lattice order.
  std::vector<const Flat*> of_codim(std::size_t k) const {
    std::vector<const Flat*> out;
    for (const auto& f : flats_)
      if (f.codim == k) out.push_back(&f);
    return out;
  }

  std::vector<std::size_t> codim_counts() const {
    std::vector<std::size_t> out(dim() + 1, 0);
    for (const auto& f : flats_) ++out[f.codim];
    return out;
  }

  /// Coefficients of sum_X mu(X) t^(dim X), from t^dim down to t^0.
  std::vector<long> characteristic_polynomial() const {
    std::vector<long> out(dim() + 1, 0);
    for (std::size_t i = 0; i < flats_.size(); ++i) out[flats_[i].codim] += moebius_[i];
    return out;
  }

  friend Lattice build_lattice_unchecked(const Arrangement& a);

 private:
  Arrangement arrangement_;
  std::vector<Flat> flats_;
  std::vector<long> moebius_;
  std::unordered_map<IndexMask, std::size_t> index_;
};

/// Builds L(A) level by level for any central arrangement (essential or not).
inline Lattice build_lattice_unchecked(const Arrangement& a) {
  check_central(a);
  Lattice lat;
  lat.arrangement_ = a;
  std::vector<Flat> level{flat_of(a, 0)};
  std::vector<Flat> all;
  while (!level.empty()) {
    std::unordered_map<IndexMask, bool> seen;
    std::vector<Flat> next;
    for (const auto& f : level) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (f.contains & bit(i)) continue;
        // Closure of the union only depends on the union of index sets.
        const IndexMask candidate = f.contains | bit(i);
        bool known = false;
        for (const auto& g : next)
          if ((g.contains & candidate) == candidate) {
            known = true;
            break;
          }
        if (known) continue;
        Flat g = flat_of(a, candidate);
        if (seen.emplace(g.contains, true).second) next.push_back(std::move(g));
      }
    }
    for (auto& f : level) all.push_back(std::move(f));
    level = std::move(next);
  }
  std::sort(all.begin(), all.end(), flat_order);
  lat.flats_ = std::move(all);
  for (std::size_t i = 0; i < lat.flats_.size(); ++i) lat.index_.emplace(lat.flats_[i].contains, i);

  // mu(V) = 1 and sum over Y containing X of mu(Y) = 0 otherwise.
  lat.moebius_.assign(lat.flats_.size(), 0);
  for (std::size_t i = 0; i < lat.flats_.size(); ++i) {
    if (lat.flats_[i].codim == 0) {
      lat.moebius_[i] = 1;
      continue;
    }
    long s = 0;
    const IndexMask x = lat.flats_[i].contains;
    for (std::size_t j = 0; j < i; ++j) {
      const IndexMask y = lat.flats_[j].contains;
      if (lat.flats_[j].codim < lat.flats_[i].codim && (y & x) == y) s += lat.moebius_[j];
    }
    lat.moebius_[i] = -s;
  }
  return lat;
}

inline Lattice build_lattice(const Arrangement& a) { return build_lattice_unchecked(validate(a)); }

/// The localization A_X as an index set.
inline IndexMask localization(const Lattice& lat, IndexMask contains) { return lat.at(contains).contains; }

/// Zaslavsky's count: the number of chambers equals sum over flats of |mu|.
inline std::size_t chamber_count_oracle(const Lattice& lat) {
  std::size_t total = 0;
  for (long m : lat.moebius()) total += static_cast<std::size_t>(std::labs(m));
  return total;
}

}  // namespace hyparr
