#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "hyparr/feasibility.hpp"
#include "hyparr/lattice.hpp"

namespace hyparr {

struct EnumerationOptions {
  std::size_t limit = 22;  // largest n enumerated exhaustively
  unsigned jobs = 1;
};

/// Hard cap on `limit`: counts of the form 2^n must fit in 64 bits.
inline constexpr std::size_t kMaxEnumerationLimit = 62;

struct ConsistencyResult {
  bool consistent;
  FeasibilityResult certificate;

  explicit operator bool() const { return consistent; }
};

inline StrictSystem subsystem(const Arrangement& a, const SignVector& eps, IndexMask mask) {
  return StrictSystem{a.dim, signed_forms(a, eps, mask)};
}

inline ConsistencyResult consistency_of(const Arrangement& a, const SignVector& eps, IndexMask mask) {
  check_signs(a, eps);
  auto r = strict_feasible(subsystem(a, eps, mask));
  const bool ok = r.feasible();
  return {ok, std::move(r)};
}

/// Consistency of all n chosen half-spaces.
inline ConsistencyResult is_globally_consistent(const Arrangement& a, const SignVector& eps) {
  return consistency_of(a, eps, full_mask(a.size()));
}

/// Consistency of the subsystem indexed by the localization at the flat.
inline ConsistencyResult is_consistent_at(const Lattice& lat, const SignVector& eps, IndexMask flat) {
  return consistency_of(lat.arrangement(), eps, lat.at(flat).contains);
}

/// First flat, in lattice order (so of minimal codimension), with codimension
/// at most `max_codim` at which `eps` is inconsistent.
inline std::optional<std::size_t> first_inconsistent_flat(const Lattice& lat, const SignVector& eps,
                                                          std::size_t max_codim) {
  check_signs(lat.arrangement(), eps);
  const auto& flats = lat.flats();
  for (std::size_t i = 0; i < flats.size(); ++i) {
    const Flat& f = flats[i];
    if (f.codim > max_codim) break;
    if (f.is_boolean()) continue;
    if (!strict_feasible(subsystem(lat.arrangement(), eps, f.contains)).feasible()) return i;
  }
  return std::nullopt;
}

/// Consistent at every flat other than the origin.
inline bool is_locally_consistent(const Lattice& lat, const SignVector& eps) {
  return !first_inconsistent_flat(lat, eps, lat.dim() - 1).has_value();
}

/// Exact Sigma_k via depth-first sign assignment. A partial assignment is
/// abandoned as soon as a non-Boolean flat of codimension in [2, k], all of
/// whose hyperplanes are assigned, is inconsistent. Boolean flats are skipped:
/// independent half-spaces always meet.
class SigmaEnumerator {
 public:
  SigmaEnumerator(const Lattice& lat, std::size_t k) : lat_(lat), n_(lat.n()) {
    by_last_.resize(n_);
    for (std::size_t i = 0; i < lat.flats().size(); ++i) {
      const Flat& f = lat.flats()[i];
      if (f.codim < 2 || f.codim > k || f.is_boolean()) continue;
      const std::size_t last = 63 - static_cast<std::size_t>(std::countl_zero(f.contains));
      by_last_[last].push_back(i);
    }
  }

  /// Sign vectors (sorted) whose first `prefix_len` signs equal `prefix`
  /// (given as a negative-position mask).
  std::vector<SignVector> run(IndexMask prefix, std::size_t prefix_len) {
    std::vector<SignVector> out;
    dfs(0, 0, prefix, prefix_len, out);
    return out;
  }

  bool accepts(IndexMask neg) {
    for (std::size_t i = 0; i < n_; ++i)
      if (!check(i, neg)) return false;
    return true;
  }

 private:
  bool check(std::size_t pos, IndexMask neg) {
    for (std::size_t fi : by_last_[pos]) {
      const IndexMask c = lat_.flats()[fi].contains;
      std::uint64_t pattern = 0;
      std::size_t b = 0;
      for (IndexMask m = c; m; m &= m - 1, ++b)
        if (neg & (m & -m)) pattern |= std::uint64_t{1} << b;
      auto& memo = memo_[fi];
      auto it = memo.find(pattern);
      bool ok;
      if (it != memo.end()) {
        ok = it->second;
      } else {
        std::vector<RatVector> rows;
        for (auto i : indices_of(c)) rows.push_back((neg & bit(i)) ? negated(lat_.arrangement().form(i))
                                                                     : lat_.arrangement().form(i));
        ok = strict_feasible(StrictSystem{lat_.dim(), std::move(rows)}).feasible();
        memo.emplace(pattern, ok);
      }
      if (!ok) return false;
    }
    return true;
  }

  void dfs(std::size_t pos, IndexMask neg, IndexMask prefix, std::size_t prefix_len,
           std::vector<SignVector>& out) {
    if (pos == n_) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < n_; ++i) key = (key << 1) | ((neg >> i) & 1u);
      out.emplace_back(n_, key);
      return;
    }
    for (int s : {+1, -1}) {
      if (pos < prefix_len && ((s < 0) != bool(prefix & bit(pos)))) continue;
      const IndexMask next = s < 0 ? (neg | bit(pos)) : neg;
      if (check(pos, next)) dfs(pos + 1, next, prefix, prefix_len, out);
    }
  }

  const Lattice& lat_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> by_last_;
  std::unordered_map<std::size_t, std::unordered_map<std::uint64_t, bool>> memo_;
};

inline void check_enumerable(std::size_t n, const EnumerationOptions& opts) {
  if (opts.limit > kMaxEnumerationLimit)
    throw Error(ErrorKind::InvalidArgument, "enumeration limit may not exceed 62");
  if (n > opts.limit)
    throw Error(ErrorKind::TooLarge, std::to_string(n) + " hyperplanes exceed the enumeration limit " +
                                         std::to_string(opts.limit));
}

/// Sigma_k as a lexicographically sorted list ('+' before '-').
inline std::vector<SignVector> sigma(const Lattice& lat, std::size_t k, const EnumerationOptions& opts = {}) {
  if (k < 1 || k > lat.dim())
    throw Error(ErrorKind::InvalidArgument, "k must lie in [1, " + std::to_string(lat.dim()) + "]");
  check_enumerable(lat.n(), opts);
  const std::size_t n = lat.n();
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) return SigmaEnumerator(lat, k).run(0, 0);

  // Split on a prefix of sign positions; prefix p in increasing order of its
  // lexicographic key so the concatenation stays sorted.
  std::size_t split = 0;
  while (split < n && (std::size_t{1} << split) < 4 * jobs) ++split;
  const std::size_t tasks = std::size_t{1} << split;
  std::vector<std::vector<SignVector>> parts(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    SigmaEnumerator en(lat, k);
    for (std::size_t t; (t = next.fetch_add(1)) < tasks;) {
      IndexMask prefix = 0;
      for (std::size_t b = 0; b < split; ++b)
        if ((t >> (split - 1 - b)) & 1u) prefix |= bit(b);
      parts[t] = en.run(prefix, split);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  std::vector<SignVector> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// One witness of Sigma_k strictly containing Sigma_{k+1}.
struct SigmaGap {
  std::size_t k = 0;
  SignVector witness;
  IndexMask flat = 0;  // codimension k + 1, eps inconsistent there
  RatVector dual;      // Gordan certificate over the localization, in index order
};

struct SigmaFiltration {
  std::vector<std::uint64_t> counts;           // counts[k-1] = |Sigma_k|
  std::vector<std::vector<SignVector>> sets;   // sets[k-1]; sets[0] empty unless materialized
  std::vector<SigmaGap> gaps;

  std::uint64_t count(std::size_t k) const { return counts.at(k - 1); }
};

/// Threshold on n below which Sigma_1 (all 2^n vectors) is listed explicitly.
inline constexpr std::size_t kFullSigmaOneThreshold = 12;

inline SigmaGap make_gap(const Lattice& lat, std::size_t k, const SignVector& eps) {
  SigmaGap g;
  g.k = k;
  g.witness = eps;
  for (const Flat* f : lat.of_codim(k + 1)) {
    auto r = strict_feasible(subsystem(lat.arrangement(), eps, f->contains));
    if (!r.feasible()) {
      g.flat = f->contains;
      g.dual = r.dual();
      return g;
    }
  }
  throw Error(ErrorKind::InternalError, "gap witness is consistent at every flat of codimension " +
                                            std::to_string(k + 1));
}

inline SigmaFiltration sigma_filtration(const Lattice& lat, const EnumerationOptions& opts = {}) {
  check_enumerable(lat.n(), opts);
  const std::size_t n = lat.n();
  const std::size_t l = lat.dim();
  SigmaFiltration out;
  out.counts.assign(l, 0);
  out.sets.assign(l, {});
  out.counts[0] = std::uint64_t{1} << n;
  if (n <= kFullSigmaOneThreshold)
    for (std::uint64_t key = 0; key < out.counts[0]; ++key) out.sets[0].emplace_back(n, key);
  for (std::size_t k = 2; k <= l; ++k) {
    out.sets[k - 1] = sigma(lat, k, opts);
    out.counts[k - 1] = out.sets[k - 1].size();
  }

  for (std::size_t k = 1; k < l; ++k) {
    if (out.counts[k - 1] == out.counts[k]) continue;
    std::optional<SignVector> witness;
    if (k == 1) {
      // Smallest key missing from the sorted Sigma_2.
      std::uint64_t key = 0;
      for (const auto& s : out.sets[1]) {
        if (s.key() != key) break;
        ++key;
      }
      witness = SignVector(n, key);
    } else {
      const auto& big = out.sets[k - 1];
      const auto& small = out.sets[k];
      std::size_t j = 0;
      for (const auto& s : big) {
        while (j < small.size() && small[j] < s) ++j;
        if (j == small.size() || small[j] != s) {
          witness = s;
          break;
        }
      }
    }
    out.gaps.push_back(make_gap(lat, k, *witness));
  }
  for (std::size_t k = 1; k < l; ++k)
    if (out.counts[k] > out.counts[k - 1])
      throw Error(ErrorKind::InternalError, "Sigma filtration is not nested");
  return out;
}

}  // namespace hyparr
