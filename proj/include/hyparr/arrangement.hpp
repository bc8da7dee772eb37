#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyparr/linalg.hpp"

namespace hyparr {

/// Hyperplane index sets are bit masks, so arrangements hold at most 64
/// hyperplanes.
inline constexpr std::size_t kMaxHyperplanes = 64;

using IndexMask = std::uint64_t;

inline IndexMask bit(std::size_t i) { return IndexMask{1} << i; }
inline IndexMask full_mask(std::size_t n) { return n >= 64 ? ~IndexMask{0} : bit(n) - 1; }
inline std::size_t popcount(IndexMask m) { return static_cast<std::size_t>(std::popcount(m)); }

inline std::vector<std::size_t> indices_of(IndexMask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

/// 1-based index list, the form used in every report.
inline std::vector<std::size_t> one_based(IndexMask m) {
  auto out = indices_of(m);
  for (auto& i : out) ++i;
  return out;
}

struct Hyperplane {
  RatVector form;
  std::string label;
};

struct Arrangement {
  std::size_t dim = 0;
  std::vector<Hyperplane> hyperplanes;

  std::size_t size() const { return hyperplanes.size(); }
  const RatVector& form(std::size_t i) const { return hyperplanes[i].form; }

  std::vector<RatVector> forms() const {
    std::vector<RatVector> out;
    out.reserve(size());
    for (const auto& h : hyperplanes) out.push_back(h.form);
    return out;
  }

  std::vector<RatVector> forms(IndexMask mask) const {
    std::vector<RatVector> out;
    for (auto i : indices_of(mask)) out.push_back(form(i));
    return out;
  }
};

/// Choice of a half-space per hyperplane. Stored as an integer key whose
/// numeric order equals the lexicographic order of the "+"/"-" string
/// ('+' sorts before '-'): index 0 is the most significant bit, 1 means '-'.
class SignVector {
 public:
  SignVector() = default;
  SignVector(std::size_t n, std::uint64_t key) : n_(n), key_(key) {}

  static SignVector all_positive(std::size_t n) { return SignVector(n, 0); }

  static SignVector parse(std::string_view s) {
    if (s.size() > kMaxHyperplanes)
      throw Error(ErrorKind::TooLarge, "sign vector longer than 64");
    std::uint64_t key = 0;
    for (char c : s) {
      if (c != '+' && c != '-')
        throw Error(ErrorKind::ParseError, "sign vector must use '+' and '-': '" + std::string(s) + "'");
      key = (key << 1) | (c == '-' ? 1u : 0u);
    }
    return SignVector(s.size(), key);
  }

  std::size_t size() const { return n_; }
  std::uint64_t key() const { return key_; }

  /// +1 or -1.
  int operator[](std::size_t i) const { return ((key_ >> (n_ - 1 - i)) & 1u) ? -1 : 1; }

  SignVector with(std::size_t i, int s) const {
    const std::uint64_t b = std::uint64_t{1} << (n_ - 1 - i);
    return SignVector(n_, s < 0 ? (key_ | b) : (key_ & ~b));
  }
  SignVector flipped(std::size_t i) const { return with(i, -(*this)[i]); }
  SignVector negated() const { return SignVector(n_, key_ ^ full_mask(n_)); }

  /// Mask (bit i = hyperplane i) of the positions where the two vectors differ.
  IndexMask difference(const SignVector& other) const {
    IndexMask out = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if ((*this)[i] != other[i]) out |= bit(i);
    return out;
  }

  std::string str() const {
    std::string s(n_, '+');
    for (std::size_t i = 0; i < n_; ++i)
      if ((*this)[i] < 0) s[i] = '-';
    return s;
  }

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend std::strong_ordering operator<=>(const SignVector& a, const SignVector& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.key_ <=> b.key_;
  }

 private:
  std::size_t n_ = 0;
  std::uint64_t key_ = 0;
};

inline bool proportional(const RatVector& a, const RatVector& b) {
  return normalize_direction(a) == normalize_direction(b);
}

/// Checks the central-arrangement invariants that do not involve rank:
/// dimensions, nonzero forms, pairwise non-proportional forms.
inline void check_central(const Arrangement& a) {
  if (a.dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
  if (a.size() == 0) throw Error(ErrorKind::InvalidArgument, "arrangement has no hyperplanes");
  if (a.size() > kMaxHyperplanes)
    throw Error(ErrorKind::TooLarge, "at most 64 hyperplanes are supported");
  std::vector<RatVector> directions;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& f = a.form(i);
    if (f.size() != a.dim)
      throw Error(ErrorKind::DimensionMismatch,
                  "form " + std::to_string(i + 1) + " has " + std::to_string(f.size()) +
                      " coefficients, expected " + std::to_string(a.dim));
    if (is_zero(f)) throw Error(ErrorKind::ZeroForm, "form " + std::to_string(i + 1) + " is zero");
    directions.push_back(normalize_direction(f));
    for (std::size_t j = 0; j < i; ++j)
      if (directions[j] == directions[i])
        throw Error(ErrorKind::DuplicateHyperplane, "forms " + std::to_string(j + 1) + " and " +
                                                        std::to_string(i + 1) + " are proportional");
  }
}

inline bool is_essential(const Arrangement& a) { return rank_of(a.forms(), a.dim) == a.dim; }

/// Returns `a` unchanged if it is central, essential and free of repeats.
inline Arrangement validate(const Arrangement& a) {
  check_central(a);
  if (!is_essential(a))
    throw Error(ErrorKind::NotEssential, "forms have rank " + std::to_string(rank_of(a.forms(), a.dim)) +
                                             " < dimension " + std::to_string(a.dim));
  return a;
}

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("H" + std::to_string(i + 1));
  return out;
}

inline Arrangement make_arrangement(std::size_t dim, std::vector<RatVector> forms,
                                    std::vector<std::string> labels = {}) {
  if (labels.empty()) labels = default_labels(forms.size());
  if (labels.size() != forms.size())
    throw Error(ErrorKind::DimensionMismatch, "label count differs from form count");
  Arrangement a{dim, {}};
  for (std::size_t i = 0; i < forms.size(); ++i) a.hyperplanes.push_back({std::move(forms[i]), labels[i]});
  return a;
}

/// Restricts a central arrangement to a complement of the common
/// intersection. The new coordinates are the values of a maximal independent
/// prefix-greedy subset of the forms, so every sign and every index-set rank is
/// preserved.
inline Arrangement essentialize(const std::vector<RatVector>& forms, std::size_t dim,
                                std::vector<std::string> labels = {}) {
  check_central(make_arrangement(dim, forms, labels));
  std::vector<std::size_t> basis;
  std::vector<RatVector> basis_rows;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    basis_rows.push_back(forms[i]);
    if (rank_of(basis_rows, dim) == basis_rows.size())
      basis.push_back(i);
    else
      basis_rows.pop_back();
  }
  const std::size_t r = basis.size();
  std::vector<RatVector> reduced;
  for (const auto& f : forms) {
    // Solve sum_k c_k basis_k = f through the kernel of [basis_1 .. basis_r, f]^T.
    std::vector<RatVector> rows = basis_rows;
    rows.push_back(f);
    const RatMatrix ker = kernel_basis(transpose(RatMatrix(rows, dim)));
    RatVector c(r);
    for (const auto& y : ker.rows) {
      if (y[r] == 0) continue;
      for (std::size_t k = 0; k < r; ++k) c[k] = -y[k] / y[r];
      break;
    }
    reduced.push_back(std::move(c));
  }
  return validate(make_arrangement(r, std::move(reduced), std::move(labels)));
}

struct AffineHyperplane {
  RatVector linear;
  Rational constant;  // the hyperplane is <linear, x> + constant = 0
  std::string label;
};

struct AffineArrangement {
  std::size_t dim = 0;
  std::vector<AffineHyperplane> hyperplanes;

  std::size_t size() const { return hyperplanes.size(); }
};

inline void check_affine(const AffineArrangement& b) {
  if (b.dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
  if (b.size() == 0) throw Error(ErrorKind::InvalidArgument, "affine arrangement has no hyperplanes");
  std::vector<RatVector> directions;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& h = b.hyperplanes[i];
    if (h.linear.size() != b.dim)
      throw Error(ErrorKind::DimensionMismatch, "affine form " + std::to_string(i + 1) + " has wrong length");
    if (is_zero(h.linear))
      throw Error(ErrorKind::ZeroForm, "affine form " + std::to_string(i + 1) + " has zero linear part");
    RatVector full = h.linear;
    full.push_back(h.constant);
    directions.push_back(normalize_direction(full));
    for (std::size_t j = 0; j < i; ++j)
      if (directions[j] == directions[i])
        throw Error(ErrorKind::DuplicateHyperplane, "affine forms " + std::to_string(j + 1) + " and " +
                                                        std::to_string(i + 1) + " are proportional");
  }
}

/// Homogenizes <a,x> + c into <a,x> + c z and appends the hyperplane at
/// infinity z = 0 as the last index.
inline Arrangement cone(const AffineArrangement& b) {
  check_affine(b);
  Arrangement a{b.dim + 1, {}};
  for (const auto& h : b.hyperplanes) {
    RatVector f = h.linear;
    f.push_back(h.constant);
    a.hyperplanes.push_back({std::move(f), h.label});
  }
  RatVector z(b.dim + 1, Rational(0));
  z.back() = 1;
  a.hyperplanes.push_back({std::move(z), "H_inf"});
  return validate(a);
}

inline SignVector sign_vector_of_point(const Arrangement& a, const RatVector& x) {
  if (x.size() != a.dim) throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  SignVector s = SignVector::all_positive(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int v = sign(dot(a.form(i), x));
    if (v == 0) throw Error(ErrorKind::OnHyperplane, "point lies on hyperplane " + std::to_string(i + 1));
    if (v < 0) s = s.with(i, -1);
  }
  return s;
}

inline void check_signs(const Arrangement& a, const SignVector& eps) {
  if (eps.size() != a.size())
    throw Error(ErrorKind::DimensionMismatch, "sign vector has length " + std::to_string(eps.size()) +
                                                  ", arrangement has " + std::to_string(a.size()) +
                                                  " hyperplanes");
}

/// Rows eps_i * alpha_i for i in `mask`, in index order.
inline std::vector<RatVector> signed_forms(const Arrangement& a, const SignVector& eps, IndexMask mask) {
  std::vector<RatVector> rows;
  for (auto i : indices_of(mask)) rows.push_back(eps[i] < 0 ? negated(a.form(i)) : a.form(i));
  return rows;
}

}  // namespace hyparr
