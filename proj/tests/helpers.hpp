#pragma once

#include <set>
#include <string>
#include <vector>

#include "hyparr/hyparr.hpp"

namespace testing_helpers {

inline hyparr::SignVector sv(const std::string& s) { return hyparr::SignVector::parse(s); }

inline std::set<std::string> strings(const std::vector<hyparr::SignVector>& v) {
  std::set<std::string> out;
  for (const auto& s : v) out.insert(s.str());
  return out;
}

inline hyparr::Arrangement arr(std::size_t dim, std::vector<std::vector<long>> forms) {
  std::vector<hyparr::RatVector> rows;
  for (const auto& f : forms) {
    hyparr::RatVector r;
    for (long x : f) r.push_back(hyparr::Rational(x));
    rows.push_back(r);
  }
  return hyparr::make_arrangement(dim, rows);
}

inline hyparr::RatVector vec(std::vector<long> xs) {
  hyparr::RatVector r;
  for (long x : xs) r.push_back(hyparr::Rational(x));
  return r;
}

template <typename F>
hyparr::ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const hyparr::Error& e) {
    return e.kind();
  }
  return hyparr::ErrorKind::InternalError;  // sentinel: nothing thrown
}

}  // namespace testing_helpers
