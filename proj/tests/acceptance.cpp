// Acceptance checks. One line per criterion; exit status is the number of
// failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "hyparr/hyparr.hpp"
#include "oracles.hpp"

using namespace hyparr;
using namespace testing_helpers;

namespace {

constexpr double kGeneric4Seconds = 1.0;
constexpr double kX2Seconds = 10.0;
constexpr double kGenericFamilySeconds = 30.0;
constexpr std::size_t kFlowPairs = 1000;
constexpr std::size_t kStrictSystems = 10000;
constexpr std::size_t kSpherePoints = 200;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Check {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

// Locally consistent but globally inconsistent vectors collected by 1-3 for 6.
std::vector<std::pair<Arrangement, SignVector>> g_lcgi;

std::set<std::string> minus(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out;
  for (const auto& s : a)
    if (!b.count(s)) out.insert(s);
  return out;
}

void generic4_filtration(Check& c) {
  const auto t0 = Clock::now();
  const auto lat = build_lattice(generic4());
  const auto r = detect_obstruction(lat);
  const auto f = sigma_filtration(lat);
  const double dt = seconds_since(t0);
  c.require(r.counts == std::vector<std::uint64_t>{16, 16, 14}, "counts (16,16,14)");
  const auto diff = minus(strings(f.sets[1]), strings(f.sets[2]));
  c.require(diff == std::set<std::string>{"+++-", "---+"}, "complement {+++-, ---+}");
  c.require(r.minimal_k == std::optional<std::size_t>(2), "gap at k=2");
  bool positive = !r.gaps.empty() && !r.gaps[0].dual.empty();
  if (positive)
    for (const auto& y : r.gaps[0].dual) positive = positive && y > 0;
  c.require(positive, "dual strictly positive");
  c.require(!r.gaps.empty() &&
                verify_dual(subsystem(lat.arrangement(), r.gaps[0].witness, r.gaps[0].flat), r.gaps[0].dual),
            "dual verifies");
  c.require(dt < kGeneric4Seconds, "runtime");
  for (const auto& s : diff) g_lcgi.emplace_back(generic4(), sv(s));
  c.note << "counts=(" << r.counts[0] << "," << r.counts[1] << "," << r.counts[2] << ") t=" << dt << "s";
}

void x2_equal_sigmas(Check& c) {
  const auto t0 = Clock::now();
  const auto lat = build_lattice(x2_coned());
  const auto f = sigma_filtration(lat);
  const auto r = detect_obstruction(lat);
  const double dt = seconds_since(t0);
  const auto s2 = strings(f.sets[1]), s3 = strings(f.sets[2]);
  c.require(s2 == s3, "Sigma_2 == Sigma_3");
  c.require(s3.size() == 34, "|Sigma_3| == 34");
  c.require(s3 == oracle::brute_chambers(lat.arrangement()), "Sigma_3 equals brute-force chambers");
  c.require(r.kpi1_possible, "kpi1_possible");
  c.require(dt < kX2Seconds, "runtime");
  for (const auto& s : minus(s2, s3)) g_lcgi.emplace_back(x2_coned(), sv(s));
  c.note << "|Sigma_2|=" << s2.size() << " |Sigma_3|=" << s3.size() << " t=" << dt << "s";
}

void generic_family(Check& c) {
  const auto t0 = Clock::now();
  std::size_t runs = 0;
  for (auto [n, l] : {std::pair<std::size_t, std::size_t>{4, 3}, {5, 3}, {5, 4}}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto a = generic(n, l, {seed, 9});
      const auto lat = build_lattice(a);
      const auto f = sigma_filtration(lat);
      const auto r = detect_obstruction(lat);
      const auto upper = strings(f.sets[l - 2]), top = strings(f.sets[l - 1]);
      const bool strict = top.size() < upper.size() &&
                          std::includes(upper.begin(), upper.end(), top.begin(), top.end());
      c.require(strict, "Sigma_{l-1} strictly contains Sigma_l for n=" + std::to_string(n) + " l=" +
                            std::to_string(l) + " seed=" + std::to_string(seed));
      bool claimed = false;
      for (const auto& g : r.gaps) claimed = claimed || (g.k == l - 1 && g.homotopy_claim());
      c.require(claimed, "pi_{l-1} reported");
      for (const auto& s : minus(upper, top)) g_lcgi.emplace_back(a, sv(s));
      ++runs;
    }
  }
  const double dt = seconds_since(t0);
  c.require(dt < kGenericFamilySeconds, "runtime");
  c.note << runs << " arrangements t=" << dt << "s";
}

void equal_sigmas_for_kpi1(Check& c) {
  std::vector<std::pair<std::string, Arrangement>> cases;
  for (std::size_t l = 2; l <= 5; ++l) cases.emplace_back("boolean(" + std::to_string(l) + ")", boolean(l));
  cases.emplace_back("braid(4)", braid(4));
  for (const auto& [name, a] : cases) {
    const auto f = sigma_filtration(build_lattice(a));
    bool equal = true;
    for (std::size_t k = 2; k < a.dim; ++k) equal = equal && strings(f.sets[k - 1]) == strings(f.sets[k]);
    c.require(equal, name);
    for (const auto& g : f.gaps) c.require(g.k == 1, name + " gap above k=1");
  }
  c.note << cases.size() << " arrangements";
}

void random_flows(Check& c) {
  std::mt19937_64 rng(5);
  std::size_t pairs = 0, consistent = 0;
  while (pairs < kFlowPairs) {
    const auto a = oracle::random_arrangement(rng, 4, 8);
    const auto chambers = enumerate_chambers(a);
    for (int e = 0; e < 4; ++e, ++pairs) {
      const SignVector eps(a.size(), rng() & full_mask(a.size()));
      std::vector<Chamber> sinks;
      for (const auto& ch : chambers)
        if (is_sink(a, eps, ch)) sinks.push_back(ch);
      c.require(!sinks.empty(), "sink exists");
      const auto& start = chambers[rng() % chambers.size()];
      const auto path = flow_to_sink(a, eps, start);
      std::set<std::size_t> crossed(path.crossed.begin(), path.crossed.end());
      c.require(path.length() <= a.size(), "flow length <= n");
      c.require(crossed.size() == path.crossed.size(), "crossings distinct");
      c.require(is_sink(a, eps, path.chambers.back()), "flow ends at a sink");
      if (is_globally_consistent(a, eps)) {
        ++consistent;
        c.require(sinks.size() == 1 && sinks[0].signs == eps, "unique sink equals eps");
      }
    }
  }
  c.note << pairs << " pairs, " << consistent << " globally consistent";
}

void certify_collected(Check& c) {
  std::size_t done = 0;
  for (const auto& [a, eps] : g_lcgi) {
    const auto lat = build_lattice(a);
    try {
      const auto cert = certify_nontrivial_sphere(lat, eps);
      c.require(verify_monodromy(a, cert), "certificate verifies");
      c.require(cert.rotation > 0 && cert.rotation < 1, "rotation in (0,1)");
      ++done;
    } catch (const Error& e) {
      c.require(false, std::string("certify threw ") + e.what());
    }
  }
  const auto lat = build_lattice(generic4());
  const auto g4 = certify_nontrivial_sphere(lat, sv("+++-"));
  c.require(g4.sink.signs.str() == "++++", "generic4 sink ++++");
  c.require(g4.separating == bit(3), "generic4 T = {4}");
  c.require(g4.rotation == Rational(1, 4), "generic4 r = 1/4");
  c.require(done > 0, "something to certify");
  c.note << done << " systems certified; generic4 r=" << to_string(g4.rotation);
}

void strict_systems(Check& c) {
  std::mt19937_64 rng(7);
  std::size_t infeasible = 0;
  for (std::size_t t = 0; t < kStrictSystems; ++t) {
    const std::size_t d = 1 + rng() % 4, m = 1 + rng() % 8;
    StrictSystem s{d, {}};
    for (std::size_t i = 0; i < m; ++i) {
      RatVector r(d);
      for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
      s.rows.push_back(r);
    }
    const auto r = strict_feasible(s);
    c.require(verify_certificate(s, r), "certificate verifies");
    c.require(r.feasible() == oracle::feasible(s.rows, d), "agrees with circuit oracle");
    StrictSystem scaled_sys = s;
    for (auto& row : scaled_sys.rows) row = scaled(row, Rational(static_cast<long>(1 + rng() % 7)));
    c.require(strict_feasible(scaled_sys).feasible() == r.feasible(), "scaling invariance");
    if (!r.feasible()) ++infeasible;
  }
  c.note << kStrictSystems << " systems, " << infeasible << " infeasible";
}

void top_level_matches_chambers(Check& c) {
  std::vector<Arrangement> cases = {boolean(2), boolean(3), boolean(4), generic4(), x2_coned(), braid(3), braid(4),
                                    generic(5, 3, {}), generic_union(boolean(3), arr(3, {{1, 1, 1}})).arrangement};
  std::mt19937_64 rng(9);
  for (int t = 0; t < 60; ++t) cases.push_back(oracle::random_arrangement(rng, 4, 8));
  for (const auto& a : cases) {
    const auto lat = build_lattice(a);
    const auto top = sigma(lat, a.dim);
    c.require(top.size() == chamber_count_oracle(lat), "|Sigma_l| equals Zaslavsky count");
    c.require(strings(top) == oracle::brute_chambers(a), "Sigma_l equals brute-force chambers");
    c.require(sigma(lat, 1).size() == (std::size_t{1} << a.size()), "|Sigma_1| = 2^n");
  }
  c.note << cases.size() << " arrangements";
}

void sphere_sampling(Check& c) {
  const auto lat = build_lattice(generic4());
  const auto pts = sample_sphere_points(lat, sv("+++-"), kSpherePoints, 1);
  std::size_t ok = 0;
  for (const auto& p : pts) ok += verify_sample_point(lat.arrangement(), sv("+++-"), p) ? 1 : 0;
  c.require(pts.size() == kSpherePoints, "point count");
  c.require(ok == pts.size(), "all points verify");
  c.note << ok << "/" << pts.size() << " verified";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"generic4 filtration and gap at k=2", generic4_filtration},
      {"cX2 has Sigma_2 = Sigma_3 = chambers", x2_equal_sigmas},
      {"generic (n,l) families show pi_{l-1} gap", generic_family},
      {"boolean and braid have equal Sigma_2..Sigma_l", equal_sigmas_for_kpi1},
      {"random flows reach sinks", random_flows},
      {"certificates for every collected system", certify_collected},
      {"strict feasibility vs circuit oracle", strict_systems},
      {"Sigma_l equals chambers, Sigma_1 full", top_level_matches_chambers},
      {"sphere sampling verifies", sphere_sampling},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.note << "exception: " << e.what();
    }
    std::printf("%s [%zu] %s: %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), c.note.str().c_str());
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
  }
  return failures;
}
