#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "orbitzeta/enumerate.hpp"
#include "orbitzeta/error.hpp"
#include "orbitzeta/spectrum_io.hpp"

using namespace orbitzeta;

namespace {

const SchottkyGroup& ref() {
  static const SchottkyGroup g = reference_group();
  return g;
}

const LengthSpectrum& ref35() {
  static const LengthSpectrum sp = enumerate_spectrum(ref(), 35.0);
  return sp;
}

std::vector<std::vector<int>> reduced_words(int rank, int max_len) {
  std::vector<std::vector<int>> all, level{{}};
  for (int m = 1; m <= max_len; ++m) {
    std::vector<std::vector<int>> next;
    for (const auto& w : level)
      for (int k = 0; k < 2 * rank; ++k) {
        int l = letter_from_key(k);
        if (!w.empty() && w.back() == -l) continue;
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    level = next;
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

// Two cyclically reduced words are conjugate iff one is a rotation of the other.
bool rotation_of(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t r = 0; r < x.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) ok = x[(r + i) % x.size()] == y[i];
    if (ok) return true;
  }
  return false;
}

std::vector<int> stack_cyclic_reduce(std::vector<int> w) {
  while (w.size() > 1 && w.front() == -w.back()) w = std::vector<int>(w.begin() + 1, w.end() - 1);
  return w;
}

}  // namespace

TEST_CASE("per-level reduced word counts") {
  ResourceLimits lim;
  lim.max_word_length = 6;
  LengthSpectrum sp = enumerate_spectrum(ref(), 1e3, lim);
  REQUIRE(sp.stats.level_counts.size() == 7);
  for (int m = 1; m <= 6; ++m)
    CHECK(sp.stats.level_counts[static_cast<std::size_t>(m)] == 4u * static_cast<std::uint64_t>(std::pow(3, m - 1)));
  CHECK(!sp.certified);
  CHECK(sp.stats.status == EnumerationStatus::word_length_limit);
  CHECK(sp.stats.deepest_level == 6);
}

TEST_CASE("class enumeration equals the pairwise conjugacy oracle up to word length 6") {
  // Oracle: O(N^2) conjugacy classes of all cyclically reduced words of
  // length <= 6 by rotation comparison.
  std::vector<std::vector<int>> reps;
  for (const auto& w : reduced_words(2, 6)) {
    auto c = stack_cyclic_reduce(w);
    if (c.empty()) continue;
    bool found = false;
    for (const auto& r : reps)
      if (rotation_of(r, c)) {
        found = true;
        break;
      }
    if (!found) reps.push_back(c);
  }
  std::set<std::string> oracle;
  for (const auto& r : reps) oracle.insert(to_string(canonical_form(Word(r))));

  ResourceLimits lim;
  lim.max_word_length = 6;
  LengthSpectrum sp = enumerate_spectrum(ref(), 1e3, lim);
  std::set<std::string> got;
  for (const auto& g : sp.entries) got.insert(to_string(g.canonical_word));
  CHECK(got.size() == sp.entries.size());
  CHECK(got == oracle);
}

TEST_CASE("empty spectrum below the shortest geodesic") {
  LengthSpectrum sp = enumerate_spectrum(ref(), 1.0);
  CHECK(sp.entries.empty());
  CHECK(sp.certified);
}

TEST_CASE("parallel enumeration equals the unpruned serial oracle") {
  for (double T : {9.0, 16.0, 21.0}) {
    LengthSpectrum par = enumerate_spectrum(ref(), T);
    int L = validate_ping_pong(ref()).required_word_length(T);
    LengthSpectrum ser = reference::enumerate_spectrum_serial(ref(), T, L);
    REQUIRE(par.entries.size() == ser.entries.size());
    CHECK(par.entries == ser.entries);
    CHECK(par.certified);
    // Unpruned search two levels deeper finds nothing new.
    LengthSpectrum deeper = reference::enumerate_spectrum_serial(ref(), T, L + 2);
    CHECK(deeper.entries == par.entries);
  }
}

TEST_CASE("worker count does not change the saved spectrum") {
  ResourceLimits one, four;
  one.workers = 1;
  four.workers = 4;
  std::ostringstream a, b;
  write_spectrum(a, enumerate_spectrum(ref(), 28.0, one));
  write_spectrum(b, enumerate_spectrum(ref(), 28.0, four));
  CHECK(a.str() == b.str());
}

TEST_CASE("spectrum entries are well formed") {
  const LengthSpectrum& sp = ref35();
  CHECK(sp.certified);
  CHECK(sp.entries.size() > 1000);
  for (std::size_t i = 0; i < sp.entries.size(); ++i) {
    const auto& g = sp.entries[i];
    CHECK(g.length <= sp.cutoff);
    CHECK(canonical_form(g.canonical_word) == g.canonical_word);
    auto [root, k] = primitive_root(g.canonical_word);
    CHECK(root == g.primitive_word);
    CHECK(k == g.k);
    CHECK(primitive_root(g.primitive_word).second == 1);
    CHECK(std::abs(g.length - g.k * g.ell_p) <= 1e-10 * g.length);
    // The independent matrix product gives the same length.
    double direct = translation_length(ref().evaluate(g.canonical_word)).ell;
    CHECK(std::abs(direct - g.length) <= 1e-9 * g.length);
    if (i) {
      const auto& p = sp.entries[i - 1];
      CHECK((p.length < g.length || (p.length == g.length && p.canonical_word < g.canonical_word)));
    }
  }
}

TEST_CASE("orientation pairing") {
  const LengthSpectrum& sp = ref35();
  std::map<std::string, double> len;
  for (const auto& g : sp.entries) len[to_string(g.canonical_word)] = g.length;
  for (const auto& g : sp.entries) {
    std::string inv = to_string(canonical_form(g.canonical_word.inverse()));
    CHECK(inv != to_string(g.canonical_word));
    REQUIRE(len.count(inv));
    CHECK(std::abs(len[inv] - g.length) <= 1e-9 * g.length);
  }
  // Even multiplicity of every primitive length value.
  std::vector<double> prim;
  for (const auto& g : sp.entries)
    if (g.primitive()) prim.push_back(g.length);
  std::sort(prim.begin(), prim.end());
  std::size_t i = 0;
  while (i < prim.size()) {
    std::size_t j = i;
    while (j < prim.size() && prim[j] - prim[i] <= 1e-9 * prim[i]) ++j;
    CHECK((j - i) % 2 == 0);
    i = j;
  }
}

TEST_CASE("counting function") {
  const LengthSpectrum& sp = ref35();
  auto c = counting_function(sp, {1.0, 20.0, 35.0});
  CHECK(c[0].N == 0);
  CHECK(c[0].N_p == 0);
  CHECK(c[2].N == sp.entries.size());
  CHECK(c[2].N_p == sp.primitive_count());
  CHECK(c[1].N <= c[2].N);
  // Powers recomputed from the primitive list.
  for (double T : {10.0, 20.0, 30.0, 35.0}) {
    std::uint64_t powers = 0;
    for (const auto& g : sp.entries)
      if (g.primitive())
        for (int k = 2; k * g.length <= T * (1 + 1e-12); ++k) ++powers;
    auto p = counting_function(sp, {T})[0];
    CHECK(p.N - p.N_p == powers);
  }
  CHECK_THROWS_AS(counting_function(sp, {36.0}), Error);
}

TEST_CASE("non-arithmeticity") {
  auto synth = [](std::vector<double> lengths) {
    LengthSpectrum sp;
    sp.cutoff = 100.0;
    sp.certified = true;
    for (double l : lengths) {
      ClosedGeodesic g;
      g.canonical_word = parse_word("a");
      g.primitive_word = g.canonical_word;
      g.length = g.ell_p = l;
      sp.entries.push_back(g);
    }
    return sp;
  };
  CHECK(non_arithmeticity_check(synth({1.0, std::sqrt(2.0)})).witness_found);
  CHECK(!non_arithmeticity_check(synth({0.7, 1.4, 2.1, 3.5, 7.0})).witness_found);
  CHECK_THROWS_AS(non_arithmeticity_check(synth({1.0, 1.0})), Error);
  NonArithmeticityVerdict v = non_arithmeticity_check(ref35());
  CHECK(v.witness_found);
  CHECK(v.best_error > 1e-6);
  // Independent recheck of the witness: no p/q with small q is close.
  double r = v.length_2 / v.length_1;
  for (std::int64_t q = 1; q <= v.max_denominator; ++q) {
    double p = std::round(r * static_cast<double>(q));
    CHECK(std::abs(r - p / static_cast<double>(q)) > 1e-6);
  }
}

TEST_CASE("best rational approximation matches brute force") {
  for (double x : {std::sqrt(2.0), M_PI, 0.123456, 2.5, 1.0 / 3.0})
    for (std::int64_t Q : {1, 7, 50, 300}) {
      RationalApprox a = best_rational_approximation(x, Q);
      double best = 1e300;
      for (std::int64_t q = 1; q <= Q; ++q)
        best = std::min(best, std::abs(x - std::round(x * static_cast<double>(q)) / static_cast<double>(q)));
      CHECK(a.error == doctest::Approx(best).epsilon(1e-12));
      CHECK(a.q <= Q);
    }
}

TEST_CASE("resource limits report status instead of failing") {
  ResourceLimits lim;
  lim.max_word_length = 5;
  LengthSpectrum sp = enumerate_spectrum(ref(), 30.0, lim);
  CHECK(!sp.certified);
  CHECK(sp.stats.status == EnumerationStatus::word_length_limit);
  CHECK(sp.stats.t_certified < 30.0);
  ResourceLimits few;
  few.max_classes = 10;
  LengthSpectrum sp2 = enumerate_spectrum(ref(), 30.0, few);
  CHECK(!sp2.certified);
  CHECK(sp2.stats.status == EnumerationStatus::class_limit);
}

TEST_CASE("orbit displacements") {
  OrbitCount par = orbit_displacements(ref(), 18.0);
  CompletenessCertificate c = validate_ping_pong(ref());
  OrbitCount ser = reference::orbit_displacements_serial(ref(), 18.0, c.required_word_length(18.0));
  CHECK(par.displacements == ser.displacements);
  CHECK(par.displacements.front() == 0.0);
  CHECK(std::is_sorted(par.displacements.begin(), par.displacements.end()));
  ResourceLimits one;
  one.workers = 1;
  CHECK(orbit_displacements(ref(), 18.0, one).displacements == par.displacements);
  // Too far for the word-length limit.
  ResourceLimits lim;
  lim.max_word_length = 3;
  CHECK_THROWS_AS(orbit_displacements(ref(), 30.0, lim), Error);
}

TEST_CASE("poincare series partial sums") {
  CHECK(poincare_series_partial(ref(), 100.0, 20.0).sum == doctest::Approx(1.0).epsilon(1e-6));
  PoincarePartial tiny = poincare_series_partial(ref(), 0.5, 1.0);
  CHECK(tiny.sum == 1.0);
  CHECK(tiny.count == 1);
  OrbitCount o = orbit_displacements(ref(), 16.0);
  CompletenessCertificate c = validate_ping_pong(ref());
  OrbitCount naive = reference::orbit_displacements_serial(ref(), 16.0, c.required_word_length(16.0) + 1);
  double s = 0.4, oracle = 0.0;
  for (double d : naive.displacements)
    if (d <= 16.0) oracle += std::exp(-s * d);
  CHECK(poincare_series_partial(o, s, 16.0).sum == doctest::Approx(oracle).epsilon(1e-12));
  double prev = 0.0;
  for (double R : {4.0, 8.0, 12.0, 16.0}) {
    double v = poincare_series_partial(o, s, R).sum;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(poincare_series_partial(o, 0.3, 16.0).sum > poincare_series_partial(o, 0.6, 16.0).sum);
}

TEST_CASE("pairwise sum") {
  std::vector<double> x(1000, 0.1);
  CHECK(pairwise_sum(x) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("length scale multiplies every length") {
  LengthSpectrum a = enumerate_spectrum(ref(), 20.0);
  LengthSpectrum b = enumerate_spectrum(symmetric_schottky(4.0, 0.0, 2.0), 40.0);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(b.entries[i].canonical_word == a.entries[i].canonical_word);
    CHECK(b.entries[i].length == doctest::Approx(2.0 * a.entries[i].length).epsilon(1e-12));
  }
}
