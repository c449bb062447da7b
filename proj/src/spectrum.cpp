#include "orbitzeta/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbitzeta/error.hpp"
#include "orbitzeta/schottky.hpp"

namespace orbitzeta {

std::size_t LengthSpectrum::primitive_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const ClosedGeodesic& g) { return g.primitive(); }));
}

void sort_entries(std::vector<ClosedGeodesic>& entries) {
  std::sort(entries.begin(), entries.end(), [](const ClosedGeodesic& x, const ClosedGeodesic& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.canonical_word < y.canonical_word;
  });
}

ClosedGeodesic make_geodesic(const SchottkyGroup& group, const Word& w) {
  ClosedGeodesic g;
  g.canonical_word = canonical_form(w);
  auto [root, k] = primitive_root(g.canonical_word);
  g.primitive_word = root;
  g.k = k;
  ComplexLength cl = translation_length(group.evaluate(root));
  double s = group.length_scale();
  g.ell_p = cl.ell * s;
  g.length = k * cl.ell * s;
  double theta = std::remainder(k * cl.theta, 2.0 * std::numbers::pi);
  if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  g.complex_length = {g.length, theta};
  g.trace = group.evaluate(g.canonical_word).trace();
  return g;
}

std::vector<CountPoint> counting_function(const LengthSpectrum& spectrum, const std::vector<double>& grid) {
  std::vector<double> all, prim;
  all.reserve(spectrum.entries.size());
  for (const auto& g : spectrum.entries) {
    all.push_back(g.length);
    if (g.primitive()) prim.push_back(g.length);
  }
  std::sort(all.begin(), all.end());
  std::sort(prim.begin(), prim.end());
  std::vector<CountPoint> out;
  out.reserve(grid.size());
  for (double T : grid) {
    if (T > spectrum.cutoff * (1.0 + 1e-12))
      fail(ErrorCode::cutoff_exceeded, "grid value " + std::to_string(T) + " exceeds the spectrum cutoff " +
                                           std::to_string(spectrum.cutoff));
    out.push_back({T, static_cast<std::uint64_t>(std::upper_bound(all.begin(), all.end(), T) - all.begin()),
                   static_cast<std::uint64_t>(std::upper_bound(prim.begin(), prim.end(), T) - prim.begin())});
  }
  return out;
}

RationalApprox best_rational_approximation(double x, std::int64_t max_q) {
  if (max_q < 1) fail(ErrorCode::invalid_argument, "max denominator must be >= 1");
  // Convergents h/k; (h1, k1) is the latest, (h2, k2) the one before.
  std::int64_t h2 = 0, k2 = 1, h1 = 1, k1 = 0;
  double r = x;
  RationalApprox best{static_cast<std::int64_t>(std::llround(x)), 1, 0.0};
  best.error = std::abs(x - static_cast<double>(best.p));
  auto consider = [&](std::int64_t p, std::int64_t q) {
    double e = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
    if (e < best.error) best = {p, q, e};
  };
  for (int iter = 0; iter < 64; ++iter) {
    double fa = std::floor(r);
    if (fa > 1e15) break;
    auto a = static_cast<std::int64_t>(fa);
    std::int64_t h = a * h1 + h2, k = a * k1 + k2;
    if (k > max_q) {
      // Largest semiconvergent that still fits.
      if (k1 > 0) {
        std::int64_t t = (max_q - k2) / k1;
        if (t >= 1) consider(t * h1 + h2, t * k1 + k2);
      }
      break;
    }
    consider(h, k);
    h2 = h1;
    k2 = k1;
    h1 = h;
    k1 = k;
    double frac = r - fa;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return best;
}

NonArithmeticityVerdict non_arithmeticity_check(const LengthSpectrum& spectrum, double tol) {
  if (!(tol > 0.0) || tol >= 1.0) fail(ErrorCode::invalid_argument, "tolerance must lie in (0, 1)");
  struct Item {
    double len;
    const ClosedGeodesic* g;
  };
  std::vector<Item> distinct;
  for (const auto& g : spectrum.entries) {
    if (!g.primitive()) continue;
    if (!distinct.empty() && std::abs(g.length - distinct.back().len) <= 1e-12 * g.length) continue;
    distinct.push_back({g.length, &g});
  }
  if (distinct.size() < 2) fail(ErrorCode::too_few_geodesics, "need at least two distinct primitive lengths");

  NonArithmeticityVerdict v;
  v.max_denominator = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(0.125 / std::sqrt(tol))));
  const std::size_t limit = std::min<std::size_t>(distinct.size(), 64);
  for (std::size_t i = 0; i < limit; ++i) {
    for (std::size_t j = i + 1; j < limit; ++j) {
      double ratio = distinct[j].len / distinct[i].len;
      RationalApprox a = best_rational_approximation(ratio, v.max_denominator);
      if (a.error > tol) {
        v.witness_found = true;
        v.length_1 = distinct[i].len;
        v.length_2 = distinct[j].len;
        v.word_1 = to_string(distinct[i].g->canonical_word);
        v.word_2 = to_string(distinct[j].g->canonical_word);
        v.best_error = a.error;
        v.best_p = a.p;
        v.best_q = a.q;
        return v;
      }
    }
  }
  return v;
}

}  // namespace orbitzeta
