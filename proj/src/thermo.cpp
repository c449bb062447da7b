#include "orbitzeta/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

namespace {

PressureEstimate from_growth(const GrowthEstimate& g) {
  PressureEstimate p;
  p.value = g.value;
  p.slope = g.slope;
  p.ratio = g.ratio;
  p.standard_error = g.standard_error;
  p.uncertainty = g.uncertainty;
  p.window_lo = g.window_lo;
  p.window_hi = g.window_hi;
  return p;
}

void check_spectrum(const LengthSpectrum& sp, const EstimatorOptions& opt) {
  if (!sp.certified && !opt.force)
    fail(ErrorCode::not_certified, "spectrum is not certified to its cutoff (use force to override)");
  std::set<double> distinct;
  for (const auto& g : sp.entries) {
    distinct.insert(g.length);
    if (distinct.size() >= 20) return;
  }
  fail(ErrorCode::insufficient_data, "need >= 20 distinct lengths, have " + std::to_string(distinct.size()));
}

// Smooth step: 0 below -1, 1 above 1, C^1 in between.
double smooth_step(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return 0.5 * (1.0 + u) + std::sin(std::numbers::pi * u) / (2.0 * std::numbers::pi);
}

}  // namespace

PressureEstimate pressure(const LengthSpectrum& sp, const std::vector<double>& U, const EstimatorOptions& opt) {
  check_spectrum(sp, opt);
  if (U.size() != sp.entries.size()) fail(ErrorCode::weight_missing, "weights do not cover the spectrum");
  std::vector<double> x, m;
  x.reserve(U.size());
  m.reserve(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) {
    x.push_back(sp.entries[i].length);
    m.push_back(sp.entries[i].ell_p * std::exp(U[i]));
  }
  PressureEstimate p = from_growth(estimate_growth(x, m, sp.cutoff, opt.growth));
  p.negative_pressure = p.value <= 0.0;
  return p;
}

PressureEstimate pressure(const LengthSpectrum& sp, const WeightTable& weights, const EstimatorOptions& opt) {
  return pressure(sp, weights.aligned(sp), opt);
}

PressureEstimate entropy(const LengthSpectrum& sp, const EstimatorOptions& opt) {
  PressureEstimate p = pressure(sp, std::vector<double>(sp.entries.size(), 0.0), opt);
  p.negative_pressure = false;
  if (!(p.value > 0.0))
    fail(ErrorCode::insufficient_data, "entropy estimate " + std::to_string(p.value) + " is not positive");
  return p;
}

CriticalExponentEstimate critical_exponent_from_counts(const std::vector<double>& radii,
                                                       const std::vector<double>& counts) {
  if (radii.size() < 6 || radii.size() != counts.size())
    fail(ErrorCode::insufficient_data, "critical exponent needs orbit counts at >= 6 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(counts[i] > 0.0)) fail(ErrorCode::insufficient_data, "orbit count must be positive at every radius");
    if (i && !(radii[i] > radii[i - 1])) fail(ErrorCode::invalid_argument, "radii must be increasing");
  }
  const double r0 = radii.front(), r1 = radii.back();
  const double mid = 0.5 * (r0 + r1);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] >= mid) {
      xs.push_back(radii[i]);
      ys.push_back(std::log(counts[i]));
    }
  }
  if (xs.size() < 3) fail(ErrorCode::insufficient_data, "too few radii in the upper half of the range");
  LinearFit f = least_squares(xs, ys);
  // log count, linearly interpolated in R.
  auto log_at = [&](double r) {
    auto it = std::lower_bound(radii.begin(), radii.end(), r);
    if (it == radii.begin()) return std::log(counts.front());
    if (it == radii.end()) return std::log(counts.back());
    auto j = static_cast<std::size_t>(it - radii.begin());
    double w = (r - radii[j - 1]) / (radii[j] - radii[j - 1]);
    return (1.0 - w) * std::log(counts[j - 1]) + w * std::log(counts[j]);
  };
  const double delta = 0.25 * (r1 - mid);
  CriticalExponentEstimate e;
  e.slope = f.slope;
  e.standard_error = f.slope_se;
  e.ratio = (log_at(r1) - log_at(r1 - delta)) / delta;
  e.value = e.slope;
  e.uncertainty = std::max(std::abs(e.slope - e.ratio), e.standard_error);
  e.R = r1;
  e.radii = radii;
  e.counts = counts;
  return e;
}

CriticalExponentEstimate critical_exponent(const OrbitCount& orbit, double R_max) {
  if (!(R_max > 0.0)) fail(ErrorCode::insufficient_data, "R_max must be positive");
  const double delta = R_max / 8.0;
  const int n = 64;
  std::vector<double> radii, counts;
  const auto& d = orbit.displacements;
  for (int i = 0; i < n; ++i) {
    double R = delta + (R_max - 2.0 * delta) * i / (n - 1);
    auto hi = std::upper_bound(d.begin(), d.end(), R + delta);
    auto lo = std::lower_bound(d.begin(), d.end(), R - delta);
    double c = static_cast<double>(lo - d.begin());
    for (auto it = lo; it != hi; ++it) c += smooth_step((R - *it) / delta);
    radii.push_back(R);
    counts.push_back(c);
  }
  CriticalExponentEstimate e = critical_exponent_from_counts(radii, counts);
  e.orbit_points = d.size();
  e.R = R_max;
  if (!(e.value > 0.0)) fail(ErrorCode::insufficient_data, "critical exponent estimate is not positive");
  return e;
}

CriticalExponentEstimate critical_exponent(const SchottkyGroup& group, double R_max, const ResourceLimits& limits) {
  return critical_exponent(orbit_displacements(group, R_max, limits), R_max);
}

void check_pinching(double a, double b) {
  if (!(a > 0.0) || !(a <= b) || !std::isfinite(b))
    fail(ErrorCode::bad_pinching, "pinching constants need 0 < a <= b (got a = " + std::to_string(a) +
                                      ", b = " + std::to_string(b) + ")");
}

std::pair<double, double> sbr_pressure_bounds(double h, double a, double b, int n) {
  check_pinching(a, b);
  if (n < 1) fail(ErrorCode::invalid_argument, "dimension n must be >= 1");
  return {h - n * b / 2.0, h - n * a / 2.0};
}

}  // namespace orbitzeta
