#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbitzeta/enumerate.hpp"
#include "orbitzeta/estimator.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/spectrum.hpp"

namespace orbitzeta {

struct PressureEstimate {
  double value = 0.0;
  std::string method = "slope";  // value comes from the slope; ratio is the cross-check
  double slope = 0.0;
  double ratio = 0.0;
  double standard_error = 0.0;
  double uncertainty = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  bool negative_pressure = false;  // the NegativePressureWindow flag
};

struct EstimatorOptions {
  bool force = false;  // accept uncertified spectra
  GrowthOptions growth;
};

// Growth rate of the Chebyshev-weighted orbit count
//   sum over classes with length <= T of ell_p(gamma),
// estimated on the top half of the certified range. Requires >= 20 distinct
// lengths; not_certified unless forced; insufficient_data if h <= 0.
PressureEstimate entropy(const LengthSpectrum& spectrum, const EstimatorOptions& opt = {});

// The same estimator with each class weighted by e^{U(gamma)}.
PressureEstimate pressure(const LengthSpectrum& spectrum, const WeightTable& weights,
                          const EstimatorOptions& opt = {});
PressureEstimate pressure(const LengthSpectrum& spectrum, const std::vector<double>& U,
                          const EstimatorOptions& opt = {});

struct CriticalExponentEstimate {
  double value = 0.0;
  double slope = 0.0;
  double ratio = 0.0;
  double standard_error = 0.0;
  double uncertainty = 0.0;
  double R = 0.0;
  std::vector<double> radii;
  std::vector<double> counts;  // smoothed orbit counts at the radii
  std::size_t orbit_points = 0;
};

// Least-squares slope of log counts over the last half of the radius range,
// plus the two-point ratio over a quarter of that half.
CriticalExponentEstimate critical_exponent_from_counts(const std::vector<double>& radii,
                                                       const std::vector<double>& counts);

// Smoothed counts #{g : d(o, g o) <= R} on 64 radii up to R_max.
CriticalExponentEstimate critical_exponent(const SchottkyGroup& group, double R_max,
                                           const ResourceLimits& limits = {});
CriticalExponentEstimate critical_exponent(const OrbitCount& orbit, double R_max);

// (h - n b / 2, h - n a / 2); bad_pinching unless 0 < a <= b.
std::pair<double, double> sbr_pressure_bounds(double h, double a, double b, int n);

void check_pinching(double a, double b);

}  // namespace orbitzeta
