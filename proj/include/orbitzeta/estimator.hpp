#pragma once

// Finite-window growth-rate estimation for periodic-orbit sums.
//
// Each orbit contributes a mass at its length. The masses are spread with a
// raised-cosine kernel of half-width delta, and the exponential growth rate
// of the resulting density is read off on [T0, T1] two ways: a least-squares
// slope of its logarithm over the window, and a two-point ratio at the top
// end. Their discrepancy and the regression standard error give the
// reported uncertainty.

#include <vector>

namespace orbitzeta {

struct GrowthEstimate {
  double value = 0.0;  // the slope estimate
  double slope = 0.0;
  double ratio = 0.0;
  double standard_error = 0.0;
  double uncertainty = 0.0;  // max(|slope - ratio|, standard_error)
  double window_lo = 0.0;
  double window_hi = 0.0;
  double bandwidth = 0.0;
  int points = 0;
};

struct GrowthOptions {
  double window_fraction = 0.5;  // window = [(1 - f) T, T]
  int points = 61;
};

// Smoothed density sum_i m_i K((x_i - t) / delta).
double smoothed_density(const std::vector<double>& x, const std::vector<double>& mass, double t, double delta);

// Throws insufficient_data when the density vanishes somewhere in the window.
GrowthEstimate estimate_growth(const std::vector<double>& x, const std::vector<double>& mass, double T,
                               const GrowthOptions& opt = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace orbitzeta
