#include "orbitzeta/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

double smoothed_density(const std::vector<double>& x, const std::vector<double>& mass, double t, double delta) {
  // x is sorted, so only the slice within delta of t contributes.
  auto lo = std::lower_bound(x.begin(), x.end(), t - delta);
  auto hi = std::upper_bound(x.begin(), x.end(), t + delta);
  double s = 0.0;
  for (auto it = lo; it != hi; ++it) {
    double u = (*it - t) / delta;
    if (std::abs(u) >= 1.0) continue;
    double c = std::cos(0.5 * std::numbers::pi * u);
    s += mass[static_cast<std::size_t>(it - x.begin())] * c * c;
  }
  return s;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 3 || x.size() != y.size()) fail(ErrorCode::insufficient_data, "least squares needs >= 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    rss += r * r;
  }
  f.slope_se = std::sqrt(rss / (n - 2.0) / sxx);
  return f;
}

GrowthEstimate estimate_growth(const std::vector<double>& x, const std::vector<double>& mass, double T,
                               const GrowthOptions& opt) {
  if (x.size() != mass.size()) fail(ErrorCode::invalid_argument, "lengths and masses differ in size");
  if (!(T > 0.0)) fail(ErrorCode::insufficient_data, "window end must be positive");
  if (!std::is_sorted(x.begin(), x.end())) fail(ErrorCode::invalid_argument, "lengths must be sorted");
  if (opt.points < 5) fail(ErrorCode::invalid_argument, "growth fit needs >= 5 points");
  GrowthEstimate g;
  g.window_hi = T;
  g.window_lo = (1.0 - opt.window_fraction) * T;
  const double delta = (g.window_hi - g.window_lo) / 4.0;
  g.bandwidth = delta;
  g.points = opt.points;
  const double a = g.window_lo + delta, b = g.window_hi - delta;
  auto log_density = [&](double t) {
    double d = smoothed_density(x, mass, t, delta);
    if (!(d > 0.0))
      fail(ErrorCode::insufficient_data, "no orbits near length " + std::to_string(t) + " in the fit window");
    return std::log(d);
  };
  std::vector<double> ts, ys;
  for (int i = 0; i < opt.points; ++i) {
    double t = a + (b - a) * i / (opt.points - 1);
    ts.push_back(t);
    ys.push_back(log_density(t));
  }
  LinearFit f = least_squares(ts, ys);
  g.slope = f.slope;
  g.standard_error = f.slope_se;
  g.ratio = (log_density(b) - log_density(b - delta)) / delta;
  g.value = g.slope;
  g.uncertainty = std::max(std::abs(g.slope - g.ratio), g.standard_error);
  return g;
}

}  // namespace orbitzeta
