#include "orbitzeta/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

std::string to_string(SpectralBranch b) {
  return b == SpectralBranch::supercritical ? "supercritical" : "subcritical";
}

SpectralBounds lambda0_bounds(double h, double a, double b, int n) {
  check_pinching(a, b);
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be >= 1");
  if (!(h > 0.0)) fail(ErrorCode::invalid_argument, "h must be positive");
  SpectralBounds s{h, a, b, n};
  const double na = n * a, nb = n * b;
  s.upper = nb * nb / 4.0;
  if (h > na / 2.0) {
    s.branch = SpectralBranch::supercritical;
    s.lower = h * (na - h);
  } else {
    s.branch = SpectralBranch::subcritical;
    s.lower = na * na / 4.0;
  }
  return s;
}

double sullivan_lambda0(double delta, int n) {
  if (!(delta > 0.0)) fail(ErrorCode::invalid_argument, "delta must be positive");
  if (n < 1) fail(ErrorCode::invalid_argument, "n must be >= 1");
  const double nn = n;
  return delta > nn / 2.0 ? delta * (nn - delta) : nn * nn / 4.0;
}

double li(double x) {
  if (std::isnan(x)) fail(ErrorCode::non_finite_value, "li of NaN");
  if (x <= 1.0) return 0.0;
  if (x == 2.0) return 0.0;
  if (std::isinf(x)) return x;
  const double u0 = std::log(2.0), u1 = std::log(x);
  auto f = [](double u) { return std::exp(u) / u; };
  double err = 0.0;
  double v;
  if (u1 > u0) {
    v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, u0, u1, 20, 1e-13, &err);
  } else {
    // On (1, 2) the integrand blows up like 1/u at u = 0; the substitution
    // u = e^w keeps it bounded.
    auto g = [](double w) { return std::exp(std::exp(w)); };
    v = -boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, std::log(u1), std::log(u0), 20, 1e-13,
                                                                       &err);
  }
  return v;
}

RefinedCounting gn_refined_counting(const std::vector<double>& T, const std::vector<double>& N_p, double h,
                                    const std::vector<double>& alphas, int n) {
  if (T.size() != N_p.size() || T.empty()) fail(ErrorCode::insufficient_data, "refined counting needs data");
  if (!(h > 0.0)) fail(ErrorCode::insufficient_data, "h must be positive");
  RefinedCounting rc;
  rc.beta = (static_cast<double>(n) / (n + 1)) * (0.5 + h);
  double ss = 0.0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    RefinedCountRow r;
    r.T = T[i];
    r.N_p = N_p[i];
    r.model = li(std::exp(h * r.T));
    for (double a : alphas) r.model += li(std::exp(a * r.T));
    r.remainder = r.N_p - r.model;
    r.bound = r.T > 0.0 ? std::exp(rc.beta * r.T) / r.T : 0.0;
    ss += r.remainder * r.remainder;
    rc.rows.push_back(r);
  }
  rc.rms_remainder = std::sqrt(ss / static_cast<double>(T.size()));
  return rc;
}

RefinedCounting gn_refined_counting(const LengthSpectrum& sp, double h, const std::vector<double>& alphas,
                                    int points) {
  if (points < 2) fail(ErrorCode::insufficient_data, "refined counting needs >= 2 grid points");
  if (sp.entries.empty()) fail(ErrorCode::insufficient_data, "spectrum is empty");
  std::vector<double> grid;
  for (int j = 1; j <= points; ++j) grid.push_back(j * sp.cutoff / points);
  std::vector<double> counts;
  for (const auto& c : counting_function(sp, grid)) counts.push_back(static_cast<double>(c.N_p));
  return gn_refined_counting(grid, counts, h, alphas, boundary_dimension(sp.model));
}

ExtensionStrip extension_strip(ZetaFamily family, double rate, double a, double b, double alpha_w) {
  check_pinching(a, b);
  ExtensionStrip s{family, rate, a, b};
  auto edge = [&](double lambda) {
    switch (family) {
      case ZetaFamily::selberg: return rate - lambda / 2.0;
      case ZetaFamily::weighted: return rate - lambda * alpha_w / 2.0;
      case ZetaFamily::gn: return rate - std::min(lambda * a / b, lambda / 2.0);
    }
    return rate;
  };
  if (family == ZetaFamily::weighted) {
    if (!(alpha_w > 0.0 && alpha_w <= 1.0)) fail(ErrorCode::invalid_argument, "Hoelder exponent must lie in (0, 1]");
    s.alpha = alpha_w;
  } else if (family == ZetaFamily::gn) {
    s.alpha = std::min(2.0 * a / b, 1.0);
  }
  s.edge_lo = edge(b);
  s.edge_hi = edge(a);
  return s;
}

SweepResult entropy_sweep(const GroupBuilder& family, const std::vector<double>& grid, double T,
                          const ResourceLimits& limits, const EstimatorOptions& opt) {
  if (grid.size() < 7) fail(ErrorCode::insufficient_data, "grid too small: need >= 7 points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) fail(ErrorCode::invalid_argument, "sweep grid must be strictly increasing");
  SweepResult r;
  for (double a : grid) {
    std::optional<SchottkyGroup> g;
    CompletenessCertificate cert;
    try {
      g.emplace(family(a));
      cert = validate_ping_pong(*g);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ping_pong_violation && e.code() != ErrorCode::degenerate_disks &&
          e.code() != ErrorCode::invalid_group)
        throw;
      r.truncated = true;
      r.truncation_reason = "alpha = " + std::to_string(a) + ": " + e.what();
      break;
    }
    LengthSpectrum sp = enumerate_spectrum(*g, cert, T, limits);
    PressureEstimate p = entropy(sp, opt);
    r.alpha.push_back(a);
    r.h.push_back(p.value);
    r.uncertainty.push_back(p.uncertainty);
    r.class_counts.push_back(sp.entries.size());
  }
  const std::size_t m = r.alpha.size();
  r.dd1.assign(m, 0.0);
  r.dd2.assign(m, 0.0);
  r.jump.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) r.dd1[i] = (r.h[i + 1] - r.h[i]) / (r.alpha[i + 1] - r.alpha[i]);
  if (m >= 2) r.dd1[m - 1] = r.dd1[m - 2];
  for (std::size_t i = 1; i + 1 < m; ++i) {
    r.dd2[i] = 2.0 * (r.dd1[i] - r.dd1[i - 1]) / (r.alpha[i + 1] - r.alpha[i - 1]);
    r.jump[i] = std::abs(r.h[i - 1] - 2.0 * r.h[i] + r.h[i + 1]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    r.max_jump = std::max(r.max_jump, r.jump[i]);
    r.max_uncertainty = std::max(r.max_uncertainty, r.uncertainty[i]);
  }
  r.smooth = r.max_jump <= 3.0 * r.max_uncertainty;
  return r;
}

}  // namespace orbitzeta
