#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orbitzeta/enumerate.hpp"
#include "orbitzeta/schottky.hpp"
#include "orbitzeta/spectrum.hpp"
#include "orbitzeta/thermo.hpp"
#include "orbitzeta/zeta.hpp"

namespace orbitzeta {

enum class SpectralBranch { supercritical, subcritical };

struct SpectralBounds {
  double h = 0.0, a = 0.0, b = 0.0;
  int n = 1;
  double lower = 0.0;
  double upper = 0.0;
  SpectralBranch branch = SpectralBranch::subcritical;
};

std::string to_string(SpectralBranch b);

// Supercritical (h > na/2): [h(na - h), (nb)^2/4]; otherwise [(na)^2/4, (nb)^2/4].
SpectralBounds lambda0_bounds(double h, double a, double b, int n);

// delta(n - delta) for delta > n/2, n^2/4 otherwise.
double sullivan_lambda0(double delta, int n);

// Integral of 1/log t from 2 to x by adaptive Gauss-Kronrod in u = log t;
// negative on (1, 2). Defined as 0 for x <= 1, where the integral diverges.
double li(double x);

struct RefinedCountRow {
  double T = 0.0;
  double N_p = 0.0;
  double model = 0.0;
  double remainder = 0.0;
  double bound = 0.0;  // e^{beta T} / T
};

struct RefinedCounting {
  std::vector<RefinedCountRow> rows;
  double beta = 0.0;  // (n / (n + 1)) (1/2 + h)
  double rms_remainder = 0.0;
};

// N_p(T) against li(e^{hT}) + sum li(e^{alpha_i T}) on T_j = j Tc / points.
RefinedCounting gn_refined_counting(const LengthSpectrum& spectrum, double h, const std::vector<double>& alphas,
                                    int points = 40);
// The same comparison on explicit (T, N_p) data.
RefinedCounting gn_refined_counting(const std::vector<double>& T, const std::vector<double>& N_p, double h,
                                    const std::vector<double>& alphas, int n);

struct ExtensionStrip {
  ZetaFamily family = ZetaFamily::selberg;
  double rate = 0.0;  // h or the pressure
  double a = 0.0, b = 0.0;
  double alpha = 1.0;  // Hoelder exponent used
  double edge_lo = 0.0;  // edge for lambda = b
  double edge_hi = 0.0;  // edge for lambda = a
};

// Guaranteed meromorphic strip edge as lambda ranges over [a, b]:
//   selberg  rate - lambda/2
//   weighted rate - lambda alpha/2
//   gn       rate - min(lambda a/b, lambda/2)
ExtensionStrip extension_strip(ZetaFamily family, double rate, double a, double b, double alpha_w = 1.0);

struct SweepResult {
  std::vector<double> alpha;
  std::vector<double> h;
  std::vector<double> uncertainty;
  std::vector<double> dd1;  // first divided differences, forward, last entry repeats
  std::vector<double> dd2;  // second divided differences, centred; 0 at both ends
  std::vector<double> jump;  // |h_{i-1} - 2 h_i + h_{i+1}|, 0 at both ends
  double max_jump = 0.0;
  double max_uncertainty = 0.0;
  bool smooth = true;  // max_jump <= 3 max_uncertainty
  bool truncated = false;
  std::string truncation_reason;
  std::vector<std::size_t> class_counts;
};

using GroupBuilder = std::function<SchottkyGroup(double alpha)>;

// Entropy at each grid point from a spectrum enumerated to the fixed cutoff T.
// The grid must be strictly increasing with >= 7 points. A group that fails
// the ping-pong check ends the sweep there (truncated, with the reason).
SweepResult entropy_sweep(const GroupBuilder& family, const std::vector<double>& grid, double T,
                          const ResourceLimits& limits = {}, const EstimatorOptions& opt = {});

}  // namespace orbitzeta
