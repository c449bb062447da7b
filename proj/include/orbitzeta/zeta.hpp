#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitzeta/moebius.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/spectrum.hpp"
#include "orbitzeta/thermo.hpp"

namespace orbitzeta {

enum class ZetaFamily { selberg, weighted, gn };

std::string to_string(ZetaFamily f);
ZetaFamily parse_zeta_family(const std::string& s);

struct ZetaOptions {
  double margin = 0.1;   // Re(s) must exceed the abscissa estimate by this much
  bool force = false;    // accept uncertified spectra
  double cutoff = -1.0;  // use only primitives up to this length (< 0: spectrum cutoff)
  std::optional<double> abscissa;  // skip the estimate and use this value (uncertainty 0)
  EstimatorOptions estimator;
};

struct ZetaEvaluation {
  Complex s{};
  Complex value{};
  Complex log_value{};
  double cutoff = 0.0;
  double tail_bound = 0.0;  // bound on |log Z - partial log-sum|
  ZetaFamily family = ZetaFamily::selberg;
};

// Set up once per spectrum and family; evaluate at many s.
class ZetaEvaluator {
 public:
  // U holds one weight per spectrum entry (weighted family only).
  ZetaEvaluator(const LengthSpectrum& spectrum, ZetaFamily family, const std::vector<double>& U = {},
                const ZetaOptions& opt = {});

  // Throws abscissa_too_close when Re(s) <= abscissa + margin.
  ZetaEvaluation evaluate(Complex s) const;
  // The same partial sum, skipping the abscissa check.
  Complex log_sum(Complex s) const;
  // log of prod (1 - x_p)^{-1} with the product formed directly (closed-form
  // families only).
  Complex log_euler_product(Complex s) const;
  double tail_bound(double sigma) const;

  double abscissa() const noexcept { return abscissa_; }
  double abscissa_uncertainty() const noexcept { return abscissa_u_; }
  double safe_re() const noexcept { return abscissa_ + opt_.margin; }
  double cutoff() const noexcept { return cutoff_; }
  ZetaFamily family() const noexcept { return family_; }

 private:
  struct Primitive {
    double ell = 0.0;  // metric length
    double log_weight = 0.0;  // U_p (closed form) or log p(gamma_p) (gn)
    ComplexLength hyp;  // hyperbolic complex length, for gn powers
  };
  Complex gn_series(const Primitive& p, Complex s) const;

  ZetaFamily family_;
  ZetaOptions opt_;
  Model model_ = Model::plane;
  double cutoff_ = 0.0;
  double abscissa_ = 0.0;
  double abscissa_u_ = 0.0;
  double growth_constant_ = 0.0;  // C in M(t) <= C e^{eta t}
  double max_rate_ = 0.0;         // max U_p / ell_p seen, for the power series ratio
  std::vector<Primitive> prims_;
};

ZetaEvaluation selberg_zeta(const LengthSpectrum& spectrum, Complex s, const ZetaOptions& opt = {});
ZetaEvaluation weighted_zeta(const LengthSpectrum& spectrum, const WeightTable& weights, Complex s,
                             const ZetaOptions& opt = {});
ZetaEvaluation gn_zeta(const LengthSpectrum& spectrum, Complex s, const ZetaOptions& opt = {});

// log p(gamma) = -1/2 log |det(I - P_gamma)| per spectrum entry.
std::vector<double> gn_log_weights(const LengthSpectrum& spectrum);
// U = -1/2 n ell per entry (the -W_SBR/2 weights).
std::vector<double> half_sbr_weights(const LengthSpectrum& spectrum);

struct PoleLocation {
  double estimate = 0.0;  // bracket midpoint
  double lo = 0.0, hi = 0.0;
  double abscissa_estimate = 0.0;  // independent pressure estimate
  double abscissa_uncertainty = 0.0;
  int iterations = 0;
  std::string notes;
};

// Bisection on g(s), the growth rate of the smoothed density of the terms of
// -Z'/Z(s); g > 0 below the abscissa and g < 0 above. Resolution 1e-3.
// Throws no_sign_change when [lo, hi] does not straddle the transition.
PoleLocation locate_pole(const LengthSpectrum& spectrum, ZetaFamily family, double lo, double hi,
                         const std::vector<double>& U = {}, const EstimatorOptions& opt = {});
double pole_diagnostic(const LengthSpectrum& spectrum, ZetaFamily family, double s, const std::vector<double>& U = {},
                       const EstimatorOptions& opt = {});

struct ClosenessRow {
  std::string word;
  double ell = 0.0;  // hyperbolic length of the class
  double r = 0.0;    // p / w - 1, computed from the multipliers
  double r_closed = 0.0;  // e^{-ell} / (1 - e^{-ell}) (plane only)
  double bound = 0.0;     // C e^{-ell}
};

struct ClosenessReport {
  std::vector<ClosenessRow> rows;
  double C = 0.0;
  bool closed_form = true;  // false in the space model
  double max_closed_form_deviation = 0.0;  // relative
  bool all_within_bound = true;
};

// In the space model the closed form does not apply; r is computed
// numerically and closed_form is false, or model_unsupported is thrown when
// strict is set.
ClosenessReport weight_closeness_report(const LengthSpectrum& spectrum, bool strict = false);

struct RatioRow {
  double T = 0.0;
  double count = 0.0;  // N_p(T), or the weighted sum
  double ratio = 0.0;
};

struct PrimeOrbitCheck {
  std::vector<RatioRow> rows;
  double rate = 0.0;
  double final_ratio = 0.0;
  double band_lo = 0.7, band_hi = 1.3;
  bool in_band = false;
  double top_quarter_distance = 0.0;     // mean |ratio - 1| over (3T/4, T]
  double second_quarter_distance = 0.0;  // mean |ratio - 1| over (T/4, T/2]
  bool drifts_toward_one = false;
  bool verdict = false;
};

// N_p(T) h T e^{-hT} on the grid T_j = j Tc / points.
PrimeOrbitCheck prime_orbit_check(const LengthSpectrum& spectrum, double h, int points = 40);
// sum over classes of length <= T of e^{U} times P T e^{-P T}, band [0.6, 1.4].
PrimeOrbitCheck prime_orbit_check_weighted(const LengthSpectrum& spectrum, const std::vector<double>& U, double P,
                                           int points = 40);

}  // namespace orbitzeta
