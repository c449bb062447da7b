#include "orbitzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex pairwise(const Complex* x, std::size_t n) {
  if (n <= 8) {
    Complex s{};
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise(x, h) + pairwise(x + h, n - h);
}

// -log(1 - x), accurate for tiny |x|.
Complex neg_log1m(Complex x) {
  if (std::abs(x) < 1e-3) return x * (1.0 + x * (0.5 + x * (1.0 / 3.0 + x * (0.25 + x * 0.2))));
  return -std::log(1.0 - x);
}

ComplexLength hyperbolic(const LengthSpectrum& sp, const ClosedGeodesic& g) {
  return {g.length / sp.length_scale, g.complex_length.theta};
}

double log_gn_weight(const LengthSpectrum& sp, const ClosedGeodesic& g) {
  ComplexLength cl = hyperbolic(sp, g);
  int n = boundary_dimension(sp.model);
  return -0.5 * n * cl.ell + log_weight_ratio(cl, sp.model, 1);
}

// Per-class log masses e^{v} used by the pole diagnostic and abscissa estimate.
std::vector<double> class_log_weights(const LengthSpectrum& sp, ZetaFamily f, const std::vector<double>& U) {
  switch (f) {
    case ZetaFamily::selberg:
      return std::vector<double>(sp.entries.size(), 0.0);
    case ZetaFamily::weighted:
      if (U.size() != sp.entries.size()) fail(ErrorCode::weight_missing, "weights do not cover the spectrum");
      return U;
    case ZetaFamily::gn:
      return gn_log_weights(sp);
  }
  return {};
}

}  // namespace

std::string to_string(ZetaFamily f) {
  switch (f) {
    case ZetaFamily::selberg: return "selberg";
    case ZetaFamily::weighted: return "weighted";
    case ZetaFamily::gn: return "gn";
  }
  return "?";
}

ZetaFamily parse_zeta_family(const std::string& s) {
  if (s == "selberg") return ZetaFamily::selberg;
  if (s == "weighted") return ZetaFamily::weighted;
  if (s == "gn") return ZetaFamily::gn;
  fail(ErrorCode::invalid_argument, "unknown zeta family '" + s + "' (selberg, weighted, gn)");
}

std::vector<double> gn_log_weights(const LengthSpectrum& sp) {
  std::vector<double> out;
  out.reserve(sp.entries.size());
  for (const auto& g : sp.entries) out.push_back(log_gn_weight(sp, g));
  return out;
}

std::vector<double> half_sbr_weights(const LengthSpectrum& sp) {
  std::vector<double> out;
  out.reserve(sp.entries.size());
  const int n = boundary_dimension(sp.model);
  for (const auto& g : sp.entries) out.push_back(-0.5 * n * g.length / sp.length_scale);
  return out;
}

ZetaEvaluator::ZetaEvaluator(const LengthSpectrum& sp, ZetaFamily family, const std::vector<double>& U,
                             const ZetaOptions& opt)
    : family_(family), opt_(opt), model_(sp.model) {
  if (!sp.certified && !opt.force)
    fail(ErrorCode::not_certified, "spectrum is not certified to its cutoff (use force to override)");
  if (!(opt.margin >= 0.0)) fail(ErrorCode::invalid_argument, "margin must be >= 0");
  if (family == ZetaFamily::weighted && U.size() != sp.entries.size())
    fail(ErrorCode::weight_missing, "weights do not cover the spectrum");
  cutoff_ = opt.cutoff < 0.0 ? sp.cutoff : std::min(opt.cutoff, sp.cutoff);

  std::vector<double> v = class_log_weights(sp, family, U);
  if (opt.abscissa) {
    abscissa_ = *opt.abscissa;
    abscissa_u_ = 0.0;
  } else {
    EstimatorOptions eo = opt.estimator;
    eo.force = eo.force || opt.force;
    PressureEstimate p = family == ZetaFamily::selberg ? entropy(sp, eo) : pressure(sp, v, eo);
    abscissa_ = p.value;
    abscissa_u_ = p.uncertainty;
  }

  for (std::size_t i = 0; i < sp.entries.size(); ++i) {
    const auto& g = sp.entries[i];
    if (!g.primitive() || g.length > cutoff_) continue;
    prims_.push_back({g.length, v[i], hyperbolic(sp, g)});
    if (family != ZetaFamily::gn && g.length > 0.0) max_rate_ = std::max(max_rate_, v[i] / g.length);
  }

  // C from unit windows over the top half of [0, cutoff].
  const double eta = abscissa_ + abscissa_u_;
  for (double t = 0.5 * cutoff_; t + 1.0 <= cutoff_ + 1e-12; t += 1.0) {
    double M = 0.0;
    for (const auto& p : prims_)
      if (p.ell >= t && p.ell < t + 1.0) M += std::exp(p.log_weight);
    growth_constant_ = std::max(growth_constant_, 2.0 * M * std::exp(-eta * t));
  }
}

Complex ZetaEvaluator::gn_series(const Primitive& p, Complex s) const {
  const int n = boundary_dimension(model_);
  Complex sum{};
  for (int k = 1; k <= 400; ++k) {
    double lp = -0.5 * n * k * p.hyp.ell + log_weight_ratio(p.hyp, model_, k);
    Complex term = std::exp(-static_cast<double>(k) * s * p.ell + lp) / static_cast<double>(k);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

Complex ZetaEvaluator::log_sum(Complex s) const {
  std::vector<Complex> terms;
  terms.reserve(prims_.size());
  for (const auto& p : prims_) {
    if (family_ == ZetaFamily::gn)
      terms.push_back(gn_series(p, s));
    else
      terms.push_back(neg_log1m(std::exp(-s * p.ell + p.log_weight)));
  }
  return pairwise(terms.data(), terms.size());
}

Complex ZetaEvaluator::log_euler_product(Complex s) const {
  if (family_ == ZetaFamily::gn)
    fail(ErrorCode::invalid_argument, "the gn family has no closed-form Euler factors");
  // Carry the product as 1 + d: far right of the abscissa the product is
  // within 1e-6 of one and storing it directly would lose the digits of d.
  Complex d{};
  for (const auto& p : prims_) {
    Complex f = -std::exp(-s * p.ell + p.log_weight);
    d += f + d * f;
  }
  double re = 0.5 * std::log1p(2.0 * d.real() + std::norm(d));
  return -Complex(re, std::atan2(d.imag(), 1.0 + d.real()));
}

double ZetaEvaluator::tail_bound(double sigma) const {
  const double eta = abscissa_ + abscissa_u_;
  if (!(sigma > eta)) return kInf;
  const double T = cutoff_;
  double rate = family_ == ZetaFamily::gn ? 0.0 : max_rate_;
  double q = std::exp((rate - sigma) * T);
  if (!(q < 1.0)) return kInf;
  double geometric = -std::expm1(eta - sigma);
  return growth_constant_ * std::exp((eta - sigma) * T) / geometric / (1.0 - q);
}

ZetaEvaluation ZetaEvaluator::evaluate(Complex s) const {
  if (!(s.real() > safe_re()))
    fail(ErrorCode::abscissa_too_close, "Re(s) = " + std::to_string(s.real()) + " is not above abscissa " +
                                            std::to_string(abscissa_) + " + margin " + std::to_string(opt_.margin));
  ZetaEvaluation e;
  e.s = s;
  e.family = family_;
  e.cutoff = cutoff_;
  e.log_value = log_sum(s);
  e.value = std::exp(e.log_value);
  e.tail_bound = tail_bound(s.real());
  return e;
}

ZetaEvaluation selberg_zeta(const LengthSpectrum& sp, Complex s, const ZetaOptions& opt) {
  return ZetaEvaluator(sp, ZetaFamily::selberg, {}, opt).evaluate(s);
}

ZetaEvaluation weighted_zeta(const LengthSpectrum& sp, const WeightTable& weights, Complex s,
                             const ZetaOptions& opt) {
  return ZetaEvaluator(sp, ZetaFamily::weighted, weights.aligned(sp), opt).evaluate(s);
}

ZetaEvaluation gn_zeta(const LengthSpectrum& sp, Complex s, const ZetaOptions& opt) {
  return ZetaEvaluator(sp, ZetaFamily::gn, {}, opt).evaluate(s);
}

double pole_diagnostic(const LengthSpectrum& sp, ZetaFamily family, double s, const std::vector<double>& U,
                       const EstimatorOptions& opt) {
  if (!sp.certified && !opt.force)
    fail(ErrorCode::not_certified, "spectrum is not certified to its cutoff (use force to override)");
  std::vector<double> v = class_log_weights(sp, family, U);
  std::vector<double> x, m;
  x.reserve(v.size());
  m.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& g = sp.entries[i];
    x.push_back(g.length);
    m.push_back(g.ell_p * std::exp(v[i] - s * g.length));
  }
  return estimate_growth(x, m, sp.cutoff, opt.growth).slope;
}

PoleLocation locate_pole(const LengthSpectrum& sp, ZetaFamily family, double lo, double hi,
                         const std::vector<double>& U, const EstimatorOptions& opt) {
  if (!(lo < hi)) fail(ErrorCode::invalid_argument, "search interval must satisfy lo < hi");
  double glo = pole_diagnostic(sp, family, lo, U, opt);
  double ghi = pole_diagnostic(sp, family, hi, U, opt);
  if (!(glo > 0.0 && ghi < 0.0))
    fail(ErrorCode::no_sign_change, "growth diagnostic does not change sign on [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]: g(lo) = " + std::to_string(glo) +
                                        ", g(hi) = " + std::to_string(ghi));
  PoleLocation p;
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    double g = pole_diagnostic(sp, family, mid, U, opt);
    (g > 0.0 ? lo : hi) = mid;
    ++p.iterations;
  }
  p.lo = lo;
  p.hi = hi;
  p.estimate = 0.5 * (lo + hi);
  std::vector<double> v = class_log_weights(sp, family, U);
  PressureEstimate pe = pressure(sp, v, opt);
  p.abscissa_estimate = pe.value;
  p.abscissa_uncertainty = pe.uncertainty;
  p.notes = "bisection on the growth rate of the smoothed density of -Z'/Z terms over [" +
            std::to_string(pe.window_lo) + ", " + std::to_string(pe.window_hi) + "]";
  return p;
}

ClosenessReport weight_closeness_report(const LengthSpectrum& sp, bool strict) {
  ClosenessReport rep;
  rep.closed_form = sp.model == Model::plane;
  if (!rep.closed_form && strict)
    fail(ErrorCode::model_unsupported, "closed-form closeness weights exist only in the plane model");
  for (const auto& g : sp.entries) {
    ClosenessRow row;
    row.word = to_string(g.canonical_word);
    ComplexLength cl = hyperbolic(sp, g);
    row.ell = cl.ell;
    row.r = std::expm1(log_weight_ratio(cl, sp.model, 1));
    if (rep.closed_form) {
      row.r_closed = std::exp(-cl.ell) / -std::expm1(-cl.ell);
      rep.max_closed_form_deviation =
          std::max(rep.max_closed_form_deviation, std::abs(row.r - row.r_closed) / std::abs(row.r_closed));
    }
    rep.C = std::max(rep.C, std::abs(row.r) * std::exp(cl.ell));
    rep.rows.push_back(std::move(row));
  }
  if (!rep.rows.empty()) {
    // C is fixed by the shortest geodesic; the scan then checks every row.
    const ClosenessRow& first = *std::min_element(rep.rows.begin(), rep.rows.end(),
                                                  [](const auto& x, const auto& y) { return x.ell < y.ell; });
    double C_short = std::abs(first.r) * std::exp(first.ell);
    rep.all_within_bound = true;
    for (auto& row : rep.rows) {
      row.bound = C_short * std::exp(-row.ell);
      if (std::abs(row.r) > row.bound * (1.0 + 1e-12)) rep.all_within_bound = false;
    }
    rep.C = C_short;
  }
  return rep;
}

namespace {

PrimeOrbitCheck trend(const LengthSpectrum& sp, const std::vector<double>& mass, double rate, int points,
                      double band_lo, double band_hi) {
  if (!(rate > 0.0)) fail(ErrorCode::insufficient_data, "growth rate must be positive");
  if (points < 8) fail(ErrorCode::insufficient_data, "prime orbit check needs >= 8 grid points");
  if (sp.entries.empty()) fail(ErrorCode::insufficient_data, "spectrum is empty");
  PrimeOrbitCheck c;
  c.rate = rate;
  c.band_lo = band_lo;
  c.band_hi = band_hi;
  const double Tc = sp.cutoff;
  std::size_t i = 0;
  double acc = 0.0;
  for (int j = 1; j <= points; ++j) {
    double T = j * Tc / points;
    while (i < sp.entries.size() && sp.entries[i].length <= T) acc += mass[i++];
    c.rows.push_back({T, acc, acc * rate * T * std::exp(-rate * T)});
  }
  c.final_ratio = c.rows.back().ratio;
  c.in_band = c.final_ratio >= band_lo && c.final_ratio <= band_hi;
  double top = 0.0, second = 0.0;
  int nt = 0, ns = 0;
  for (const auto& r : c.rows) {
    if (r.T > 0.75 * Tc) {
      top += std::abs(r.ratio - 1.0);
      ++nt;
    } else if (r.T > 0.25 * Tc && r.T <= 0.5 * Tc) {
      second += std::abs(r.ratio - 1.0);
      ++ns;
    }
  }
  c.top_quarter_distance = nt ? top / nt : 0.0;
  c.second_quarter_distance = ns ? second / ns : 0.0;
  c.drifts_toward_one = nt && ns && c.top_quarter_distance < c.second_quarter_distance;
  c.verdict = c.in_band && c.drifts_toward_one;
  return c;
}

}  // namespace

PrimeOrbitCheck prime_orbit_check(const LengthSpectrum& sp, double h, int points) {
  if (!sp.certified) fail(ErrorCode::not_certified, "prime orbit check needs a certified spectrum");
  std::vector<double> mass(sp.entries.size());
  for (std::size_t i = 0; i < mass.size(); ++i) mass[i] = sp.entries[i].primitive() ? 1.0 : 0.0;
  return trend(sp, mass, h, points, 0.7, 1.3);
}

PrimeOrbitCheck prime_orbit_check_weighted(const LengthSpectrum& sp, const std::vector<double>& U, double P,
                                           int points) {
  if (!sp.certified) fail(ErrorCode::not_certified, "prime orbit check needs a certified spectrum");
  if (U.size() != sp.entries.size()) fail(ErrorCode::weight_missing, "weights do not cover the spectrum");
  std::vector<double> mass(U.size());
  for (std::size_t i = 0; i < mass.size(); ++i) mass[i] = std::exp(U[i]);
  return trend(sp, mass, P, points, 0.6, 1.4);
}

}  // namespace orbitzeta
