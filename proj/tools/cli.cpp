#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "orbitzeta/enumerate.hpp"
#include "orbitzeta/error.hpp"
#include "orbitzeta/family.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/schottky.hpp"
#include "orbitzeta/spectral.hpp"
#include "orbitzeta/spectrum_io.hpp"
#include "orbitzeta/thermo.hpp"
#include "orbitzeta/zeta.hpp"

namespace orbitzeta::cli {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A report is a set of named scalars plus an optional table.
struct Report {
  explicit Report(std::string t) : task(std::move(t)) {}

  std::string task;
  ojson fields = ojson::object();
  std::vector<std::string> columns;
  std::vector<std::vector<ojson>> rows;
};

std::string cell(const ojson& v) {
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string render(const Report& r, bool as_json) {
  if (as_json) {
    ojson doc;
    doc["task"] = r.task;
    for (auto it = r.fields.begin(); it != r.fields.end(); ++it) doc[it.key()] = it.value();
    if (!r.columns.empty()) {
      ojson table = ojson::array();
      for (const auto& row : r.rows) {
        ojson o;
        for (std::size_t i = 0; i < r.columns.size(); ++i) o[r.columns[i]] = row[i];
        table.push_back(std::move(o));
      }
      doc["table"] = std::move(table);
    }
    return doc.dump(2) + "\n";
  }
  std::string s;
  if (r.columns.empty()) {
    s = "key,value\n";
    for (auto it = r.fields.begin(); it != r.fields.end(); ++it) s += it.key() + "," + cell(it.value()) + "\n";
    return s;
  }
  for (auto it = r.fields.begin(); it != r.fields.end(); ++it) s += "#" + it.key() + "," + cell(it.value()) + "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) s += (i ? "," : "") + r.columns[i];
  s += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + cell(row[i]);
    s += "\n";
  }
  return s;
}

struct Config {
  int workers = 0;
  bool quiet = false;
  bool json = false;
  bool force = false;
  std::string out;

  std::string group_path;
  std::string spectrum_path;
  std::string cache_dir;
  double cutoff = -1.0;
  int max_word_length = 14;
  std::size_t max_classes = 20'000'000;

  std::string task;
  std::string potential;
  double radius = 40.0;
  std::optional<double> h, delta, rate;
  double a = 1.0, b = 1.0;
  std::optional<int> n;
  std::vector<double> alphas;
  int points = 40;
  std::string zeta_family = "selberg";
  double holder = 1.0;
  double tol = 1e-6;
  int nodes_per_unit = 32;

  std::string s_re, s_im = "0";
  double margin = 0.1;
  bool locate_pole = false;
  std::optional<double> lo, hi;

  std::string family_file;
  std::string grid;
};

ResourceLimits limits_of(const Config& c) {
  ResourceLimits l;
  l.max_word_length = c.max_word_length;
  l.max_classes = c.max_classes;
  l.workers = c.workers;
  return l;
}

EstimatorOptions estimator_of(const Config& c) {
  EstimatorOptions e;
  e.force = c.force;
  return e;
}

class Runner {
 public:
  Runner(const Config& c, std::ostream& out, std::ostream& err) : c_(c), out_(out), err_(err) {}

  int validate();
  int spectrum();
  int analyze();
  int zeta();
  int sweep();

 private:
  void emit(const Report& r) {
    std::string text = render(r, c_.json);
    if (c_.out.empty())
      out_ << text;
    else
      atomic_write(c_.out, text);
  }
  void note(const std::string& msg) {
    if (!c_.quiet) err_ << "orbitzeta: " << msg << "\n";
  }

  const SchottkyGroup& group() {
    if (!group_) {
      if (c_.group_path.empty()) fail(ErrorCode::invalid_argument, "this task needs --group");
      group_.emplace(load_group(c_.group_path));
    }
    return *group_;
  }
  bool has_group() const { return !c_.group_path.empty(); }

  std::string cache_path(const SchottkyGroup& g, double T) const {
    std::string dir = c_.cache_dir;
    if (dir.empty())
      if (const char* env = std::getenv("ORBITZETA_CACHE_DIR")) dir = env;
    if (dir.empty()) return {};
    return (fs::path(dir) / (group_digest(g).substr(0, 16) + "-T" + num(T) + "-w" +
                             std::to_string(c_.max_word_length) + ".spectrum"))
        .string();
  }

  LengthSpectrum enumerate_cached(const SchottkyGroup& g, double T) {
    std::string path = cache_path(g, T);
    if (!path.empty() && fs::exists(path)) {
      try {
        LengthSpectrum sp = load_spectrum(path, g);
        if (sp.cutoff == T) return sp;
      } catch (const Error& e) {
        note("ignoring stale cache entry " + path + " (" + e.what() + ")");
      }
    }
    LengthSpectrum sp = enumerate_spectrum(g, T, limits_of(c_));
    if (!path.empty() && sp.certified) {
      std::error_code ec;
      fs::create_directories(fs::path(path).parent_path(), ec);
      save_spectrum(sp, path);
    }
    return sp;
  }

  const LengthSpectrum& spectrum_input() {
    if (spectrum_) return *spectrum_;
    if (!c_.spectrum_path.empty()) {
      spectrum_.emplace(has_group() ? load_spectrum(c_.spectrum_path, group()) : load_spectrum(c_.spectrum_path));
    } else if (has_group() && c_.cutoff > 0.0) {
      spectrum_.emplace(enumerate_cached(group(), c_.cutoff));
      if (!spectrum_->certified)
        note("spectrum is certified only to " + num(spectrum_->stats.t_certified) + " (status " +
             to_string(spectrum_->stats.status) + ")");
    } else {
      fail(ErrorCode::invalid_argument, "need --spectrum, or --group with --cutoff");
    }
    return *spectrum_;
  }

  WeightTable weights_for(const LengthSpectrum& sp, const std::string& src) {
    PotentialSpec pot = parse_potential(src);
    const SchottkyGroup* g = nullptr;
    if (pot.kind == PotentialSpec::Kind::expression) g = &group();
    QuadratureOptions q;
    q.nodes_per_unit = c_.nodes_per_unit;
    return compute_weights(sp, pot, g, q, c_.workers);
  }

  void add_estimate(Report& r, const std::string& name, const PressureEstimate& p) {
    r.fields[name] = p.value;
    r.fields["slope"] = p.slope;
    r.fields["ratio"] = p.ratio;
    r.fields["standard_error"] = p.standard_error;
    r.fields["uncertainty"] = p.uncertainty;
    r.fields["window_lo"] = p.window_lo;
    r.fields["window_hi"] = p.window_hi;
  }

  double rate_for(const LengthSpectrum& sp, ZetaFamily f, std::vector<double>* U_out = nullptr) {
    switch (f) {
      case ZetaFamily::selberg:
        return entropy(sp, estimator_of(c_)).value;
      case ZetaFamily::weighted: {
        if (c_.potential.empty()) fail(ErrorCode::invalid_argument, "the weighted family needs --potential");
        std::vector<double> U = weights_for(sp, c_.potential).aligned(sp);
        double p = pressure(sp, U, estimator_of(c_)).value;
        if (U_out) *U_out = std::move(U);
        return p;
      }
      case ZetaFamily::gn:
        return pressure(sp, gn_log_weights(sp), estimator_of(c_)).value;
    }
    return 0.0;
  }

  int task_counting(Report& r);
  int task_prime(Report& r);

  const Config& c_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<SchottkyGroup> group_;
  std::optional<LengthSpectrum> spectrum_;
};

int Runner::validate() {
  const SchottkyGroup& g = group();
  CompletenessCertificate cert = validate_ping_pong(g);
  Report r{"validate"};
  r.fields["digest"] = group_digest(g);
  r.fields["model_dim"] = static_cast<int>(g.model());
  r.fields["rank"] = g.rank();
  r.fields["length_scale"] = g.length_scale();
  r.fields["kappa"] = cert.kappa;
  r.fields["log_inverse_kappa"] = -std::log(cert.kappa);
  r.fields["additive_constant"] = cert.additive_constant;
  r.fields["min_gap"] = cert.min_gap;
  r.fields["max_word_length"] = c_.max_word_length;
  r.fields["t_certified"] = cert.t_certified(c_.max_word_length);
  emit(r);
  return kOk;
}

int Runner::spectrum() {
  const SchottkyGroup& g = group();
  auto t0 = std::chrono::steady_clock::now();
  LengthSpectrum sp = enumerate_cached(g, c_.cutoff);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!sp.certified && !c_.force) {
    err_ << "orbitzeta: cutoff " << num(c_.cutoff) << " is not certified at max word length "
         << c_.max_word_length << "; achievable T_certified = " << num(sp.stats.t_certified) << " (needs word length "
         << sp.stats.required_word_length << "; status " << to_string(sp.stats.status)
         << "). Raise --max-word-length or pass --force to keep the partial spectrum.\n";
    return kNotCertified;
  }
  save_spectrum(sp, c_.out);
  if (!sp.certified) note("writing an uncertified spectrum (--force)");
  if (!c_.quiet) {
    Report r{"spectrum"};
    r.fields["path"] = c_.out;
    r.fields["classes"] = sp.entries.size();
    r.fields["primitive"] = sp.primitive_count();
    r.fields["certified"] = sp.certified;
    r.fields["t_certified"] = sp.stats.t_certified;
    r.fields["required_word_length"] = sp.stats.required_word_length;
    r.fields["word_count"] = sp.stats.word_count;
    r.fields["status"] = to_string(sp.stats.status);
    r.fields["wall_time_s"] = wall;
    std::string text = render(r, c_.json);
    out_ << text;
  }
  return kOk;
}

int Runner::task_counting(Report& r) {
  const LengthSpectrum& sp = spectrum_input();
  std::vector<double> grid;
  for (int j = 1; j <= c_.points; ++j) grid.push_back(j * sp.cutoff / c_.points);
  r.fields["orientation"] = "oriented; unoriented counts are exactly half";
  r.columns = {"T", "N", "N_p"};
  for (const auto& p : counting_function(sp, grid)) r.rows.push_back({p.T, p.N, p.N_p});
  return kOk;
}

int Runner::task_prime(Report& r) {
  const LengthSpectrum& sp = spectrum_input();
  PrimeOrbitCheck chk;
  if (!c_.potential.empty()) {
    std::vector<double> U = weights_for(sp, c_.potential).aligned(sp);
    double P = c_.rate ? *c_.rate : pressure(sp, U, estimator_of(c_)).value;
    chk = prime_orbit_check_weighted(sp, U, P, c_.points);
    r.fields["potential"] = c_.potential;
  } else {
    double h = c_.h ? *c_.h : entropy(sp, estimator_of(c_)).value;
    chk = prime_orbit_check(sp, h, c_.points);
  }
  r.fields["rate"] = chk.rate;
  r.fields["final_ratio"] = chk.final_ratio;
  r.fields["band_lo"] = chk.band_lo;
  r.fields["band_hi"] = chk.band_hi;
  r.fields["in_band"] = chk.in_band;
  r.fields["top_quarter_distance"] = chk.top_quarter_distance;
  r.fields["second_quarter_distance"] = chk.second_quarter_distance;
  r.fields["drifts_toward_one"] = chk.drifts_toward_one;
  r.fields["verdict"] = chk.verdict ? "pass" : "fail";
  r.columns = {"T", "count", "ratio"};
  for (const auto& row : chk.rows) r.rows.push_back({row.T, row.count, row.ratio});
  return kOk;
}

int Runner::analyze() {
  Report r{c_.task};
  const std::string& t = c_.task;
  EstimatorOptions eo = estimator_of(c_);
  if (t == "entropy") {
    const LengthSpectrum& sp = spectrum_input();
    add_estimate(r, "h", entropy(sp, eo));
    r.fields["classes"] = sp.entries.size();
  } else if (t == "pressure") {
    if (c_.potential.empty()) fail(ErrorCode::invalid_argument, "--task pressure needs --potential");
    const LengthSpectrum& sp = spectrum_input();
    WeightTable w = weights_for(sp, c_.potential);
    PressureEstimate p = pressure(sp, w, eo);
    r.fields["potential"] = w.potential;
    add_estimate(r, "pressure", p);
    r.fields["negative_pressure"] = p.negative_pressure;
    r.fields["max_quadrature_error"] = w.max_error_estimate;
    PressureEstimate h = entropy(sp, eo);
    r.fields["h"] = h.value;
    r.fields["h_uncertainty"] = h.uncertainty;
    r.fields["shift"] = p.value - h.value;
    if (p.negative_pressure) note("pressure estimate is not positive on the window");
  } else if (t == "critical-exponent") {
    CriticalExponentEstimate e = critical_exponent(group(), c_.radius, limits_of(c_));
    r.fields["delta"] = e.value;
    r.fields["slope"] = e.slope;
    r.fields["ratio"] = e.ratio;
    r.fields["standard_error"] = e.standard_error;
    r.fields["uncertainty"] = e.uncertainty;
    r.fields["radius"] = e.R;
    r.fields["orbit_points"] = e.orbit_points;
  } else if (t == "entropy-vs-delta") {
    const LengthSpectrum& sp = spectrum_input();
    PressureEstimate h = entropy(sp, eo);
    CriticalExponentEstimate d = critical_exponent(group(), c_.radius, limits_of(c_));
    double diff = std::abs(h.value - d.value), combined = h.uncertainty + d.uncertainty;
    r.fields["h"] = h.value;
    r.fields["h_uncertainty"] = h.uncertainty;
    r.fields["delta"] = d.value;
    r.fields["delta_uncertainty"] = d.uncertainty;
    r.fields["difference"] = diff;
    r.fields["combined_uncertainty"] = combined;
    r.fields["verdict"] = diff <= combined ? "agree" : "disagree";
  } else if (t == "pot-check" || t == "prime-orbit") {
    task_prime(r);
  } else if (t == "bounds") {
    double h = c_.h ? *c_.h : entropy(spectrum_input(), eo).value;
    int n = c_.n ? *c_.n : (c_.spectrum_path.empty() && !has_group() ? 1 : boundary_dimension(spectrum_input().model));
    SpectralBounds s = lambda0_bounds(h, c_.a, c_.b, n);
    r.fields["h"] = s.h;
    r.fields["a"] = s.a;
    r.fields["b"] = s.b;
    r.fields["n"] = s.n;
    r.fields["lower"] = s.lower;
    r.fields["upper"] = s.upper;
    r.fields["branch"] = to_string(s.branch);
  } else if (t == "sullivan") {
    double d = c_.delta ? *c_.delta : critical_exponent(group(), c_.radius, limits_of(c_)).value;
    int n = c_.n ? *c_.n : 1;
    double l0 = sullivan_lambda0(d, n);
    r.fields["delta"] = d;
    r.fields["n"] = n;
    r.fields["lambda0"] = l0;
    SpectralBounds s = lambda0_bounds(d, 1.0, 1.0, n);
    r.fields["constant_curvature_lower_bound"] = s.lower;
    r.fields["sharp"] = l0 == s.lower;
  } else if (t == "strip") {
    ZetaFamily f = parse_zeta_family(c_.zeta_family);
    double rate = c_.rate ? *c_.rate : rate_for(spectrum_input(), f);
    ExtensionStrip s = extension_strip(f, rate, c_.a, c_.b, c_.holder);
    r.fields["family"] = to_string(f);
    r.fields["rate"] = s.rate;
    r.fields["a"] = s.a;
    r.fields["b"] = s.b;
    r.fields["holder_exponent"] = s.alpha;
    r.fields["edge_lo"] = s.edge_lo;
    r.fields["edge_hi"] = s.edge_hi;
  } else if (t == "closeness") {
    const LengthSpectrum& sp = spectrum_input();
    ClosenessReport rep = weight_closeness_report(sp);
    if (!rep.closed_form) note("space model: r computed numerically, no closed form");
    r.fields["C"] = rep.C;
    r.fields["closed_form"] = rep.closed_form;
    r.fields["max_closed_form_deviation"] = rep.max_closed_form_deviation;
    r.fields["all_within_bound"] = rep.all_within_bound;
    r.columns = {"word", "ell", "r", "r_closed", "bound"};
    for (const auto& row : rep.rows) r.rows.push_back({row.word, row.ell, row.r, row.r_closed, row.bound});
  } else if (t == "refined-counting") {
    const LengthSpectrum& sp = spectrum_input();
    double h = c_.h ? *c_.h : entropy(sp, eo).value;
    RefinedCounting rc = gn_refined_counting(sp, h, c_.alphas, c_.points);
    r.fields["h"] = h;
    r.fields["beta"] = rc.beta;
    r.fields["rms_remainder"] = rc.rms_remainder;
    r.columns = {"T", "N_p", "model", "remainder", "bound"};
    for (const auto& row : rc.rows) r.rows.push_back({row.T, row.N_p, row.model, row.remainder, row.bound});
  } else if (t == "non-arithmetic") {
    NonArithmeticityVerdict v = non_arithmeticity_check(spectrum_input(), c_.tol);
    r.fields["verdict"] = v.witness_found ? "non-arithmetic witness" : "inconclusive";
    r.fields["word_1"] = v.word_1;
    r.fields["word_2"] = v.word_2;
    r.fields["length_1"] = v.length_1;
    r.fields["length_2"] = v.length_2;
    r.fields["max_denominator"] = v.max_denominator;
    r.fields["best_p"] = v.best_p;
    r.fields["best_q"] = v.best_q;
    r.fields["best_error"] = v.best_error;
  } else if (t == "counting") {
    task_counting(r);
  } else {
    fail(ErrorCode::invalid_argument, "unknown task '" + t + "'");
  }
  emit(r);
  return kOk;
}

std::vector<double> parse_range(const std::string& spec, bool count_form) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t pos = 0;
      parts.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::invalid_argument, "bad grid spec '" + spec + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) fail(ErrorCode::invalid_argument, "grid spec must be a or a:b:" + std::string(count_form ? "points" : "step"));
  double a = parts[0], b = parts[1];
  std::vector<double> out;
  if (count_form) {
    int n = static_cast<int>(parts[2]);
    if (n < 1 || n != parts[2]) fail(ErrorCode::invalid_argument, "grid point count must be a positive integer");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  double step = parts[2];
  if (!(step > 0.0) || b < a) fail(ErrorCode::invalid_argument, "grid spec needs a <= b and step > 0");
  auto n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (n > 1'000'000) fail(ErrorCode::invalid_argument, "grid too large");
  for (long i = 0; i < n; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

int Runner::zeta() {
  const LengthSpectrum& sp = spectrum_input();
  ZetaFamily f = parse_zeta_family(c_.zeta_family);
  std::vector<double> U;
  if (f == ZetaFamily::weighted) {
    if (c_.potential.empty()) fail(ErrorCode::invalid_argument, "the weighted family needs --potential");
    U = weights_for(sp, c_.potential).aligned(sp);
  }
  if (c_.locate_pole) {
    std::vector<double> v = f == ZetaFamily::weighted ? U : std::vector<double>{};
    double centre = 0.0;
    if (!c_.lo || !c_.hi) centre = rate_for(sp, f);
    double lo = c_.lo ? *c_.lo : centre - 0.3, hi = c_.hi ? *c_.hi : centre + 0.2;
    PoleLocation p = locate_pole(sp, f, lo, hi, v, estimator_of(c_));
    Report r{"locate-pole"};
    r.fields["family"] = to_string(f);
    r.fields["estimate"] = p.estimate;
    r.fields["lo"] = p.lo;
    r.fields["hi"] = p.hi;
    r.fields["abscissa_estimate"] = p.abscissa_estimate;
    r.fields["abscissa_uncertainty"] = p.abscissa_uncertainty;
    r.fields["iterations"] = p.iterations;
    r.fields["notes"] = p.notes;
    emit(r);
    return kOk;
  }
  if (c_.s_re.empty()) fail(ErrorCode::invalid_argument, "zeta needs --s-re (or --locate-pole)");
  ZetaOptions zo;
  zo.margin = c_.margin;
  zo.force = c_.force;
  zo.estimator = estimator_of(c_);
  ZetaEvaluator ev(sp, f, U, zo);
  std::vector<double> re = parse_range(c_.s_re, false), im = parse_range(c_.s_im, false);
  for (double x : re)
    if (!(x > ev.safe_re()))
      fail(ErrorCode::abscissa_too_close, "Re(s) = " + num(x) + " is outside the safe region Re(s) > " +
                                              num(ev.safe_re()) + " (abscissa " + num(ev.abscissa()) + " + margin " +
                                              num(c_.margin) + ")");
  std::vector<Complex> s;
  for (double x : re)
    for (double y : im) s.emplace_back(x, y);
  std::vector<ZetaEvaluation> res(s.size());
  const int threads = c_.workers > 0 ? c_.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < static_cast<long>(s.size()); ++i) res[static_cast<std::size_t>(i)] = ev.evaluate(s[static_cast<std::size_t>(i)]);
  Report r{"zeta"};
  r.fields["family"] = to_string(f);
  r.fields["abscissa"] = ev.abscissa();
  r.fields["abscissa_uncertainty"] = ev.abscissa_uncertainty();
  r.fields["cutoff"] = ev.cutoff();
  r.columns = {"s_re", "s_im", "Z_re", "Z_im", "tail_bound"};
  for (const auto& e : res) r.rows.push_back({e.s.real(), e.s.imag(), e.value.real(), e.value.imag(), e.tail_bound});
  emit(r);
  return kOk;
}

int Runner::sweep() {
  GroupFamily fam = GroupFamily::load(c_.family_file);
  std::vector<double> grid = c_.grid.empty() ? fam.default_grid() : parse_range(c_.grid, true);
  double T = c_.cutoff > 0.0 ? c_.cutoff : fam.default_cutoff().value_or(-1.0);
  if (!(T > 0.0)) fail(ErrorCode::invalid_argument, "sweep needs --cutoff or a cutoff in the family file");
  SweepResult res = entropy_sweep(fam, grid, T, limits_of(c_), estimator_of(c_));
  if (res.truncated) err_ << "orbitzeta: warning: sweep truncated at " << res.truncation_reason << "\n";
  Report r{"sweep"};
  r.fields["family"] = fam.name();
  r.fields["cutoff"] = T;
  r.fields["points"] = res.alpha.size();
  r.fields["smooth"] = res.smooth;
  r.fields["max_jump"] = res.max_jump;
  r.fields["max_uncertainty"] = res.max_uncertainty;
  r.fields["truncated"] = res.truncated;
  r.columns = {"alpha", "h", "uncertainty", "dd1", "dd2"};
  for (std::size_t i = 0; i < res.alpha.size(); ++i)
    r.rows.push_back({res.alpha[i], res.h[i], res.uncertainty[i], res.dd1[i], res.dd2[i]});
  emit(r);
  if (!c_.quiet) err_ << "orbitzeta: smoothness " << (res.smooth ? "ok" : "JUMP") << ": max second difference "
                      << num(res.max_jump) << " vs 3 x max uncertainty " << num(3.0 * res.max_uncertainty) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"orbitzeta: length spectra, zeta functions and pressure for Schottky groups"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--workers", c.workers, "worker threads (0: all)")->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", c.quiet, "suppress summaries and notes");
  app.add_flag("--json", c.json, "emit JSON instead of CSV");

  auto add_limits = [&](CLI::App* s) {
    s->add_option("--max-word-length", c.max_word_length, "longest word explored")->check(CLI::Range(1, 64));
    s->add_option("--max-classes", c.max_classes, "class limit")->check(CLI::PositiveNumber);
  };
  auto add_inputs = [&](CLI::App* s) {
    auto* sp = s->add_option("--spectrum", c.spectrum_path, "spectrum file")->check(CLI::ExistingFile);
    s->add_option("--group", c.group_path, "group file");
    auto* cut = s->add_option("--cutoff", c.cutoff, "enumerate up to this length")->check(CLI::PositiveNumber);
    sp->excludes(cut);
    s->add_option("--cache-dir", c.cache_dir, "spectrum cache (default $ORBITZETA_CACHE_DIR)");
    s->add_flag("--force", c.force, "accept uncertified spectra");
    s->add_option("--out", c.out, "output path (default stdout)");
    add_limits(s);
  };

  auto* validate = app.add_subcommand("validate", "check the ping-pong certificate of a group");
  validate->add_option("--group", c.group_path, "group file")->required();
  validate->add_option("--max-word-length", c.max_word_length)->check(CLI::Range(1, 64));
  validate->add_option("--out", c.out);

  auto* spectrum = app.add_subcommand("spectrum", "enumerate the length spectrum");
  spectrum->add_option("--group", c.group_path, "group file")->required();
  spectrum->add_option("--cutoff", c.cutoff, "length cutoff T")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--out", c.out, "spectrum file to write")->required();
  spectrum->add_option("--cache-dir", c.cache_dir);
  spectrum->add_flag("--force", c.force, "write an uncertified spectrum");
  add_limits(spectrum);

  auto* analyze = app.add_subcommand("analyze", "estimators and checks on a spectrum");
  analyze->add_option("--task", c.task,
                      "entropy, pressure, critical-exponent, entropy-vs-delta, pot-check, bounds, sullivan, "
                      "strip, closeness, refined-counting, non-arithmetic, counting")
      ->required();
  add_inputs(analyze);
  analyze->add_option("--potential", c.potential, "const:c, sbr:coef, expr:<x,y expression>");
  analyze->add_option("--nodes-per-unit", c.nodes_per_unit)->check(CLI::PositiveNumber);
  analyze->add_option("--radius", c.radius, "orbit radius for the critical exponent")->check(CLI::PositiveNumber);
  analyze->add_option("--h", c.h, "entropy (default: estimated)");
  analyze->add_option("--delta", c.delta, "critical exponent (default: estimated)");
  analyze->add_option("--rate", c.rate, "abscissa or pressure for strip/pot-check");
  analyze->add_option("--a", c.a, "lower pinching constant");
  analyze->add_option("--b", c.b, "upper pinching constant");
  analyze->add_option("--n", c.n, "boundary dimension")->check(CLI::PositiveNumber);
  analyze->add_option("--alphas", c.alphas, "extra exponents for refined counting")->delimiter(',');
  analyze->add_option("--points", c.points, "grid points")->check(CLI::Range(2, 100000));
  analyze->add_option("--zeta-family", c.zeta_family, "selberg, weighted or gn");
  analyze->add_option("--holder", c.holder, "Hoelder exponent of the weighted potential");
  analyze->add_option("--tol", c.tol, "tolerance for the non-arithmeticity check");

  auto* zeta = app.add_subcommand("zeta", "evaluate a zeta function on a grid or locate its pole");
  add_inputs(zeta);
  zeta->add_option("--family", c.zeta_family, "selberg, weighted or gn");
  zeta->add_option("--potential", c.potential, "potential for the weighted family");
  zeta->add_option("--nodes-per-unit", c.nodes_per_unit)->check(CLI::PositiveNumber);
  auto* sre = zeta->add_option("--s-re", c.s_re, "a:b:step");
  zeta->add_option("--s-im", c.s_im, "a:b:step");
  zeta->add_option("--margin", c.margin, "distance kept from the abscissa")->check(CLI::NonNegativeNumber);
  auto* lp = zeta->add_flag("--locate-pole", c.locate_pole, "bracket the abscissa instead");
  zeta->add_option("--lo", c.lo);
  zeta->add_option("--hi", c.hi);
  lp->excludes(sre);

  auto* sweep = app.add_subcommand("sweep", "entropy along a one-parameter family");
  sweep->add_option("--family-file", c.family_file, "family JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--grid", c.grid, "a:b:points");
  sweep->add_option("--cutoff", c.cutoff)->check(CLI::PositiveNumber);
  sweep->add_option("--out", c.out);
  sweep->add_flag("--force", c.force);
  add_limits(sweep);

  std::vector<const char*> argv{"orbitzeta"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  Runner runner(c, out, err);
  try {
    if (*validate) return runner.validate();
    if (*spectrum) return runner.spectrum();
    if (*analyze) return runner.analyze();
    if (*zeta) return runner.zeta();
    if (*sweep) return runner.sweep();
  } catch (const Error& e) {
    err << "orbitzeta: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::not_certified: return kNotCertified;
      case ErrorCode::abscissa_too_close: return kAbscissaTooClose;
      default: return kError;
    }
  } catch (const std::exception& e) {
    err << "orbitzeta: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace orbitzeta::cli
