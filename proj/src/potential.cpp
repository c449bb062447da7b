#include "orbitzeta/potential.hpp"

#include <omp.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "orbitzeta/error.hpp"
#include "orbitzeta/schottky.hpp"

namespace orbitzeta {

namespace {

double parse_number(std::string_view s, const char* what) {
  Expression e = Expression::parse(s, {});
  double v = e.evaluate(nullptr);
  if (!std::isfinite(v)) fail(ErrorCode::non_finite_value, std::string(what) + " is not finite");
  return v;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct AxisIntegral {
  double value = 0.0;
  double magnitude = 0.0;  // integral of |W|
};

AxisIntegral integrate_axis(const Expression& e, const Axis& ax, double t0, double len, int panels) {
  // Gauss-Legendre, 8 nodes per panel; boost stores the non-negative half.
  using Quad = boost::math::quadrature::gauss<double, 8>;
  const auto& xs = Quad::abscissa();
  const auto& ws = Quad::weights();
  AxisIntegral out;
  const double h = len / panels;
  auto eval = [&](double t) {
    HyperbolicPoint q = ax.at(t);
    double w = e.evaluate({q.z.real(), q.height});
    if (!std::isfinite(w))
      fail(ErrorCode::non_finite_value, "potential '" + e.source() + "' is not finite at (" +
                                            std::to_string(q.z.real()) + ", " + std::to_string(q.height) + ")");
    return w;
  };
  for (int p = 0; p < panels; ++p) {
    const double mid = t0 + (p + 0.5) * h, half = 0.5 * h;
    double v = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (double sgn : {1.0, -1.0}) {
        if (xs[i] == 0.0 && sgn < 0.0) continue;
        double w = eval(mid + sgn * half * xs[i]);
        v += ws[i] * w;
        mag += ws[i] * std::abs(w);
      }
    }
    out.value += half * v;
    out.magnitude += half * mag;
  }
  return out;
}

}  // namespace

std::string PotentialSpec::describe() const {
  switch (kind) {
    case Kind::constant: return "const:" + g17(coefficient);
    case Kind::sbr: return "sbr:" + g17(coefficient);
    case Kind::expression: return "expr:" + expr.source();
  }
  return "";
}

PotentialSpec parse_potential(std::string_view src) {
  PotentialSpec p;
  auto starts = [&](std::string_view prefix) { return src.substr(0, prefix.size()) == prefix; };
  if (starts("const:")) {
    p.kind = PotentialSpec::Kind::constant;
    p.coefficient = parse_number(src.substr(6), "constant");
    return p;
  }
  if (starts("sbr:")) {
    p.kind = PotentialSpec::Kind::sbr;
    p.coefficient = parse_number(src.substr(4), "SBR coefficient");
    return p;
  }
  if (starts("expr:")) src = src.substr(5);
  Expression e = Expression::parse(src, {"x", "y"});
  if (e.is_constant()) {
    p.kind = PotentialSpec::Kind::constant;
    p.coefficient = e.evaluate(nullptr);
    if (!std::isfinite(p.coefficient)) fail(ErrorCode::non_finite_value, "constant potential is not finite");
    return p;
  }
  p.kind = PotentialSpec::Kind::expression;
  p.expr = std::move(e);
  return p;
}

WeightResult weight(const PotentialSpec& potential, const ClosedGeodesic& g, const SchottkyGroup* group, Model model,
                    double length_scale, const QuadratureOptions& q) {
  switch (potential.kind) {
    case PotentialSpec::Kind::constant: return {potential.coefficient * g.length, 0.0};
    case PotentialSpec::Kind::sbr:
      return {potential.coefficient * boundary_dimension(model) * g.length / length_scale, 0.0};
    case PotentialSpec::Kind::expression: break;
  }
  if (model != Model::plane)
    fail(ErrorCode::model_unsupported, "expression potentials are defined on the upper half-plane only");
  if (!group) fail(ErrorCode::invalid_argument, "expression potentials need the group to locate axes");
  if (q.nodes_per_unit < 1) fail(ErrorCode::invalid_argument, "nodes per unit length must be >= 1");
  Axis ax = axis(group->evaluate(g.primitive_word));
  const double len = ax.length.ell;
  const double t0 = ax.foot_of_origin();
  int panels = std::max(1, static_cast<int>(std::ceil(q.nodes_per_unit * len / 8.0)));
  // Double the node count until two successive rules agree; axes that climb
  // far from the origin can need several rounds for oscillating integrands.
  AxisIntegral coarse = integrate_axis(potential.expr, ax, t0, len, panels);
  AxisIntegral fine = integrate_axis(potential.expr, ax, t0, len, 2 * panels);
  double diff = std::abs(fine.value - coarse.value);
  double scale = std::max(std::abs(fine.value), fine.magnitude);
  for (int round = 1; diff > q.tolerance * scale && round < q.max_doublings; ++round) {
    panels *= 2;
    coarse = fine;
    fine = integrate_axis(potential.expr, ax, t0, len, 2 * panels);
    diff = std::abs(fine.value - coarse.value);
    scale = std::max(std::abs(fine.value), fine.magnitude);
  }
  if (diff > q.tolerance * scale)
    fail(ErrorCode::quadrature_nonconvergent, "node doubling changed the integral along " + to_string(g.primitive_word) +
                                                  " by " + std::to_string(diff / scale) + " (relative)");
  double factor = g.k * length_scale;
  return {factor * fine.value, factor * diff};
}

double weight(const PotentialSpec& potential, const ClosedGeodesic& geodesic, const SchottkyGroup& group,
              const QuadratureOptions& q) {
  return weight(potential, geodesic, &group, group.model(), group.length_scale(), q).U;
}

std::optional<double> WeightTable::find(const std::string& canonical_word) const {
  if (index_.size() != words.size()) {
    index_.clear();
    for (std::size_t i = 0; i < words.size(); ++i) index_.emplace(words[i], i);
  }
  auto it = index_.find(canonical_word);
  if (it == index_.end()) return std::nullopt;
  return values[it->second];
}

std::vector<double> WeightTable::aligned(const LengthSpectrum& spectrum) const {
  std::vector<double> out(spectrum.entries.size());
  bool same_order = words.size() == spectrum.entries.size();
  for (std::size_t i = 0; same_order && i < words.size(); ++i)
    same_order = words[i] == to_string(spectrum.entries[i].canonical_word);
  if (same_order) return values;
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::string w = to_string(spectrum.entries[i].canonical_word);
    auto v = find(w);
    if (!v) fail(ErrorCode::weight_missing, "no weight for class " + w);
    out[i] = *v;
  }
  return out;
}

WeightTable compute_weights(const LengthSpectrum& spectrum, const PotentialSpec& potential, const SchottkyGroup* group,
                            const QuadratureOptions& q, int workers) {
  if (group && group_digest(*group) != spectrum.group_digest)
    fail(ErrorCode::digest_mismatch, "weights requested for a spectrum of a different group");
  const auto n = static_cast<std::int64_t>(spectrum.entries.size());
  WeightTable t;
  t.potential = potential.describe();
  t.nodes_per_unit = potential.kind == PotentialSpec::Kind::expression ? q.nodes_per_unit : 0;
  t.words.resize(static_cast<std::size_t>(n));
  t.values.resize(static_cast<std::size_t>(n));
  std::vector<double> errs(static_cast<std::size_t>(n), 0.0);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  // Exceptions may not cross an OpenMP region; keep the first one and rethrow.
  std::exception_ptr first;
#pragma omp parallel for num_threads(threads) schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      const auto& g = spectrum.entries[k];
      WeightResult r = weight(potential, g, group, spectrum.model, spectrum.length_scale, q);
      t.words[k] = to_string(g.canonical_word);
      t.values[k] = r.U;
      errs[k] = r.error_estimate;
    } catch (...) {
#pragma omp critical(orbitzeta_weights)
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
  for (double e : errs) t.max_error_estimate = std::max(t.max_error_estimate, e);
  return t;
}

std::string weights_to_csv(const WeightTable& table) {
  std::ostringstream os;
  os << "canonical_word,U\n";
  for (std::size_t i = 0; i < table.words.size(); ++i) os << table.words[i] << ',' << g17(table.values[i]) << '\n';
  return os.str();
}

WeightTable weights_from_csv(std::string_view csv) {
  WeightTable t;
  std::istringstream is{std::string(csv)};
  std::string line;
  if (!std::getline(is, line) || line != "canonical_word,U") fail(ErrorCode::format_error, "missing 'canonical_word,U' header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorCode::format_error, "weight row without a comma");
    std::string w = line.substr(0, comma);
    parse_word(w);
    char* end = nullptr;
    std::string num = line.substr(comma + 1);
    double v = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size()) fail(ErrorCode::format_error, "bad weight value '" + num + "'");
    t.words.push_back(w);
    t.values.push_back(v);
  }
  return t;
}

}  // namespace orbitzeta
