#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "orbitzeta/enumerate.hpp"
#include "orbitzeta/error.hpp"
#include "orbitzeta/expression.hpp"
#include "orbitzeta/potential.hpp"
#include "orbitzeta/thermo.hpp"

using namespace orbitzeta;

namespace {

const SchottkyGroup& ref() {
  static const SchottkyGroup g = reference_group();
  return g;
}

const LengthSpectrum& ref35() {
  static const LengthSpectrum sp = enumerate_spectrum(ref(), 35.0);
  return sp;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::invalid_argument;
}

LengthSpectrum synthetic(const std::vector<double>& lengths, double cutoff) {
  LengthSpectrum sp;
  sp.cutoff = cutoff;
  sp.certified = true;
  for (double l : lengths) {
    ClosedGeodesic g;
    g.canonical_word = parse_word("a");
    g.primitive_word = g.canonical_word;
    g.length = g.ell_p = l;
    sp.entries.push_back(g);
  }
  return sp;
}

// Lengths with counting function floor(e^{hT}/(hT)): the n-th length solves
// e^{hT}/(hT) = n.
std::vector<double> planted_lengths(double h, double T) {
  std::vector<double> out;
  auto F = [&](double t) { return std::exp(h * t) / (h * t); };
  double n_max = F(T);
  double t = 1.0 / h;  // F is increasing beyond its minimum at 1/h
  for (double n = std::ceil(F(1.0 / h)); n <= n_max; n += 1.0) {
    double lo = t, hi = T;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (F(mid) < n ? lo : hi) = mid;
    }
    t = hi;
    out.push_back(t);
  }
  return out;
}

// Integral of W along the axis of m over one period, computed on the
// semicircle (or vertical line) through the fixed points, parametrised by
// arclength from the top of the circle.
double axis_integral_oracle(const Expression& W, const Moebius& m) {
  using C = std::complex<double>;
  C a = m.a(), b = m.b(), c = m.c(), d = m.d();
  std::function<C(double)> at;
  std::function<double(C)> param;
  if (std::abs(c) < 1e-14) {
    double x0 = (b / (d - a)).real();
    at = [x0](double s) { return C(x0, std::exp(s)); };
    param = [](C z) { return std::log(z.imag()); };
  } else {
    C disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
    double p = ((a - d + disc) / (2.0 * c)).real(), q = ((a - d - disc) / (2.0 * c)).real();
    double centre = 0.5 * (p + q), r = 0.5 * std::abs(p - q);
    at = [centre, r](double s) {
      double phi = 2.0 * std::atan(std::exp(s));
      return C(centre + r * std::cos(phi), r * std::sin(phi));
    };
    param = [centre](C z) { return std::log(std::tan(0.5 * std::arg(z - centre))); };
  }
  // Start at the point nearest to i; distance along a geodesic is convex.
  auto dist = [](C z) { return std::norm(z - C(0.0, 1.0)) / z.imag(); };
  double lo = -40.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    (dist(at(m1)) < dist(at(m2)) ? hi : lo) = (dist(at(m1)) < dist(at(m2)) ? m2 : m1);
  }
  double s0 = 0.5 * (lo + hi);
  C z0 = at(s0);
  double s1 = param((a * z0 + b) / (c * z0 + d));
  const int n = 400000;
  double h = (s1 - s0) / n, s = 0.0;
  for (int i = 0; i <= n; ++i) {
    C z = at(s0 + i * h);
    double f = W.evaluate({z.real(), z.imag()});
    s += (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0)) * f;
  }
  return std::abs(h) / 3.0 * s;
}

}  // namespace

TEST_CASE("expression parsing and evaluation") {
  CHECK(Expression::parse("0", {}).is_constant());
  CHECK(Expression::parse("0", {}).evaluate(nullptr) == 0.0);
  CHECK(Expression::parse("-0.5", {}).evaluate(nullptr) == -0.5);
  Expression e = Expression::parse("sin(x)/(1+y^2)", {"x", "y"});
  CHECK(!e.is_constant());
  CHECK(e.evaluate({0.0, 1.0}) == 0.0);
  CHECK(e.evaluate({1.0, 2.0}) == doctest::Approx(std::sin(1.0) / 5.0).epsilon(1e-15));
  CHECK(Expression::parse("-2^2", {}).evaluate(nullptr) == -4.0);
  CHECK(Expression::parse("2^3^2", {}).evaluate(nullptr) == 512.0);
  CHECK(Expression::parse("1-2-3", {}).evaluate(nullptr) == -4.0);
  CHECK(Expression::parse("8/4/2", {}).evaluate(nullptr) == 1.0);
  CHECK(Expression::parse("2*(3+4)", {}).evaluate(nullptr) == 14.0);
  CHECK(Expression::parse("exp(log(3)) + sqrt(16) + abs(-1) + cos(0)", {}).evaluate(nullptr) ==
        doctest::Approx(9.0).epsilon(1e-15));
  CHECK(Expression::parse("1.5e2", {}).evaluate(nullptr) == 150.0);
  CHECK(code_of([] { Expression::parse("sin(x", {"x"}); }) == ErrorCode::parse_error);
  CHECK(code_of([] { Expression::parse("1 +", {}); }) == ErrorCode::parse_error);
  CHECK(code_of([] { Expression::parse("2 3", {}); }) == ErrorCode::parse_error);
  CHECK(code_of([] { Expression::parse("z + 1", {"x", "y"}); }) == ErrorCode::unknown_identifier);
  CHECK(code_of([] { Expression::parse("foo(1)", {}); }) == ErrorCode::unknown_identifier);
}

TEST_CASE("potential specs") {
  CHECK(parse_potential("const:0.3").kind == PotentialSpec::Kind::constant);
  CHECK(parse_potential("const:0.3").coefficient == 0.3);
  CHECK(parse_potential("sbr:-0.5").kind == PotentialSpec::Kind::sbr);
  CHECK(parse_potential("sbr:-0.5").coefficient == -0.5);
  CHECK(parse_potential("-0.5").kind == PotentialSpec::Kind::constant);
  CHECK(parse_potential("0").coefficient == 0.0);
  CHECK(parse_potential("expr:sin(x)/(1+y^2)").kind == PotentialSpec::Kind::expression);
  CHECK(parse_potential("y + 1").kind == PotentialSpec::Kind::expression);
  CHECK(parse_potential(parse_potential("sbr:-0.5").describe()).coefficient == -0.5);
  CHECK(code_of([] { parse_potential("const:x"); }) == ErrorCode::unknown_identifier);
  CHECK(code_of([] { parse_potential("w^2"); }) == ErrorCode::unknown_identifier);
}

TEST_CASE("constant and sbr weights") {
  for (const char* w : {"a", "ab", "aB", "abAB", "aaab", "abab"}) {
    ClosedGeodesic g = make_geodesic(ref(), parse_word(w));
    CHECK(weight(parse_potential("0"), g, ref()) == 0.0);
    CHECK(weight(parse_potential("const:0.7"), g, ref()) == 0.7 * g.length);
    CHECK(weight(parse_potential("sbr:1"), g, ref()) == doctest::Approx(g.length).epsilon(1e-15));
  }
  // A surface group with a generator of trace 3.
  ClosedGeodesic g;
  g.canonical_word = g.primitive_word = parse_word("a");
  g.length = g.ell_p = translation_length(Moebius(2, 1, 1, 1, Model::plane)).ell;
  CHECK(g.length == doctest::Approx(1.9248473002384139).epsilon(1e-14));
  CHECK(weight(parse_potential("sbr:1"), g, nullptr, Model::plane, 1.0).U == doctest::Approx(1.9248473002384139));
  CHECK(weight(parse_potential("sbr:1"), g, nullptr, Model::space, 1.0).U == doctest::Approx(2 * 1.9248473002384139));
  CHECK(code_of([&] { weight(parse_potential("y"), g, nullptr, Model::space, 1.0); }) == ErrorCode::model_unsupported);
}

TEST_CASE("expression weights match an independent axis integral") {
  const std::vector<std::string> W = {"y/y", "log(y)^2", "sin(x)/(1+y^2)", "x^2 + 1/(1+y)", "cos(3*x)*y"};
  for (std::string w : {"a", "b", "ab", "aB", "abAB", "aabb", "abbb"}) {
    ClosedGeodesic g = make_geodesic(ref(), parse_word(w));
    Moebius m = ref().evaluate(g.primitive_word);
    for (const auto& src : W) {
      PotentialSpec p = parse_potential(src);
      double oracle = axis_integral_oracle(p.expr, m);
      double got = weight(p, g, ref(), {64, 1e-11, 10});
      INFO(w, " ", src);
      CHECK(got == doctest::Approx(oracle).epsilon(1e-7).scale(1.0));
    }
  }
  // The axis of a runs up the imaginary axis through i, so the period
  // integral of log(y)^2 is ell^3 / 3.
  ClosedGeodesic a = make_geodesic(ref(), parse_word("a"));
  CHECK(weight(parse_potential("log(y)^2"), a, ref()) == doctest::Approx(64.0 / 3.0).epsilon(1e-9));
  CHECK(weight(parse_potential("y/y"), a, ref()) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("weight linearity and power additivity") {
  PotentialSpec w1 = parse_potential("sin(x)/(1+y^2)");
  PotentialSpec w2 = parse_potential("x^2 + y");
  PotentialSpec combo = parse_potential("2*(sin(x)/(1+y^2)) - 3*(x^2 + y)");
  QuadratureOptions q{64, 1e-11, 10};
  for (const char* w : {"ab", "aB", "abAB", "aab", "abbAB"}) {
    ClosedGeodesic g = make_geodesic(ref(), parse_word(w));
    double u1 = weight(w1, g, ref(), q), u2 = weight(w2, g, ref(), q);
    CHECK(weight(combo, g, ref(), q) == doctest::Approx(2 * u1 - 3 * u2).epsilon(1e-8));
    std::string word = w;
    for (int k = 2; k <= 3; ++k) {
      std::string pw;
      for (int i = 0; i < k; ++i) pw += word;
      ClosedGeodesic gk = make_geodesic(ref(), parse_word(pw));
      REQUIRE(gk.k == k);
      CHECK(weight(w1, gk, ref(), q) == doctest::Approx(k * u1).epsilon(1e-10));
    }
  }
}

TEST_CASE("oscillating potentials fail loudly") {
  // The axis of aaab reaches x ~ 1e5, where sin(x) oscillates faster than
  // any fixed node budget resolves.
  ClosedGeodesic g = make_geodesic(ref(), parse_word("aaab"));
  CHECK(code_of([&] { weight(parse_potential("sin(x)"), g, ref()); }) == ErrorCode::quadrature_nonconvergent);
}

TEST_CASE("weight tables") {
  LengthSpectrum sp = enumerate_spectrum(ref(), 16.0);
  PotentialSpec p = parse_potential("sin(x)/(1+y^2)");
  WeightTable par = compute_weights(sp, p, &ref(), {}, 2);
  WeightTable ser = reference::compute_weights_serial(sp, p, &ref());
  CHECK(par.values == ser.values);
  CHECK(par.words == ser.words);
  WeightTable back = weights_from_csv(weights_to_csv(par));
  CHECK(back.values == par.values);
  CHECK(back.aligned(sp) == par.values);
  back.words.pop_back();
  back.values.pop_back();
  CHECK(code_of([&] { back.aligned(sp); }) == ErrorCode::weight_missing);
  CHECK(code_of([] { weights_from_csv("word,U\na,1\n"); }) == ErrorCode::format_error);
  SchottkyGroup other = symmetric_schottky(5.0);
  CHECK(code_of([&] { compute_weights(sp, p, &other); }) == ErrorCode::digest_mismatch);
}

TEST_CASE("entropy on planted spectra") {
  LengthSpectrum sp = synthetic(planted_lengths(0.8, 16.0), 16.0);
  REQUIRE(sp.entries.size() > 1000);
  PressureEstimate h = entropy(sp);
  CHECK(h.value == doctest::Approx(0.8).epsilon(0.02 / 0.8));
  CHECK(h.uncertainty >= h.standard_error);
  CHECK(h.window_lo == 8.0);
  CHECK(h.window_hi == 16.0);
  // Doubling every length halves the growth rate.
  std::vector<double> doubled;
  for (const auto& g : sp.entries) doubled.push_back(2.0 * g.length);
  PressureEstimate h2 = entropy(synthetic(doubled, 32.0));
  CHECK(h2.value == doctest::Approx(h.value / 2.0).epsilon(1e-9));
}

TEST_CASE("entropy preconditions") {
  CHECK(code_of([] { entropy(synthetic({1, 2, 3, 4, 5}, 6.0)); }) == ErrorCode::insufficient_data);
  LengthSpectrum sp = ref35();
  sp.certified = false;
  CHECK(code_of([&] { entropy(sp); }) == ErrorCode::not_certified);
  EstimatorOptions force;
  force.force = true;
  CHECK(entropy(sp, force).value == entropy(ref35()).value);
  CHECK(code_of([&] { pressure(ref35(), std::vector<double>(3, 0.0)); }) == ErrorCode::weight_missing);
}

TEST_CASE("reference entropy and pressure identities") {
  const LengthSpectrum& sp = ref35();
  PressureEstimate h = entropy(sp);
  CHECK(h.value > 0.0);
  CHECK(h.value < 1.0);
  CHECK(h.uncertainty < 0.05);
  // Zero potential.
  WeightTable zero = compute_weights(sp, parse_potential("0"), &ref());
  CHECK(pressure(sp, zero).value == h.value);
  // Shift identity.
  for (double c : {-0.5, -0.3, 0.3, 0.5}) {
    WeightTable t = compute_weights(sp, parse_potential("const:" + std::to_string(c)), &ref());
    PressureEstimate p = pressure(sp, t);
    CHECK_MESSAGE(std::abs(p.value - h.value - c) <= p.uncertainty + h.uncertainty, c);
    CHECK(p.negative_pressure == (p.value <= 0.0));
  }
  // On a surface the SBR sandwich collapses: pressure(-sbr/2) = h - 1/2.
  PressureEstimate sbr = pressure(sp, compute_weights(sp, parse_potential("sbr:-0.5"), &ref()));
  CHECK(sbr.negative_pressure);
  auto [lo, hi] = sbr_pressure_bounds(h.value, 1.0, 1.0, 1);
  CHECK(lo == hi);
  CHECK(std::abs(sbr.value - lo) <= sbr.uncertainty + h.uncertainty);
}

TEST_CASE("pressure monotonicity") {
  LengthSpectrum sp = enumerate_spectrum(ref(), 28.0);
  // W1 <= -0.1 < 0.1 <= W2 everywhere. Both vary slowly along axes that
  // climb far from the origin, unlike sin(x).
  PotentialSpec w1 = parse_potential("0.1/(1+x^2+y^2) - 0.2");
  PotentialSpec w2 = parse_potential("0.1*y/(1+y) + 0.1");
  PressureEstimate p1 = pressure(sp, compute_weights(sp, w1, &ref()));
  PressureEstimate p2 = pressure(sp, compute_weights(sp, w2, &ref()));
  CHECK(p1.value <= p2.value + p1.uncertainty + p2.uncertainty);
  // Pressure shift for an expression potential.
  PotentialSpec w3 = parse_potential("0.1/(1+x^2+y^2) + 0.3");
  PressureEstimate p3 = pressure(sp, compute_weights(sp, w3, &ref()));
  PressureEstimate p0 = pressure(sp, compute_weights(sp, w1, &ref()));
  CHECK(std::abs(p3.value - p0.value - 0.5) <= p3.uncertainty + p0.uncertainty);
}

TEST_CASE("sbr pressure bounds") {
  auto [a, b] = sbr_pressure_bounds(0.8, 1, 1, 1);
  CHECK(a == doctest::Approx(0.3));
  CHECK(b == doctest::Approx(0.3));
  auto [c, d] = sbr_pressure_bounds(1, 1, 2, 2);
  CHECK(c == -1.0);
  CHECK(d == 0.0);
  CHECK(code_of([] { sbr_pressure_bounds(1, 2, 1, 1); }) == ErrorCode::bad_pinching);
  CHECK(code_of([] { sbr_pressure_bounds(1, 0, 1, 1); }) == ErrorCode::bad_pinching);
  CHECK(code_of([] { sbr_pressure_bounds(1, 1, 1, 0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("critical exponent") {
  std::vector<double> R, N;
  for (int i = 0; i < 40; ++i) {
    R.push_back(1.0 + 0.5 * i);
    N.push_back(3.0 * std::exp(0.5 * R.back()));
  }
  CriticalExponentEstimate e = critical_exponent_from_counts(R, N);
  CHECK(e.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(e.ratio == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(code_of([] { critical_exponent_from_counts({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}); }) ==
        ErrorCode::insufficient_data);

  CriticalExponentEstimate d4 = critical_exponent(ref(), 30.0);
  CHECK(d4.value > 0.0);
  CHECK(d4.value < 1.0);
  CHECK(d4.uncertainty > 0.0);
  CHECK(d4.radii.size() == 64);
  // More widely separated generators give a smaller exponent.
  CriticalExponentEstimate d6 = critical_exponent(symmetric_schottky(6.0), 30.0);
  CHECK(d6.value < d4.value);
}
