#include <doctest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <fstream>

#include "orbitzeta/enumerate.hpp"
#include "orbitzeta/error.hpp"
#include "orbitzeta/family.hpp"
#include "orbitzeta/spectral.hpp"
#include "orbitzeta/thermo.hpp"

using namespace orbitzeta;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::invalid_argument;
}

double li_oracle(double x) { return boost::math::expint(std::log(x)) - boost::math::expint(std::log(2.0)); }

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("spectral bottom bounds") {
  SpectralBounds s = lambda0_bounds(0.8, 1, 1, 1);
  CHECK(s.lower == doctest::Approx(0.16));
  CHECK(s.upper == doctest::Approx(0.25));
  CHECK(s.branch == SpectralBranch::supercritical);
  SpectralBounds t = lambda0_bounds(0.4, 1, 1, 1);
  CHECK(t.lower == doctest::Approx(0.25));
  CHECK(t.upper == doctest::Approx(0.25));
  CHECK(t.branch == SpectralBranch::subcritical);
  CHECK(to_string(t.branch) == "subcritical");
  SpectralBounds u = lambda0_bounds(1.5, 1, 2, 2);
  CHECK(u.lower == doctest::Approx(1.5 * 0.5));
  CHECK(u.upper == doctest::Approx(4.0));
  CHECK(code_of([] { lambda0_bounds(0.8, 2, 1, 1); }) == ErrorCode::bad_pinching);
  CHECK(code_of([] { lambda0_bounds(0.8, -1, 1, 1); }) == ErrorCode::bad_pinching);
  CHECK(code_of([] { lambda0_bounds(0.8, 1, 1, 0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("lower bound is continuous across the junction") {
  for (auto [a, n] : {std::pair{1.0, 1}, std::pair{0.7, 2}, std::pair{1.3, 3}}) {
    double j = n * a / 2.0;
    double below = lambda0_bounds(j - 1e-9, a, a + 1, n).lower;
    double above = lambda0_bounds(j + 1e-9, a, a + 1, n).lower;
    CHECK(below == doctest::Approx((n * a) * (n * a) / 4.0).epsilon(1e-12));
    CHECK(std::abs(above - below) < 1e-8);
  }
  // The upper bound always dominates the lower one.
  for (double h = 0.05; h < 3.0; h += 0.05) {
    SpectralBounds b = lambda0_bounds(h, 1.0, 1.5, 2);
    CHECK(b.lower <= b.upper);
  }
}

TEST_CASE("sullivan relation") {
  CHECK(sullivan_lambda0(0.8, 1) == doctest::Approx(0.16));
  CHECK(sullivan_lambda0(0.5, 1) == doctest::Approx(0.25));
  CHECK(sullivan_lambda0(0.3, 1) == doctest::Approx(0.25));
  CHECK(sullivan_lambda0(1.5, 2) == doctest::Approx(0.75));
  for (double d = 0.51; d < 1.0; d += 0.03) CHECK(sullivan_lambda0(d, 1) == lambda0_bounds(d, 1, 1, 1).lower);
}

TEST_CASE("logarithmic integral") {
  CHECK(li(1.0) == 0.0);
  CHECK(li(0.5) == 0.0);
  CHECK(li(2.0) == 0.0);
  CHECK(li(1.5) < 0.0);
  for (double x : {1.05, 1.5, 1.99, 2.5, 3.0, 10.0, 100.0, 1e4, 1e8, 1e15, 1e30})
    CHECK_MESSAGE(li(x) == doctest::Approx(li_oracle(x)).epsilon(1e-10), x);
  CHECK(li(std::exp(8.0)) == doctest::Approx(439.334735754721).epsilon(1e-12));
  // Asymptotic series e^{u}/u (1 + 1/u + 2/u^2) within 2% for u = hT >= 8.
  for (double u : {8.0, 10.0, 15.0, 30.0}) {
    double asym = std::exp(u) / u * (1.0 + 1.0 / u + 2.0 / (u * u));
    CHECK(std::abs(li(std::exp(u)) / asym - 1.0) < 0.02);
  }
  double prev = li(1.01);
  for (double x = 1.1; x < 50.0; x *= 1.2) {
    CHECK(li(x) > prev);
    prev = li(x);
  }
}

TEST_CASE("refined counting on planted data") {
  std::vector<double> T, one, two;
  for (int j = 1; j <= 40; ++j) {
    double t = 0.5 * j;
    T.push_back(t);
    one.push_back(std::round(li(std::exp(0.8 * t))));
    two.push_back(std::round(li(std::exp(0.8 * t)) + li(std::exp(0.6 * t))));
  }
  RefinedCounting r = gn_refined_counting(T, one, 0.8, {}, 1);
  CHECK(r.beta == doctest::Approx(0.5 * (0.5 + 0.8)));
  for (const auto& row : r.rows) {
    CHECK(std::abs(row.remainder) <= 1.0);
    CHECK(row.model == doctest::Approx(li(std::exp(0.8 * row.T))));
    CHECK(row.bound == doctest::Approx(std::exp(r.beta * row.T) / row.T));
  }
  RefinedCounting plain = gn_refined_counting(T, two, 0.8, {}, 1);
  RefinedCounting second = gn_refined_counting(T, two, 0.8, {0.6}, 1);
  CHECK(second.rms_remainder < plain.rms_remainder);
  CHECK(second.rms_remainder <= 1.0);
  CHECK(gn_refined_counting(T, two, 0.8, {0.6}, 2).beta == doctest::Approx(2.0 / 3.0 * 1.3));
  CHECK(code_of([] { gn_refined_counting({}, {}, 0.8, {}, 1); }) == ErrorCode::insufficient_data);
}

TEST_CASE("refined counting on the reference spectrum") {
  LengthSpectrum sp = enumerate_spectrum(reference_group(), 30.0);
  double h = entropy(sp).value;
  RefinedCounting r = gn_refined_counting(sp, h, {}, 30);
  REQUIRE(r.rows.size() == 30);
  for (const auto& row : r.rows) {
    CHECK(row.N_p == static_cast<double>(counting_function(sp, {row.T})[0].N_p));
    CHECK(row.remainder == doctest::Approx(row.N_p - row.model));
  }
}

TEST_CASE("extension strips") {
  ExtensionStrip s = extension_strip(ZetaFamily::selberg, 0.8, 1, 1);
  CHECK(s.edge_lo == doctest::Approx(0.3));
  CHECK(s.edge_hi == doctest::Approx(0.3));
  ExtensionStrip g = extension_strip(ZetaFamily::gn, 0.3, 1, 1);
  CHECK(g.edge_lo == doctest::Approx(-0.2));
  CHECK(g.alpha == 1.0);
  ExtensionStrip w = extension_strip(ZetaFamily::weighted, 0.4, 1, 2, 1.0);
  CHECK(w.edge_lo == doctest::Approx(0.4 - 1.0));
  CHECK(w.edge_hi == doctest::Approx(0.4 - 0.5));
  ExtensionStrip g2 = extension_strip(ZetaFamily::gn, 0.3, 1, 4);
  CHECK(g2.alpha == doctest::Approx(0.5));
  CHECK(g2.edge_lo == doctest::Approx(0.3 - std::min(4.0 / 4.0, 2.0)));
  CHECK(g2.edge_hi == doctest::Approx(0.3 - std::min(1.0 / 4.0, 0.5)));
  CHECK(code_of([] { extension_strip(ZetaFamily::selberg, 0.8, 2, 1); }) == ErrorCode::bad_pinching);
}

TEST_CASE("group family files") {
  GroupFamily f = GroupFamily::parse(R"({"family": "symmetric_schottky", "t": "4", "length_scale": "1 + alpha",
                                         "grid": {"from": 0, "to": 0.3, "points": 7}, "cutoff": 30})");
  CHECK(f.default_grid().size() == 7);
  CHECK(f.default_grid().back() == doctest::Approx(0.3));
  CHECK(f.default_cutoff() == 30.0);
  CHECK(group_digest(f(0.5)) == group_digest(symmetric_schottky(4.0, 0.0, 1.5)));
  CHECK(group_digest(f(0.0)) == group_digest(reference_group()));

  // A template over the reference group document.
  std::string doc = group_to_json(reference_group());
  doc = replace_all(doc, "\"length_scale\": 1.0", "\"length_scale\": \"1 + 2*alpha\"");
  GroupFamily t = GroupFamily::parse(R"({"family": "template", "grid": [0, 0.5, 1], "group": )" + doc + "}");
  CHECK(t.default_grid() == std::vector<double>{0, 0.5, 1});
  CHECK(group_digest(t(0.5)) == group_digest(symmetric_schottky(4.0, 0.0, 2.0)));

  CHECK(code_of([] { GroupFamily::parse("{"); }) == ErrorCode::format_error);
  CHECK(code_of([] { GroupFamily::parse(R"({"family": "circle"})"); }) == ErrorCode::format_error);
  CHECK(code_of([] { GroupFamily::parse(R"({"family": "symmetric_schottky", "t": "4 + beta"})"); }) ==
        ErrorCode::unknown_identifier);
  CHECK(code_of([] { GroupFamily::load("/nonexistent/family.json"); }) == ErrorCode::io_error);
}

TEST_CASE("entropy sweep recovers the length scaling law") {
  GroupFamily f = GroupFamily::symmetric("4", "0", "1 + alpha");
  std::vector<double> grid;
  for (int i = 0; i < 7; ++i) grid.push_back(0.05 * i);
  SweepResult r = entropy_sweep(f, grid, 35.0);
  REQUIRE(r.h.size() == 7);
  CHECK(!r.truncated);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double expected = r.h[0] / (1.0 + grid[i]);
    CHECK(std::abs(r.h[i] - expected) <= r.uncertainty[i] + r.uncertainty[0]);
    if (i) CHECK(r.h[i] < r.h[i - 1]);
  }
  CHECK(r.smooth);
  CHECK(r.max_jump <= 3.0 * r.max_uncertainty);
  // Divided differences recomputed from the values.
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    CHECK(r.dd1[i] == doctest::Approx((r.h[i + 1] - r.h[i]) / (grid[i + 1] - grid[i])));
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    CHECK(r.jump[i] == doctest::Approx(std::abs(r.h[i - 1] - 2 * r.h[i] + r.h[i + 1])));
  // Fixed protocol, no randomness.
  SweepResult again = entropy_sweep(f, grid, 35.0);
  CHECK(again.h == r.h);
}

TEST_CASE("constant family sweep") {
  GroupFamily f = GroupFamily::symmetric("4 + 0*alpha");
  std::vector<double> grid{0, 1, 2, 3, 4, 5, 6};
  SweepResult r = entropy_sweep(f, grid, 30.0);
  for (double h : r.h) CHECK(h == r.h[0]);
  CHECK(r.max_jump == 0.0);
  CHECK(r.smooth);
}

TEST_CASE("sweep truncation and preconditions") {
  GroupFamily f = GroupFamily::symmetric("4 - 2.5*alpha");
  std::vector<double> grid{0, 0.1, 0.2, 0.3, 0.4, 0.5, 1.0};
  ResourceLimits lim;
  lim.max_word_length = 40;
  SweepResult r = entropy_sweep(f, grid, 20.0, lim);
  CHECK(r.truncated);
  CHECK(!r.truncation_reason.empty());
  CHECK(r.h.size() == 6);
  CHECK(r.alpha.back() == 0.5);
  // Closer generators give more entropy.
  for (std::size_t i = 1; i < r.h.size(); ++i) CHECK(r.h[i] > r.h[i - 1]);
  CHECK(code_of([&] { entropy_sweep(f, {0, 0.1, 0.2}, 12.0); }) == ErrorCode::insufficient_data);
  CHECK(code_of([&] { entropy_sweep(f, {0, 0.1, 0.2, 0.2, 0.3, 0.4, 0.5}, 12.0); }) == ErrorCode::invalid_argument);
}
