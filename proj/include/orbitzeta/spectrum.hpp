#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitzeta/moebius.hpp"
#include "orbitzeta/word.hpp"

namespace orbitzeta {

class SchottkyGroup;

// One conjugacy class, i.e. one oriented closed geodesic.
struct ClosedGeodesic {
  Word canonical_word;
  Word primitive_word;
  int k = 1;
  double length = 0.0;  // k * ell_p, in metric units
  double ell_p = 0.0;   // primitive length, in metric units
  ComplexLength complex_length;  // (length, k * theta_p mod 2 pi)
  Complex trace{};

  bool primitive() const noexcept { return k == 1; }

  friend bool operator==(const ClosedGeodesic&, const ClosedGeodesic&) = default;
};

enum class EnumerationStatus { complete, word_length_limit, class_limit };

struct EnumerationStats {
  std::uint64_t word_count = 0;        // reduced words visited
  int max_word_length = 0;             // limit used
  int deepest_level = 0;               // longest word actually visited
  std::vector<std::uint64_t> level_counts;  // index m = words of length m
  double kappa = 0.0;
  double additive_constant = 0.0;
  double t_certified = 0.0;
  int required_word_length = 0;
  EnumerationStatus status = EnumerationStatus::complete;

  friend bool operator==(const EnumerationStats&, const EnumerationStats&) = default;
};

std::string to_string(EnumerationStatus s);
EnumerationStatus parse_enumeration_status(const std::string& s);

struct LengthSpectrum {
  std::vector<ClosedGeodesic> entries;  // sorted by length, then canonical word
  double cutoff = 0.0;
  bool certified = false;
  std::string group_digest;
  Model model = Model::plane;
  double length_scale = 1.0;
  EnumerationStats stats;

  std::size_t primitive_count() const;
  // Lengths in hyperbolic units (curvature -1).
  double hyperbolic_length(const ClosedGeodesic& g) const { return g.length / length_scale; }

  friend bool operator==(const LengthSpectrum&, const LengthSpectrum&) = default;
};

void sort_entries(std::vector<ClosedGeodesic>& entries);

// Builds a ClosedGeodesic from any nonempty word of the group: canonical form,
// primitive root and lengths recomputed from the canonical product.
ClosedGeodesic make_geodesic(const SchottkyGroup& group, const Word& w);

struct CountPoint {
  double T = 0.0;
  std::uint64_t N = 0;
  std::uint64_t N_p = 0;
};

// Throws cutoff_exceeded for grid values above the spectrum cutoff.
std::vector<CountPoint> counting_function(const LengthSpectrum& spectrum, const std::vector<double>& grid);

struct NonArithmeticityVerdict {
  bool witness_found = false;
  double length_1 = 0.0;
  double length_2 = 0.0;
  std::string word_1, word_2;
  std::int64_t max_denominator = 0;
  double best_error = 0.0;  // min |ratio - p/q| over q <= max_denominator
  std::int64_t best_p = 0, best_q = 0;
};

// |x - p/q| minimised over q <= max_q, via convergents and semiconvergents.
struct RationalApprox {
  std::int64_t p = 0, q = 1;
  double error = 0.0;
};
RationalApprox best_rational_approximation(double x, std::int64_t max_q);

// Looks for a pair of primitive lengths whose ratio has no rational
// approximation p/q with q <= floor(0.125 / sqrt(tol)) within tol. Finite data
// never proves arithmeticity, so the only verdicts are witness / inconclusive.
// Throws too_few_geodesics with fewer than two distinct primitive lengths.
NonArithmeticityVerdict non_arithmeticity_check(const LengthSpectrum& spectrum, double tol = 1e-6);

}  // namespace orbitzeta
