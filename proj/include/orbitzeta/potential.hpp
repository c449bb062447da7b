#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orbitzeta/expression.hpp"
#include "orbitzeta/spectrum.hpp"

namespace orbitzeta {

class SchottkyGroup;

struct PotentialSpec {
  enum class Kind { constant, sbr, expression };
  Kind kind = Kind::constant;
  double coefficient = 0.0;  // the constant, or the multiple of the SBR potential
  Expression expr;           // variables x, y (point x + iy of the upper half-plane)

  std::string describe() const;
};

// Accepts "const:<c>", "sbr:<coef>", "expr:<src>" or a bare expression; bare
// expressions without variables become constants.
PotentialSpec parse_potential(std::string_view src);

struct QuadratureOptions {
  int nodes_per_unit = 32;
  double tolerance = 1e-8;  // relative change allowed under node doubling
  int max_doublings = 8;    // give up (quadrature_nonconvergent) after this many
};

struct WeightResult {
  double U = 0.0;
  double error_estimate = 0.0;
};

// U(gamma) for one class. Constants give c * length, the SBR potential gives
// coefficient * n * length / scale; expressions are integrated along the axis
// of the primitive word over one period and multiplied by k. Expressions
// need the plane model (model_unsupported otherwise).
WeightResult weight(const PotentialSpec& potential, const ClosedGeodesic& geodesic, const SchottkyGroup* group,
                    Model model, double length_scale, const QuadratureOptions& q = {});
double weight(const PotentialSpec& potential, const ClosedGeodesic& geodesic, const SchottkyGroup& group,
              const QuadratureOptions& q = {});

struct WeightTable {
  std::string potential;  // provenance
  int nodes_per_unit = 0;
  double max_error_estimate = 0.0;
  std::vector<std::string> words;  // canonical words, aligned with values
  std::vector<double> values;

  std::optional<double> find(const std::string& canonical_word) const;
  // Values aligned with the spectrum entries; throws weight_missing.
  std::vector<double> aligned(const LengthSpectrum& spectrum) const;

 private:
  mutable std::unordered_map<std::string, std::size_t> index_;
};

WeightTable compute_weights(const LengthSpectrum& spectrum, const PotentialSpec& potential,
                            const SchottkyGroup* group, const QuadratureOptions& q = {}, int workers = 0);

// Weights computed in a plain loop, for checking the parallel version.
namespace reference {
WeightTable compute_weights_serial(const LengthSpectrum& spectrum, const PotentialSpec& potential,
                                   const SchottkyGroup* group, const QuadratureOptions& q = {});
}

// CSV "canonical_word,U".
std::string weights_to_csv(const WeightTable& table);
WeightTable weights_from_csv(std::string_view csv);

}  // namespace orbitzeta
