#include <algorithm>

#include "orbitzeta/potential.hpp"

namespace orbitzeta::reference {

WeightTable compute_weights_serial(const LengthSpectrum& spectrum, const PotentialSpec& potential,
                                   const SchottkyGroup* group, const QuadratureOptions& q) {
  WeightTable t;
  t.potential = potential.describe();
  t.nodes_per_unit = potential.kind == PotentialSpec::Kind::expression ? q.nodes_per_unit : 0;
  for (const auto& g : spectrum.entries) {
    WeightResult r = weight(potential, g, group, spectrum.model, spectrum.length_scale, q);
    t.words.push_back(to_string(g.canonical_word));
    t.values.push_back(r.U);
    t.max_error_estimate = std::max(t.max_error_estimate, r.error_estimate);
  }
  return t;
}

}  // namespace orbitzeta::reference
