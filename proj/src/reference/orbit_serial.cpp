#include <algorithm>

#include "orbitzeta/enumerate.hpp"

namespace orbitzeta::reference {

OrbitCount orbit_displacements_serial(const SchottkyGroup& group, double R, int max_word_length) {
  const int n = group.alphabet_size();
  const double scale = group.length_scale();
  OrbitCount out;
  out.displacements.push_back(0.0);
  out.word_count = 1;
  std::vector<std::pair<int, Moebius>> level;
  for (int x = 0; x < n; ++x) level.push_back({x, group.letter_matrix(x)});
  for (int m = 1; m <= max_word_length && !level.empty(); ++m) {
    std::vector<std::pair<int, Moebius>> next;
    for (auto& [last, prod] : level) {
      ++out.word_count;
      double d = displacement(prod) * scale;
      if (d <= R) out.displacements.push_back(d);
      if (m == max_word_length) continue;
      for (int y = 0; y < n; ++y)
        if (y != (last ^ 1)) next.push_back({y, compose(prod, group.letter_matrix(y))});
    }
    level = std::move(next);
  }
  std::sort(out.displacements.begin(), out.displacements.end());
  return out;
}

}  // namespace orbitzeta::reference
