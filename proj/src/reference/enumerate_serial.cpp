#include <cmath>
#include <limits>
#include <map>

#include "orbitzeta/enumerate.hpp"
#include "orbitzeta/error.hpp"

namespace orbitzeta::reference {

LengthSpectrum enumerate_spectrum_serial(const SchottkyGroup& group, double T, int max_word_length) {
  CompletenessCertificate cert = validate_ping_pong(group);
  const int n = group.alphabet_size();
  LengthSpectrum out;
  out.cutoff = T;
  out.group_digest = group_digest(group);
  out.model = group.model();
  out.length_scale = group.length_scale();
  out.stats.max_word_length = max_word_length;
  out.stats.kappa = cert.kappa;
  out.stats.t_certified = cert.t_certified(max_word_length);
  out.stats.required_word_length = std::isfinite(T) ? cert.required_word_length(T) : std::numeric_limits<int>::max();
  out.stats.level_counts.assign(static_cast<std::size_t>(max_word_length) + 1, 0);

  std::map<Word, ClosedGeodesic> classes;
  std::vector<std::pair<std::vector<int>, Moebius>> level;
  for (int x = 0; x < n; ++x) level.push_back({{letter_from_key(x)}, group.letter_matrix(x)});
  for (int m = 1; m <= max_word_length && !level.empty(); ++m) {
    out.stats.level_counts[static_cast<std::size_t>(m)] = level.size();
    out.stats.word_count += level.size();
    out.stats.deepest_level = m;
    std::vector<std::pair<std::vector<int>, Moebius>> next;
    for (auto& [letters, prod] : level) {
      Word w(letters);
      if (w.is_cyclically_reduced()) {
        double ell = translation_length(prod).ell * group.length_scale();
        if (ell <= T * (1.0 + 1e-9)) {
          Word c = canonical_form(w);
          if (!classes.count(c)) classes.emplace(c, make_geodesic(group, c));
        }
      }
      if (m == max_word_length) continue;
      for (int y = 0; y < n; ++y) {
        int letter = letter_from_key(y);
        if (letter == -letters.back()) continue;
        auto l2 = letters;
        l2.push_back(letter);
        next.push_back({std::move(l2), compose(prod, group.letter_matrix(y))});
      }
    }
    level = std::move(next);
  }
  for (auto& [w, g] : classes)
    if (g.length <= T) out.entries.push_back(g);
  sort_entries(out.entries);
  out.certified = out.stats.required_word_length <= max_word_length;
  out.stats.status = out.certified ? EnumerationStatus::complete : EnumerationStatus::word_length_limit;
  return out;
}

}  // namespace orbitzeta::reference
