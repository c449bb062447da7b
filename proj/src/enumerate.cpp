#include "orbitzeta/enumerate.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

namespace {

int thread_count(const ResourceLimits& limits) {
  return limits.workers > 0 ? limits.workers : omp_get_max_threads();
}

// Depth-first walk over reduced words below a fixed prefix. Each node carries
// the prefix product and the sum of pair bounds along the word; a child is cut
// once that sum plus the smallest pair bound exceeds the budget, since both
// the child and everything below it then lie beyond the cutoff.
template <class Visit>
class Walker {
 public:
  Walker(const SchottkyGroup& group, const CompletenessCertificate& cert, double budget, int max_len, Visit& visit)
      : group_(group), cert_(cert), budget_(budget), max_len_(max_len), min_pair_(cert.min_pair()), visit_(visit) {
    keys_.resize(static_cast<std::size_t>(max_len) + 1);
    prod_.assign(static_cast<std::size_t>(max_len) + 1, Moebius(group.model()));
    levels_.assign(static_cast<std::size_t>(max_len) + 1, 0);
  }

  // Children of the root that survive pruning.
  bool admissible_first() const { return min_pair_ <= budget_; }

  // Runs from a word given by its letter keys; the word itself is visited.
  void run(const std::vector<int>& prefix, double pair_sum, int stop_depth,
           std::vector<std::pair<std::vector<int>, double>>* emit) {
    Moebius m = group_.letter_matrix(prefix[0]);
    keys_[0] = prefix[0];
    for (std::size_t i = 1; i < prefix.size(); ++i) {
      keys_[i] = prefix[i];
      m = compose(m, group_.letter_matrix(prefix[i]));
    }
    prod_[prefix.size()] = m;
    descend(static_cast<int>(prefix.size()), pair_sum, stop_depth, emit);
  }

  const std::vector<std::uint64_t>& levels() const { return levels_; }

 private:
  void descend(int m, double pair_sum, int stop_depth, std::vector<std::pair<std::vector<int>, double>>* emit) {
    if (emit && m == stop_depth) {
      emit->push_back({std::vector<int>(keys_.begin(), keys_.begin() + m), pair_sum});
      return;
    }
    ++levels_[static_cast<std::size_t>(m)];
    visit_(keys_.data(), m, prod_[static_cast<std::size_t>(m)]);
    if (m == max_len_) return;
    int last = keys_[static_cast<std::size_t>(m - 1)];
    for (int y = 0; y < cert_.alphabet_size; ++y) {
      if (y == (last ^ 1)) continue;
      double s = pair_sum + cert_.pair(last, y);
      if (s + min_pair_ > budget_) continue;
      keys_[static_cast<std::size_t>(m)] = y;
      prod_[static_cast<std::size_t>(m + 1)] = compose(prod_[static_cast<std::size_t>(m)], group_.letter_matrix(y));
      descend(m + 1, s, stop_depth, emit);
    }
  }

  const SchottkyGroup& group_;
  const CompletenessCertificate& cert_;
  double budget_;
  int max_len_;
  double min_pair_;
  Visit& visit_;
  std::vector<int> keys_;
  std::vector<Moebius> prod_;
  std::vector<std::uint64_t> levels_;
};

struct Task {
  std::vector<int> prefix;
  double pair_sum;
};

// Splits the walk into subtrees rooted at depth `split`; shallower words are
// visited here, serially.
template <class Visit>
std::vector<Task> make_tasks(const SchottkyGroup& group, const CompletenessCertificate& cert, double budget,
                             int max_len, int split, Visit& visit, std::vector<std::uint64_t>& levels) {
  std::vector<Task> tasks;
  Walker<Visit> w(group, cert, budget, max_len, visit);
  if (!w.admissible_first()) return tasks;
  std::vector<std::pair<std::vector<int>, double>> emitted;
  for (int x = 0; x < cert.alphabet_size; ++x) w.run({x}, 0.0, split, &emitted);
  for (std::size_t m = 0; m < levels.size() && m < w.levels().size(); ++m) levels[m] += w.levels()[m];
  for (auto& [p, s] : emitted) tasks.push_back({std::move(p), s});
  return tasks;
}

double hyperbolic_ell(const Moebius& m) {
  if (m.model() == Model::plane) {
    double a = std::abs(m.trace().real()) * 0.5;
    return a > 1.0 ? 2.0 * std::acosh(a) : 0.0;
  }
  return translation_length(m).ell;
}

}  // namespace

LengthSpectrum enumerate_spectrum(const SchottkyGroup& group, double T, const ResourceLimits& limits) {
  return enumerate_spectrum(group, validate_ping_pong(group), T, limits);
}

LengthSpectrum enumerate_spectrum(const SchottkyGroup& group, const CompletenessCertificate& cert, double T,
                                  const ResourceLimits& limits) {
  if (std::isnan(T) || T < 0.0) fail(ErrorCode::invalid_argument, "cutoff must be >= 0");
  if (limits.max_word_length < 1) fail(ErrorCode::invalid_argument, "max word length must be >= 1");

  LengthSpectrum out;
  out.cutoff = T;
  out.group_digest = group_digest(group);
  out.model = group.model();
  out.length_scale = group.length_scale();
  auto& st = out.stats;
  st.max_word_length = limits.max_word_length;
  st.kappa = cert.kappa;
  st.additive_constant = cert.additive_constant;
  st.t_certified = cert.t_certified(limits.max_word_length);
  st.required_word_length = std::isfinite(T) ? cert.required_word_length(T) : std::numeric_limits<int>::max();
  const int walk_len = std::min(limits.max_word_length, std::max(1, st.required_word_length));

  const double T_h = T / group.length_scale();
  const double budget = T_h * (1.0 + 1e-9) + 1e-12;
  const int threads = thread_count(limits);
  std::atomic<std::size_t> inserted{0};
  std::atomic<bool> over_limit{false};

  auto make_visit = [&](std::unordered_set<std::string>& found) {
    return [&, set = &found, buf = std::string()](const int* keys, int m, const Moebius& prod) mutable {
      if (m >= 2 && keys[0] == (keys[m - 1] ^ 1)) return;  // not cyclically reduced
      if (over_limit.load(std::memory_order_relaxed)) return;
      double ell = hyperbolic_ell(prod);
      if (!(ell <= budget)) return;
      buf.resize(static_cast<std::size_t>(m));
      int rot[64];
      std::vector<int> big;
      int* dst = rot;
      if (m > 64) {
        big.resize(static_cast<std::size_t>(m));
        dst = big.data();
      }
      least_rotation_keys(keys, static_cast<std::size_t>(m), dst);
      for (int i = 0; i < m; ++i) buf[static_cast<std::size_t>(i)] = static_cast<char>('0' + dst[i]);
      if (set->insert(buf).second && inserted.fetch_add(1, std::memory_order_relaxed) + 1 > limits.max_classes)
        over_limit.store(true, std::memory_order_relaxed);
    };
  };

  st.level_counts.assign(static_cast<std::size_t>(walk_len) + 1, 0);
  std::unordered_set<std::string> shallow;
  auto shallow_visit = make_visit(shallow);
  const int split = std::min(walk_len, 3);
  std::vector<Task> tasks = make_tasks(group, cert, budget, walk_len, split, shallow_visit, st.level_counts);

  std::vector<std::unordered_set<std::string>> per_thread(static_cast<std::size_t>(threads));
  std::vector<std::vector<std::uint64_t>> per_levels(static_cast<std::size_t>(threads),
                                                    std::vector<std::uint64_t>(st.level_counts.size(), 0));
  const auto ntasks = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel num_threads(threads)
  {
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
    auto visit = make_visit(per_thread[tid]);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < ntasks; ++i) {
      Walker<decltype(visit)> w(group, cert, budget, walk_len, visit);
      const Task& t = tasks[static_cast<std::size_t>(i)];
      w.run(t.prefix, t.pair_sum, -1, nullptr);
      for (std::size_t m = 0; m < w.levels().size(); ++m) per_levels[tid][m] += w.levels()[m];
    }
  }

  std::vector<std::string> keys(shallow.begin(), shallow.end());
  for (std::size_t t = 0; t < per_thread.size(); ++t) {
    keys.insert(keys.end(), per_thread[t].begin(), per_thread[t].end());
    for (std::size_t m = 0; m < st.level_counts.size(); ++m) st.level_counts[m] += per_levels[t][m];
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  for (std::size_t m = 0; m < st.level_counts.size(); ++m) {
    st.word_count += st.level_counts[m];
    if (st.level_counts[m] > 0) st.deepest_level = static_cast<int>(m);
  }

  std::vector<ClosedGeodesic> entries(keys.size());
  const auto nkeys = static_cast<std::int64_t>(keys.size());
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::int64_t i = 0; i < nkeys; ++i) {
    const std::string& k = keys[static_cast<std::size_t>(i)];
    std::vector<int> letters(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) letters[j] = letter_from_key(k[j] - '0');
    entries[static_cast<std::size_t>(i)] = make_geodesic(group, Word(std::move(letters)));
  }
  for (auto& g : entries)
    if (g.length <= T) out.entries.push_back(std::move(g));
  sort_entries(out.entries);

  if (over_limit.load()) {
    st.status = EnumerationStatus::class_limit;
  } else if (st.required_word_length > limits.max_word_length) {
    st.status = EnumerationStatus::word_length_limit;
  } else {
    st.status = EnumerationStatus::complete;
  }
  out.certified = st.status == EnumerationStatus::complete;
  return out;
}

OrbitCount orbit_displacements(const SchottkyGroup& group, double R, const ResourceLimits& limits) {
  if (std::isnan(R) || R < 0.0) fail(ErrorCode::invalid_argument, "radius must be >= 0");
  CompletenessCertificate cert = validate_ping_pong(group);
  const double R_h = R / group.length_scale();
  int needed = static_cast<int>(std::ceil(R_h / std::log(1.0 / cert.kappa)));
  if (needed > limits.max_word_length)
    fail(ErrorCode::resource_exceeded, "radius " + std::to_string(R) + " needs word length " + std::to_string(needed) +
                                           " > limit " + std::to_string(limits.max_word_length));
  const int walk_len = std::max(1, needed);
  const double budget = R_h * (1.0 + 1e-9) + 1e-12;
  const double scale = group.length_scale();
  const int threads = thread_count(limits);

  auto make_visit = [&](std::vector<double>& found) {
    return [&, list = &found](const int*, int, const Moebius& prod) {
      double d = displacement(prod);
      if (d <= R_h) list->push_back(d * scale);
    };
  };

  OrbitCount out;
  out.displacements.push_back(0.0);  // identity
  out.word_count = 1;
  std::vector<std::uint64_t> levels(static_cast<std::size_t>(walk_len) + 1, 0);
  auto shallow_visit = make_visit(out.displacements);
  const int split = std::min(walk_len, 3);
  std::vector<Task> tasks = make_tasks(group, cert, budget, walk_len, split, shallow_visit, levels);

  std::vector<std::vector<double>> per_thread(static_cast<std::size_t>(threads));
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(threads), 0);
  const auto ntasks = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel num_threads(threads)
  {
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
    auto visit = make_visit(per_thread[tid]);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < ntasks; ++i) {
      Walker<decltype(visit)> w(group, cert, budget, walk_len, visit);
      const Task& t = tasks[static_cast<std::size_t>(i)];
      w.run(t.prefix, t.pair_sum, -1, nullptr);
      for (auto c : w.levels()) counts[tid] += c;
    }
  }
  for (auto c : levels) out.word_count += c;
  for (std::size_t t = 0; t < per_thread.size(); ++t) {
    out.displacements.insert(out.displacements.end(), per_thread[t].begin(), per_thread[t].end());
    out.word_count += counts[t];
  }
  std::sort(out.displacements.begin(), out.displacements.end());
  return out;
}

PoincarePartial poincare_series_partial(const OrbitCount& orbit, double s, double R) {
  std::vector<double> terms;
  for (double d : orbit.displacements) {
    if (d > R) break;
    terms.push_back(std::exp(-s * d));
  }
  return {pairwise_sum(terms), terms.size()};
}

PoincarePartial poincare_series_partial(const SchottkyGroup& group, double s, double R, const ResourceLimits& limits) {
  return poincare_series_partial(orbit_displacements(group, R, limits), s, R);
}

}  // namespace orbitzeta
