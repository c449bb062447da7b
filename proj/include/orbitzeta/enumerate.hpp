#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "orbitzeta/schottky.hpp"
#include "orbitzeta/spectrum.hpp"

namespace orbitzeta {

struct ResourceLimits {
  int max_word_length = 14;
  std::size_t max_classes = 20'000'000;
  int workers = 0;  // 0: OpenMP default
};

// All conjugacy classes with length <= T, found by a pruned depth-first walk
// over reduced words split into independent subtrees. Output is sorted and
// does not depend on the worker count. When the word-length or class limit
// stops the walk before the certificate covers T, a partial spectrum comes
// back with certified = false and the status says which limit was hit.
LengthSpectrum enumerate_spectrum(const SchottkyGroup& group, double T, const ResourceLimits& limits = {});
LengthSpectrum enumerate_spectrum(const SchottkyGroup& group, const CompletenessCertificate& cert, double T,
                                  const ResourceLimits& limits);

struct OrbitCount {
  std::vector<double> displacements;  // sorted, metric units, identity included
  std::uint64_t word_count = 0;
};

// Displacements d(o, g o) <= R over all group elements.
OrbitCount orbit_displacements(const SchottkyGroup& group, double R, const ResourceLimits& limits = {});

struct PoincarePartial {
  double sum = 0.0;
  std::size_t count = 0;
};

// sum over elements with d(o, g o) <= R of exp(-s d).
PoincarePartial poincare_series_partial(const SchottkyGroup& group, double s, double R,
                                        const ResourceLimits& limits = {});
PoincarePartial poincare_series_partial(const OrbitCount& orbit, double s, double R);

// Pairwise summation; the result depends only on the order of the input.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

namespace reference {

// Unpruned breadth-first enumeration with ordered-map dedup; slow but easy to
// trust. Used as the oracle for the parallel kernels.
LengthSpectrum enumerate_spectrum_serial(const SchottkyGroup& group, double T, int max_word_length);
OrbitCount orbit_displacements_serial(const SchottkyGroup& group, double R, int max_word_length);

}  // namespace reference

}  // namespace orbitzeta
