#pragma once

// Schottky groups: generators, ping-pong disks, completeness certificates and
// the group file format.

#include <string>
#include <string_view>
#include <vector>

#include "orbitzeta/moebius.hpp"
#include "orbitzeta/sphere.hpp"
#include "orbitzeta/word.hpp"

namespace orbitzeta {

// Letter indices: a letter l maps to letter_key(l) in 0..2r-1 and the
// inverse letter has index ^ 1.
struct BoundaryDisk {
  int letter = 0;
  Complex center{};
  double radius = 0.0;
  bool exterior = false;  // the outside of the circle (contains inf)
};

class SchottkyGroup {
 public:
  // Throws invalid_group on rank < 2, mixed models or a malformed disk list.
  // The length scale rescales the metric to curvature -1/scale^2, which
  // multiplies every length and displacement by scale.
  SchottkyGroup(std::vector<Moebius> generators, std::vector<BoundaryDisk> disks, double length_scale = 1.0);

  int rank() const noexcept { return static_cast<int>(generators_.size()); }
  int alphabet_size() const noexcept { return 2 * rank(); }
  Model model() const noexcept { return model_; }
  double length_scale() const noexcept { return length_scale_; }

  const std::vector<Moebius>& generators() const noexcept { return generators_; }
  const std::vector<BoundaryDisk>& disks() const noexcept { return disks_; }

  // By letter index (0..2r-1).
  const Moebius& letter_matrix(int index) const { return letters_[static_cast<std::size_t>(index)]; }
  const BoundaryDisk& letter_disk(int index) const { return disk_by_index_[static_cast<std::size_t>(index)]; }
  const Cap& letter_cap(int index) const { return caps_[static_cast<std::size_t>(index)]; }

  Moebius evaluate(const Word& w) const;

 private:
  std::vector<Moebius> generators_;
  std::vector<BoundaryDisk> disks_;
  std::vector<Moebius> letters_;
  std::vector<BoundaryDisk> disk_by_index_;
  std::vector<Cap> caps_;
  Model model_ = Model::plane;
  double length_scale_ = 1.0;
};

struct CompletenessCertificate {
  int alphabet_size = 0;
  // log(1/kappa_{x,y}) for letter indices x, y with y != x^1; the sup of the
  // spherical derivative of x over the disk of y is kappa_{x,y}.
  std::vector<double> pair_log_bound;
  double kappa = 0.0;         // max over admissible pairs
  double additive_constant = 0.0;
  double min_gap = 0.0;       // smallest angular gap between disks
  double length_scale = 1.0;

  double pair(int x, int y) const { return pair_log_bound[static_cast<std::size_t>(x * alphabet_size + y)]; }
  double min_pair() const;
  // Largest cutoff guaranteed complete after exploring words up to length L.
  double t_certified(int word_length) const;
  // Smallest word length whose certified cutoff reaches T.
  int required_word_length(double T) const;
};

// Checks disjointness and the mapping property x(outside D_{x^-1}) in D_x
// through exact cap images plus boundary sampling, then derives the
// contraction constants. Throws degenerate_disks or ping_pong_violation.
CompletenessCertificate validate_ping_pong(const SchottkyGroup& group);

// Hex SHA-256 over the model, the length scale and the generator entries at
// 15 significant digits.
std::string group_digest(const SchottkyGroup& group);

SchottkyGroup group_from_json(std::string_view text);
std::string group_to_json(const SchottkyGroup& group);
SchottkyGroup load_group(const std::string& path);

// Two-generator group: A = diag(e^{(t + i theta)/2}, e^{-(t + i theta)/2}) and
// B = R A R^-1 with R(z) = (z - 1)/(z + 1), the quarter turn about the
// origin. Disks sit on the circles |z| = e^{+-t/2} and their R-images.
// theta != 0 requires the space model.
SchottkyGroup symmetric_schottky(double t, double theta = 0.0, double length_scale = 1.0,
                                 Model model = Model::plane);

// The default reference group, t = 4 in the plane.
SchottkyGroup reference_group();

std::string letter_name(int index);
int letter_index_from_name(std::string_view name, int rank);

}  // namespace orbitzeta
