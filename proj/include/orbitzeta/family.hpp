#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitzeta/expression.hpp"
#include "orbitzeta/schottky.hpp"

namespace orbitzeta {

// A one-parameter family of groups alpha -> G(alpha), read from JSON.
//
//   {"family": "symmetric_schottky", "t": "4", "theta": "0",
//    "length_scale": "1 + alpha", "model_dim": 2}
//
// or a group document whose numeric entries may be strings in alpha:
//
//   {"family": "template", "group": { ...group file fields... }}
//
// Optional "grid" (a list, or {"from", "to", "points"}) and "cutoff" fields
// supply sweep defaults.
class GroupFamily {
 public:
  static GroupFamily parse(std::string_view json);
  static GroupFamily load(const std::string& path);
  static GroupFamily symmetric(const std::string& t, const std::string& theta = "0",
                               const std::string& length_scale = "1", Model model = Model::plane);

  SchottkyGroup operator()(double alpha) const;

  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& default_grid() const noexcept { return grid_; }
  std::optional<double> default_cutoff() const noexcept { return cutoff_; }

 private:
  std::string name_;
  Model model_ = Model::plane;
  Expression t_, theta_, scale_;
  std::string template_;  // group JSON with expression leaves
  std::vector<double> grid_;
  std::optional<double> cutoff_;
};

}  // namespace orbitzeta
