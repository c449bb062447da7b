#include "orbitzeta/family.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

namespace {

using nlohmann::json;

Expression alpha_expr(const json& v, const char* field) {
  if (v.is_number()) return Expression::parse(std::to_string(v.get<double>()), {"alpha"});
  if (!v.is_string()) fail(ErrorCode::format_error, std::string("family field '") + field + "' must be a string");
  return Expression::parse(v.get<std::string>(), {"alpha"});
}

// Replaces string leaves by their value at alpha; "letter" fields stay.
void substitute(json& node, double alpha, const std::string& key = {}) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) substitute(it.value(), alpha, it.key());
  } else if (node.is_array()) {
    for (auto& v : node) substitute(v, alpha, key);
  } else if (node.is_string() && key != "letter") {
    double v = Expression::parse(node.get<std::string>(), {"alpha"}).evaluate({alpha});
    if (!std::isfinite(v)) fail(ErrorCode::non_finite_value, "template entry '" + node.get<std::string>() +
                                                                 "' is not finite at alpha = " + std::to_string(alpha));
    node = v;
  }
}

}  // namespace

GroupFamily GroupFamily::symmetric(const std::string& t, const std::string& theta, const std::string& length_scale,
                                   Model model) {
  GroupFamily f;
  f.name_ = "symmetric_schottky";
  f.model_ = model;
  f.t_ = Expression::parse(t, {"alpha"});
  f.theta_ = Expression::parse(theta, {"alpha"});
  f.scale_ = Expression::parse(length_scale, {"alpha"});
  return f;
}

GroupFamily GroupFamily::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::format_error, std::string("family file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("family") || !doc["family"].is_string())
    fail(ErrorCode::format_error, "family file needs a string field 'family'");
  GroupFamily f;
  const std::string name = doc["family"].get<std::string>();
  try {
    if (name == "symmetric_schottky") {
      f.name_ = name;
      int dim = doc.value("model_dim", 2);
      if (dim != 2 && dim != 3) fail(ErrorCode::format_error, "model_dim must be 2 or 3");
      f.model_ = static_cast<Model>(dim);
      if (!doc.contains("t")) fail(ErrorCode::format_error, "symmetric_schottky family needs 't'");
      f.t_ = alpha_expr(doc["t"], "t");
      f.theta_ = alpha_expr(doc.value("theta", json("0")), "theta");
      f.scale_ = alpha_expr(doc.value("length_scale", json("1")), "length_scale");
    } else if (name == "template") {
      f.name_ = name;
      if (!doc.contains("group") || !doc["group"].is_object())
        fail(ErrorCode::format_error, "template family needs an object field 'group'");
      f.template_ = doc["group"].dump();
    } else {
      fail(ErrorCode::format_error, "unknown family '" + name + "' (symmetric_schottky, template)");
    }
    if (doc.contains("grid")) {
      const json& g = doc["grid"];
      if (g.is_array()) {
        for (const auto& v : g) f.grid_.push_back(v.get<double>());
      } else if (g.is_object()) {
        double a = g.at("from").get<double>(), b = g.at("to").get<double>();
        int n = g.at("points").get<int>();
        if (n < 2) fail(ErrorCode::format_error, "grid needs >= 2 points");
        for (int i = 0; i < n; ++i) f.grid_.push_back(a + (b - a) * i / (n - 1));
      } else {
        fail(ErrorCode::format_error, "grid must be a list or {from, to, points}");
      }
    }
    if (doc.contains("cutoff")) f.cutoff_ = doc["cutoff"].get<double>();
  } catch (const json::exception& e) {
    fail(ErrorCode::format_error, std::string("family file: ") + e.what());
  }
  return f;
}

GroupFamily GroupFamily::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open family file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

SchottkyGroup GroupFamily::operator()(double alpha) const {
  if (name_ == "symmetric_schottky") {
    double t = t_.evaluate({alpha}), theta = theta_.evaluate({alpha}), s = scale_.evaluate({alpha});
    if (!std::isfinite(t) || !std::isfinite(theta) || !std::isfinite(s))
      fail(ErrorCode::non_finite_value, "family parameters are not finite at alpha = " + std::to_string(alpha));
    return symmetric_schottky(t, theta, s, model_);
  }
  json g = json::parse(template_);
  substitute(g, alpha);
  return group_from_json(g.dump());
}

}  // namespace orbitzeta
