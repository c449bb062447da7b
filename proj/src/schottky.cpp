#include "orbitzeta/schottky.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "orbitzeta/error.hpp"

namespace orbitzeta {

using nlohmann::json;

std::string letter_name(int index) {
  int letter = letter_from_key(index);
  return to_string(Word({letter}));
}

int letter_index_from_name(std::string_view name, int rank) {
  Word w = parse_word(name);
  if (w.size() != 1) fail(ErrorCode::format_error, "disk letter must be a single letter");
  int letter = w[0];
  if (std::abs(letter) > rank) fail(ErrorCode::invalid_group, "disk letter exceeds the group rank");
  return letter_key(letter);
}

SchottkyGroup::SchottkyGroup(std::vector<Moebius> generators, std::vector<BoundaryDisk> disks, double length_scale)
    : generators_(std::move(generators)), disks_(std::move(disks)), length_scale_(length_scale) {
  if (generators_.size() < 2) fail(ErrorCode::invalid_group, "a Schottky group needs rank >= 2");
  if (!(length_scale_ > 0.0) || !std::isfinite(length_scale_))
    fail(ErrorCode::invalid_group, "length scale must be positive");
  model_ = generators_.front().model();
  for (const auto& g : generators_)
    if (g.model() != model_) fail(ErrorCode::invalid_group, "generators mix plane and space models");
  const int n = alphabet_size();
  if (static_cast<int>(disks_.size()) != n)
    fail(ErrorCode::invalid_group, "expected " + std::to_string(n) + " disks, got " + std::to_string(disks_.size()));

  letters_.assign(static_cast<std::size_t>(n), Moebius(model_));
  for (int i = 0; i < rank(); ++i) {
    letters_[static_cast<std::size_t>(2 * i)] = generators_[static_cast<std::size_t>(i)];
    letters_[static_cast<std::size_t>(2 * i + 1)] = generators_[static_cast<std::size_t>(i)].inverse();
  }

  disk_by_index_.resize(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& d : disks_) {
    if (d.letter == 0 || std::abs(d.letter) > rank()) fail(ErrorCode::invalid_group, "disk letter out of range");
    auto idx = static_cast<std::size_t>(letter_key(d.letter));
    if (seen[idx]) fail(ErrorCode::invalid_group, "two disks for letter " + letter_name(static_cast<int>(idx)));
    if (model_ == Model::plane && d.center.imag() != 0.0)
      fail(ErrorCode::invalid_group, "plane-model disks must be centered on the real line");
    seen[idx] = true;
    disk_by_index_[idx] = d;
  }
  caps_.reserve(static_cast<std::size_t>(n));
  for (const auto& d : disk_by_index_) caps_.push_back(disk_cap(d.center, d.radius, d.exterior));
}

Moebius SchottkyGroup::evaluate(const Word& w) const {
  Moebius m(model_);
  for (int letter : w.letters()) {
    if (std::abs(letter) > rank()) fail(ErrorCode::invalid_argument, "word letter exceeds the group rank");
    m = compose(m, letter_matrix(letter_key(letter)));
  }
  return m;
}

double CompletenessCertificate::min_pair() const {
  double best = std::numeric_limits<double>::infinity();
  for (int x = 0; x < alphabet_size; ++x)
    for (int y = 0; y < alphabet_size; ++y)
      if (y != (x ^ 1)) best = std::min(best, pair(x, y));
  return best;
}

double CompletenessCertificate::t_certified(int word_length) const {
  return (word_length * std::log(1.0 / kappa) - additive_constant) * length_scale;
}

int CompletenessCertificate::required_word_length(double T) const {
  double L = std::ceil((T / length_scale + additive_constant) / std::log(1.0 / kappa));
  if (!(L < 1e9)) return std::numeric_limits<int>::max();
  return static_cast<int>(std::max(0.0, L));
}

CompletenessCertificate validate_ping_pong(const SchottkyGroup& group) {
  const int n = group.alphabet_size();
  CompletenessCertificate cert;
  cert.alphabet_size = n;
  cert.length_scale = group.length_scale();
  cert.min_gap = std::numeric_limits<double>::infinity();

  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      double g = cap_gap(group.letter_cap(x), group.letter_cap(y));
      if (!(g > 1e-12))
        fail(ErrorCode::degenerate_disks,
             "disks " + letter_name(x) + " and " + letter_name(y) + (g < 0 ? " overlap" : " touch"));
      cert.min_gap = std::min(cert.min_gap, g);
    }
  }

  constexpr double tol = 1e-9;
  for (int x = 0; x < n; ++x) {
    const Moebius& m = group.letter_matrix(x);
    const Cap& target = group.letter_cap(x);
    Cap outside = group.letter_cap(x ^ 1).complement();
    std::string what = "letter " + letter_name(x) + " does not map the outside of D_" + letter_name(x ^ 1) +
                       " into D_" + letter_name(x);
    if (!cap_within(image(m, outside), target, tol)) fail(ErrorCode::ping_pong_violation, what);
    for (const Vec3& p : cap_boundary_samples(outside, 64))
      if (!target.contains(apply(m, p), tol)) fail(ErrorCode::ping_pong_violation, what + " (sampled point)");
  }

  cert.pair_log_bound.assign(static_cast<std::size_t>(n * n), std::numeric_limits<double>::infinity());
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (y == (x ^ 1)) continue;
      double k = sup_spherical_derivative(group.letter_matrix(x), group.letter_cap(y)) * (1.0 + 1e-9);
      if (!(k < 1.0))
        fail(ErrorCode::ping_pong_violation,
             "letter " + letter_name(x) + " does not contract D_" + letter_name(y) + " (kappa = " + std::to_string(k) + ")");
      cert.pair_log_bound[static_cast<std::size_t>(x * n + y)] = -std::log(k);
      cert.kappa = std::max(cert.kappa, k);
    }
  }
  return cert;
}

namespace {

std::string fmt15(double v) {
  if (v == 0.0) v = 0.0;  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    fail(ErrorCode::io_error, "SHA-256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

Complex parse_scalar(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(ErrorCode::format_error, std::string(what) + " must be a number or [re, im]");
}

json scalar_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::string group_digest(const SchottkyGroup& group) {
  std::string s = "orbitzeta-group;model_dim=" + std::to_string(static_cast<int>(group.model())) +
                  ";length_scale=" + fmt15(group.length_scale());
  for (const auto& g : group.generators()) {
    for (Complex e : {g.a(), g.b(), g.c(), g.d()}) s += ";" + fmt15(e.real()) + "," + fmt15(e.imag());
    s += "|";
  }
  return sha256_hex(s);
}

SchottkyGroup group_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::format_error, std::string("group JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) fail(ErrorCode::format_error, "group JSON must be an object");
    int dim = doc.at("model_dim").get<int>();
    if (dim != 2 && dim != 3) fail(ErrorCode::format_error, "model_dim must be 2 or 3");
    Model model = static_cast<Model>(dim);
    std::vector<Moebius> gens;
    for (const auto& g : doc.at("generators")) {
      if (!g.is_array() || g.size() != 2 || g[0].size() != 2 || g[1].size() != 2)
        fail(ErrorCode::format_error, "each generator must be a 2x2 matrix");
      gens.emplace_back(parse_scalar(g[0][0], "matrix entry"), parse_scalar(g[0][1], "matrix entry"),
                        parse_scalar(g[1][0], "matrix entry"), parse_scalar(g[1][1], "matrix entry"), model);
    }
    int rank = static_cast<int>(gens.size());
    std::vector<BoundaryDisk> disks;
    for (const auto& d : doc.at("disks")) {
      BoundaryDisk disk;
      const auto& l = d.at("letter");
      if (l.is_string())
        disk.letter = letter_from_key(letter_index_from_name(l.get<std::string>(), rank));
      else
        disk.letter = l.get<int>();
      disk.center = parse_scalar(d.at("center"), "disk center");
      disk.radius = d.at("radius").get<double>();
      disk.exterior = d.value("exterior", false);
      disks.push_back(disk);
    }
    double scale = doc.value("length_scale", 1.0);
    return SchottkyGroup(std::move(gens), std::move(disks), scale);
  } catch (const json::exception& e) {
    fail(ErrorCode::format_error, std::string("group JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_argument) fail(ErrorCode::invalid_group, e.what());
    throw;
  }
}

std::string group_to_json(const SchottkyGroup& group) {
  json doc;
  doc["model_dim"] = static_cast<int>(group.model());
  doc["length_scale"] = group.length_scale();
  json gens = json::array();
  for (const auto& g : group.generators())
    gens.push_back(json::array({json::array({scalar_json(g.a()), scalar_json(g.b())}),
                                json::array({scalar_json(g.c()), scalar_json(g.d())})}));
  doc["generators"] = gens;
  json disks = json::array();
  for (const auto& d : group.disks()) {
    json j{{"letter", to_string(Word({d.letter}))}, {"center", scalar_json(d.center)}, {"radius", d.radius}};
    if (d.exterior) j["exterior"] = true;
    disks.push_back(j);
  }
  doc["disks"] = disks;
  return doc.dump(2) + "\n";
}

SchottkyGroup load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open group file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return group_from_json(ss.str());
}

SchottkyGroup symmetric_schottky(double t, double theta, double length_scale, Model model) {
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::invalid_argument, "translation parameter t must be positive");
  if (model == Model::plane && theta != 0.0)
    fail(ErrorCode::invalid_argument, "a holonomy angle needs the space model");
  Complex half = std::exp(0.5 * Complex(t, theta));
  Moebius A = Moebius::diagonal(half, model);
  const double s = 1.0 / std::sqrt(2.0);
  Moebius R(s, -s, s, s, model);
  Moebius B = R * A * R.inverse();

  double rho = std::exp(0.5 * t);
  double lo = std::tanh(0.25 * t), hi = 1.0 / std::tanh(0.25 * t);
  double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  std::vector<BoundaryDisk> disks{
      {1, Complex(0.0, 0.0), rho, true},
      {-1, Complex(0.0, 0.0), 1.0 / rho, false},
      {2, Complex(c, 0.0), r, false},
      {-2, Complex(-c, 0.0), r, false},
  };
  return SchottkyGroup({A, B}, std::move(disks), length_scale);
}

SchottkyGroup reference_group() { return symmetric_schottky(4.0); }

}  // namespace orbitzeta
