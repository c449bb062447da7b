#include "orbitzeta/spectrum_io.hpp"

#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "orbitzeta/error.hpp"
#include "orbitzeta/schottky.hpp"

namespace orbitzeta {

namespace {

constexpr const char* kMagic = "#orbitzeta-spectrum v1";
constexpr const char* kColumns = "canonical_word,primitive_word,k,length,ell_p,theta,trace_re,trace_im";

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) fail(ErrorCode::format_error, "empty value for " + what);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || (errno == ERANGE && std::abs(v) > 1.0))
    fail(ErrorCode::format_error, "bad number '" + s + "' for " + what);
  return v;
}

long long parse_int(const std::string& s, const std::string& what) {
  if (s.empty()) fail(ErrorCode::format_error, "empty value for " + what);
  char* end = nullptr;
  errno = 0;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) fail(ErrorCode::format_error, "bad integer '" + s + "' for " + what);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string to_string(EnumerationStatus s) {
  switch (s) {
    case EnumerationStatus::complete: return "complete";
    case EnumerationStatus::word_length_limit: return "word_length_limit";
    case EnumerationStatus::class_limit: return "class_limit";
  }
  return "complete";
}

EnumerationStatus parse_enumeration_status(const std::string& s) {
  if (s == "complete") return EnumerationStatus::complete;
  if (s == "word_length_limit") return EnumerationStatus::word_length_limit;
  if (s == "class_limit") return EnumerationStatus::class_limit;
  fail(ErrorCode::format_error, "unknown enumeration status '" + s + "'");
}

void write_spectrum(std::ostream& os, const LengthSpectrum& sp) {
  const auto& st = sp.stats;
  std::string levels;
  for (std::size_t i = 0; i < st.level_counts.size(); ++i) {
    if (i) levels += ",";
    levels += std::to_string(st.level_counts[i]);
  }
  os << kMagic << '\n'
     << "#group-digest " << sp.group_digest << '\n'
     << "#cutoff " << g17(sp.cutoff) << '\n'
     << "#certified " << (sp.certified ? "true" : "false") << '\n'
     << "#model-dim " << static_cast<int>(sp.model) << '\n'
     << "#length-scale " << g17(sp.length_scale) << '\n'
     << "#kappa " << g17(st.kappa) << '\n'
     << "#additive-constant " << g17(st.additive_constant) << '\n'
     << "#t-certified " << g17(st.t_certified) << '\n'
     << "#required-word-length " << st.required_word_length << '\n'
     << "#max-word-length " << st.max_word_length << '\n'
     << "#deepest-level " << st.deepest_level << '\n'
     << "#word-count " << st.word_count << '\n'
     << "#level-counts " << (levels.empty() ? "-" : levels) << '\n'
     << "#status " << to_string(st.status) << '\n'
     << kColumns << '\n';
  for (const auto& g : sp.entries) {
    os << to_string(g.canonical_word) << ',' << to_string(g.primitive_word) << ',' << g.k << ',' << g17(g.length) << ','
       << g17(g.ell_p) << ',' << g17(g.complex_length.theta) << ',' << g17(g.trace.real()) << ','
       << g17(g.trace.imag()) << '\n';
  }
}

LengthSpectrum read_spectrum(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic) fail(ErrorCode::format_error, "missing '#orbitzeta-spectrum v1' header");
  std::map<std::string, std::string> hdr;
  bool have_columns = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      if (line != kColumns) fail(ErrorCode::format_error, "unexpected column header '" + line + "'");
      have_columns = true;
      break;
    }
    auto sp = line.find(' ');
    if (sp == std::string::npos) fail(ErrorCode::format_error, "header line without value: " + line);
    hdr[line.substr(1, sp - 1)] = line.substr(sp + 1);
  }
  if (!have_columns) fail(ErrorCode::format_error, "missing column header");
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = hdr.find(k);
    if (it == hdr.end()) fail(ErrorCode::format_error, "missing header #" + k);
    return it->second;
  };
  auto opt = [&](const std::string& k, const std::string& dflt) {
    auto it = hdr.find(k);
    return it == hdr.end() ? dflt : it->second;
  };

  LengthSpectrum sp;
  sp.group_digest = get("group-digest");
  if (sp.group_digest.size() != 64) fail(ErrorCode::format_error, "group digest must be 64 hex digits");
  sp.cutoff = parse_double(get("cutoff"), "cutoff");
  const std::string& cert = get("certified");
  if (cert != "true" && cert != "false") fail(ErrorCode::format_error, "#certified must be true or false");
  sp.certified = cert == "true";
  long long dim = parse_int(get("model-dim"), "model-dim");
  if (dim != 2 && dim != 3) fail(ErrorCode::format_error, "#model-dim must be 2 or 3");
  sp.model = static_cast<Model>(dim);
  sp.length_scale = parse_double(opt("length-scale", "1"), "length-scale");
  auto& st = sp.stats;
  st.kappa = parse_double(opt("kappa", "0"), "kappa");
  st.additive_constant = parse_double(opt("additive-constant", "0"), "additive-constant");
  st.t_certified = parse_double(opt("t-certified", "0"), "t-certified");
  st.required_word_length = static_cast<int>(parse_int(opt("required-word-length", "0"), "required-word-length"));
  st.max_word_length = static_cast<int>(parse_int(opt("max-word-length", "0"), "max-word-length"));
  st.deepest_level = static_cast<int>(parse_int(opt("deepest-level", "0"), "deepest-level"));
  st.word_count = static_cast<std::uint64_t>(parse_int(opt("word-count", "0"), "word-count"));
  std::string levels = opt("level-counts", "-");
  if (levels != "-")
    for (const auto& f : split(levels, ',')) st.level_counts.push_back(static_cast<std::uint64_t>(parse_int(f, "level-counts")));
  st.status = parse_enumeration_status(opt("status", "complete"));

  std::size_t row = 0;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 8) fail(ErrorCode::format_error, "row " + std::to_string(row) + ": expected 8 fields");
    ClosedGeodesic g;
    g.canonical_word = parse_word(f[0]);
    g.primitive_word = parse_word(f[1]);
    g.k = static_cast<int>(parse_int(f[2], "k"));
    if (g.k < 1) fail(ErrorCode::format_error, "row " + std::to_string(row) + ": k must be >= 1");
    g.length = parse_double(f[3], "length");
    g.ell_p = parse_double(f[4], "ell_p");
    g.complex_length = {g.length, parse_double(f[5], "theta")};
    g.trace = {parse_double(f[6], "trace_re"), parse_double(f[7], "trace_im")};
    if (g.canonical_word.empty()) fail(ErrorCode::format_error, "row " + std::to_string(row) + ": empty word");
    sp.entries.push_back(std::move(g));
  }
  return sp;
}

void atomic_write(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (!dir.empty()) {
    std::error_code ec;
    fs::create_directories(dir, ec);
  }
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io_error, "cannot write " + tmp);
    out << contents;
    out.flush();
    if (!out) fail(ErrorCode::io_error, "write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::io_error, "cannot replace " + path);
  }
}

void save_spectrum(const LengthSpectrum& spectrum, const std::string& path) {
  std::ostringstream ss;
  write_spectrum(ss, spectrum);
  atomic_write(path, ss.str());
}

LengthSpectrum load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open spectrum file " + path);
  return read_spectrum(in);
}

LengthSpectrum load_spectrum(const std::string& path, const SchottkyGroup& group) {
  LengthSpectrum sp = load_spectrum(path);
  std::string d = group_digest(group);
  if (sp.group_digest != d)
    fail(ErrorCode::digest_mismatch, "spectrum " + path + " was computed for group " + sp.group_digest.substr(0, 12) +
                                         "..., not " + d.substr(0, 12) + "...");
  return sp;
}

}  // namespace orbitzeta
