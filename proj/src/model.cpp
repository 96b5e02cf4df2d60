#include "twobody/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace twobody {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    throw InvalidArgument("invalid real value for '" + key + "': '" + text + "'");
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw InvalidArgument("invalid integer value for '" + key + "': '" + text + "'");
  return value;
}

const char* const kNumericsKeys[] = {"n_radial",   "r_max",        "n_angular",
                                     "l_max",      "m_sine",       "box_L",
                                     "energy_tol", "bracket_step", "workers"};

bool is_numerics_key(const std::string& key) {
  return std::find(std::begin(kNumericsKeys), std::end(kNumericsKeys), key) !=
         std::end(kNumericsKeys);
}

}  // namespace

Strength Strength::finite(double kappa) {
  if (!std::isfinite(kappa)) throw InvalidArgument("finite strength must be a finite number");
  Strength s;
  s.hardcore_ = false;
  s.kappa_ = kappa;
  return s;
}

double Strength::value() const {
  if (hardcore_) throw InvalidArgument("hardcore strength has no finite value");
  return kappa_;
}

std::string Strength::to_string() const {
  if (hardcore_) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, kappa_);
  return std::string(buf, ptr);
}

Strength Strength::parse(const std::string& text) {
  std::string t = lower(trim(text));
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") return hardcore();
  return finite(parse_double("kappa", trim(text)));
}

bool SystemParams::non_interacting() const {
  if (sigma == 0.0) return true;
  return !kappa.is_hardcore() && kappa.value() == 0.0;
}

NumericsConfig NumericsConfig::defaults(double sigma) {
  NumericsConfig cfg;
  cfg.r_max = std::max(8.0, sigma + 6.0);
  cfg.box_L = cfg.r_max;
  return cfg;
}

bool operator==(const Violation& a, const Violation& b) {
  return a.field == b.field && a.rule == b.rule;
}

bool ValidationReport::violates(const std::string& rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.field + ": " + v.rule;
  }
  return out;
}

ValidationReport validate(const SystemParams& params, const NumericsConfig& cfg) {
  ValidationReport report;
  auto check = [&](bool holds, const char* field, const char* rule) {
    if (!holds) report.violations.push_back({field, rule});
  };
  check(std::isfinite(params.sigma) && params.sigma >= 0.0, "sigma", "sigma >= 0");
  check(cfg.n_radial >= 16, "n_radial", "n_radial >= 16");
  check(cfg.n_angular >= 32, "n_angular", "n_angular >= 32");
  check(cfg.n_angular % 2 == 0, "n_angular", "n_angular even");
  check(cfg.l_max >= 1, "l_max", "l_max >= 1");
  check(cfg.m_sine >= 4, "m_sine", "m_sine >= 4");
  check(cfg.r_max > 0.0, "r_max", "r_max > 0");
  check(std::isfinite(params.sigma) && cfg.r_max > params.sigma, "r_max", "r_max > sigma");
  check(cfg.box_L >= cfg.r_max, "box_L", "box_L >= r_max");
  check(cfg.energy_tol > 0.0, "energy_tol", "energy_tol > 0");
  check(cfg.bracket_step > 0.0, "bracket_step", "bracket_step > 0");
  check(cfg.workers >= 1, "workers", "workers >= 1");
  return report;
}

ConfigFile parse_config(std::istream& in) {
  ConfigFile file;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw InvalidArgument("config line " + std::to_string(lineno) + ": empty key");
    if (key == "kappa") {
      file.kappa = Strength::parse(value);
    } else if (key == "sigma") {
      file.sigma = parse_double(key, value);
    } else if (is_numerics_key(key)) {
      file.numerics[key] = value;
    } else {
      file.extra[key] = value;
    }
  }
  return file;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  return parse_config(in);
}

NumericsConfig resolve_numerics(const std::map<std::string, std::string>& overrides,
                                double sigma) {
  NumericsConfig cfg = NumericsConfig::defaults(sigma);
  for (const auto& [key, value] : overrides) {
    if (key == "n_radial") cfg.n_radial = parse_int(key, value);
    else if (key == "r_max") cfg.r_max = parse_double(key, value);
    else if (key == "n_angular") cfg.n_angular = parse_int(key, value);
    else if (key == "l_max") cfg.l_max = parse_int(key, value);
    else if (key == "m_sine") cfg.m_sine = parse_int(key, value);
    else if (key == "box_L") cfg.box_L = parse_double(key, value);
    else if (key == "energy_tol") cfg.energy_tol = parse_double(key, value);
    else if (key == "bracket_step") cfg.bracket_step = parse_double(key, value);
    else if (key == "workers") cfg.workers = parse_int(key, value);
    else throw InvalidArgument("unknown numerics key '" + key + "'");
  }
  if (overrides.count("r_max") && !overrides.count("box_L")) cfg.box_L = cfg.r_max;
  return cfg;
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

namespace {
std::string exact_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}
}  // namespace

std::string to_config_text(const SystemParams& params, const NumericsConfig& cfg) {
  std::ostringstream out;
  out << "kappa=" << params.kappa.to_string() << '\n'
      << "sigma=" << exact_real(params.sigma) << '\n'
      << "n_radial=" << cfg.n_radial << '\n'
      << "r_max=" << exact_real(cfg.r_max) << '\n'
      << "n_angular=" << cfg.n_angular << '\n'
      << "l_max=" << cfg.l_max << '\n'
      << "m_sine=" << cfg.m_sine << '\n'
      << "box_L=" << exact_real(cfg.box_L) << '\n'
      << "energy_tol=" << exact_real(cfg.energy_tol) << '\n'
      << "bracket_step=" << exact_real(cfg.bracket_step) << '\n'
      << "workers=" << cfg.workers << '\n';
  return out.str();
}

}  // namespace twobody
