#include "tfapprox/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tfapprox {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const std::string t = trim(v);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    // Allow a single fraction a/b.
    const auto slash = t.find('/');
    if (slash != std::string::npos) {
      const double a = to_double(key, t.substr(0, slash));
      const double b = to_double(key, t.substr(slash + 1));
      if (b == 0.0) throw ConfigError("config: zero denominator for '" + key + "'");
      return a / b;
    }
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  std::string t = trim(v);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off" || t.empty()) return false;
  throw ConfigError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

} // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

std::vector<double> parse_ladder(std::string_view text) {
  std::vector<double> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = t.find(',', pos);
    const std::string item = trim(std::string_view(t).substr(pos, comma == std::string::npos ? t.npos : comma - pos));
    const double v = to_double("ladder", item);
    if (!(v > 0.0)) throw ConfigError("config: ladder entries must be positive, got '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

const std::vector<std::string>& ExperimentConfig::known_keys() {
  static const std::vector<std::string> keys{
      "dim",  "extent", "spacing", "seed", "out",        "plot",         "target", "window",
      "norm", "eps",    "eps_rel", "rho",  "rho_ladder", "delta_ladder", "margin"};
  return keys;
}

ExperimentConfig ExperimentConfig::from_key_values(const KeyValues& kv) {
  ExperimentConfig c;
  const auto& keys = known_keys();
  for (const auto& [k, v] : kv) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ConfigError("config: unknown key '" + k + "'");
    }
    if (k == "dim") {
      const double d = to_double(k, v);
      if (d != 1.0 && d != 2.0) throw ConfigError("config: dim must be 1 or 2");
      c.dim = static_cast<int>(d);
    } else if (k == "extent") {
      c.extent = to_double(k, v);
    } else if (k == "spacing") {
      c.spacing = to_double(k, v);
    } else if (k == "seed") {
      const double s = to_double(k, v);
      if (s < 0 || s != std::floor(s)) throw ConfigError("config: seed must be a nonnegative integer");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (k == "out") {
      c.out = v;
    } else if (k == "plot") {
      c.plot = to_bool(k, v);
    } else if (k == "target") {
      c.target = v;
    } else if (k == "window") {
      c.window = v;
    } else if (k == "norm") {
      c.norm = v;
    } else if (k == "eps") {
      c.eps = to_double(k, v);
    } else if (k == "eps_rel") {
      c.eps_rel = to_double(k, v);
    } else if (k == "rho") {
      c.rho = to_double(k, v);
    } else if (k == "rho_ladder") {
      c.rho_ladder = parse_ladder(v);
    } else if (k == "delta_ladder") {
      c.delta_ladder = parse_ladder(v);
    } else if (k == "margin") {
      c.margin = to_double(k, v);
    }
  }
  try {
    (void)c.grid();
    (void)c.norm_spec();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

FunctionSpec ExperimentConfig::target_spec() const {
  if (target.empty()) throw ConfigError("config: missing 'target' function spec");
  try {
    return FunctionSpec::parse(target);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

FunctionSpec ExperimentConfig::window_spec() const {
  if (window.empty()) throw ConfigError("config: missing 'window' function spec");
  try {
    return FunctionSpec::parse(window);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

} // namespace tfapprox
