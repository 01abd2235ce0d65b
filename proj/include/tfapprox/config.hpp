#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfapprox/errors.hpp"
#include "tfapprox/sampling.hpp"
#include "tfapprox/spaces.hpp"

namespace tfapprox {

/// Bad or missing configuration value (maps to exit code 1).
class ConfigError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
KeyValues parse_key_values(std::string_view text);
KeyValues read_config_file(const std::string& path);

/// Comma separated list of numbers; each entry may be a fraction `a/b`.
std::vector<double> parse_ladder(std::string_view text);

struct ExperimentConfig {
  int dim = 1;
  double extent = 16.0;
  double spacing = 1.0 / 64.0;
  std::uint64_t seed = 1;
  std::string out;
  bool plot = false;
  std::string target;
  std::string window;
  std::string norm = "lp(1,1)";
  std::optional<double> eps;
  double eps_rel = 0.05;
  std::vector<double> rho_ladder{1.0, 0.5, 0.25, 0.125};
  std::vector<double> delta_ladder{1.0, 0.5, 0.25, 0.125};
  double rho = 1.0;
  double margin = 0.0;

  Grid grid() const { return Grid(dim, extent, spacing); }
  NormSpec norm_spec() const { return NormSpec::parse(norm, dim); }
  FunctionSpec target_spec() const;
  FunctionSpec window_spec() const;

  /// Unknown keys and malformed values throw ConfigError.
  static ExperimentConfig from_key_values(const KeyValues& kv);
  static const std::vector<std::string>& known_keys();
};

} // namespace tfapprox
