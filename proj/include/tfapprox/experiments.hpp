#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tfapprox/config.hpp"

namespace tfapprox {

struct SweepRow {
  double parameter;
  double error;
};

/// mollify_error(target, normalized window, rho) for every rho in the ladder,
/// sorted by decreasing rho.
std::vector<SweepRow> sweep_rho(const ExperimentConfig& cfg);

/// discretized_conv_error(S_rho window, target, Psi_delta) for every delta in
/// the ladder (rho from the config), sorted by decreasing delta.
std::vector<SweepRow> sweep_bupu(const ExperimentConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::string& parameter, const std::vector<SweepRow>& rows);

struct PropertyResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t seed = 1;
  /// Test hook: run the submultiplicativity property on v_s with this s.
  std::optional<double> tamper_weight_exponent;
};

/// Invariant suite over every module at a small fixed configuration.
std::vector<PropertyResult> run_selftest(const SelftestOptions& options = {});

/// One `PASS name: detail` / `FAIL name: detail` line per property plus a
/// summary; returns true when all passed.
bool print_selftest(std::ostream& out, const std::vector<PropertyResult>& results);

} // namespace tfapprox
