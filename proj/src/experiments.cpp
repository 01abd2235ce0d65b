#include "tfapprox/experiments.hpp"

#include <algorithm>
#include <ostream>

#include "tfapprox/convolution.hpp"
#include "tfapprox/io.hpp"
#include "tfapprox/operators.hpp"

namespace tfapprox {

namespace {

GridFunction unit_window(const ExperimentConfig& cfg, const Grid& grid) {
  const FunctionSpec w = cfg.window_spec();
  const cplx mass = grid_integral(sample(w, grid));
  if (std::abs(mass) < 1e-10) {
    throw WindowZeroMean("window " + w.to_string() + " has zero integral; need g^(0) = int g != 0");
  }
  return sample(w.scaled(1.0 / mass), grid);
}

void sort_rows(std::vector<SweepRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.parameter > b.parameter; });
}

} // namespace

std::vector<SweepRow> sweep_rho(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid();
  const NormSpec ns = cfg.norm_spec();
  const GridFunction f = sample(cfg.target_spec(), grid);
  const GridFunction g = unit_window(cfg, grid);
  std::vector<SweepRow> rows;
  for (double rho : cfg.rho_ladder) rows.push_back({rho, mollify_error(f, g, rho, ns)});
  sort_rows(rows);
  return rows;
}

std::vector<SweepRow> sweep_bupu(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid();
  const NormSpec ns = cfg.norm_spec();
  const GridFunction f = sample(cfg.target_spec(), grid);
  const GridFunction g_rho = dilate_compress(unit_window(cfg, grid), cfg.rho);
  std::vector<SweepRow> rows;
  for (double delta : cfg.delta_ladder) {
    rows.push_back({delta, discretized_conv_error(g_rho, f, build_regular_bupu(grid, delta), ns)});
  }
  sort_rows(rows);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::string& parameter, const std::vector<SweepRow>& rows) {
  CsvWriter csv(out, {parameter, "error"});
  for (const auto& r : rows) csv.row({format_number(r.parameter), format_number(r.error)});
}

bool print_selftest(std::ostream& out, const std::vector<PropertyResult>& results) {
  std::size_t passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << results.size() << " properties passed\n";
  return passed == results.size();
}

} // namespace tfapprox
