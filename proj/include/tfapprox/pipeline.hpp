#pragma once

#include <optional>
#include <string>

#include "tfapprox/bupu.hpp"
#include "tfapprox/convolution.hpp"
#include "tfapprox/errors.hpp"
#include "tfapprox/spaces.hpp"

namespace tfapprox {

/// h = sum_i c_i T_{x_i} S_rho g: a finite combination of shifted compressions
/// of one window.
struct Approximant {
  double rho = 1.0;
  DiscreteMeasure atoms{1};
  FunctionSpec window = FunctionSpec::gaussian(1.0);

  /// Samples h on `grid` by exact evaluation of every shifted dilate.
  GridFunction evaluate(const Grid& grid) const;
};

/// Per-stage errors of one approximation run, all in the chosen norm.
struct ApproximationReport {
  std::string target;
  std::string window;
  std::string norm_id;
  double eps = 0.0;
  double e_truncate = 0.0;
  double e_mollify = 0.0;
  double e_discretize = 0.0;
  double e_total = 0.0;
  double rho = 1.0;
  double delta = 1.0;
  std::size_t node_count = 0;
  double wall_ms = 0.0;
  bool success = false;
  /// Stage that ran out of budget: "", "truncate", "rho", "bupu" or "total".
  std::string failed_stage;
};

/// A stage could not meet its error budget. Carries the achieved errors.
class BudgetInfeasible : public Error {
public:
  BudgetInfeasible(const std::string& what, ApproximationReport report)
      : Error(what), report_(std::move(report)) {}
  const ApproximationReport& report() const { return report_; }

private:
  ApproximationReport report_;
};

class TruncationInfeasible : public BudgetInfeasible {
public:
  using BudgetInfeasible::BudgetInfeasible;
};

struct Truncation {
  GridFunction k;
  double error;
};

/// k = f chi with chi a C^1 plateau: 1 on [-L + 2 margin, L - 2 margin]^d,
/// 0 outside [-L + margin, L - margin]^d, cubic smoothstep in between.
/// Throws TruncationInfeasible when ||f - k|| > eta.
Truncation truncate_to_test(const GridFunction& f, double eta, double margin, const NormSpec& norm,
                            TfSampling tf = {});

struct RhoChoice {
  double rho;
  double error;
};

/// Largest rho in {1, 1/2, 1/4, ...}, rho >= 4h, with mollify_error <= budget.
/// g must have unit integral. Throws BudgetInfeasible (best rho in the report).
RhoChoice select_rho(const GridFunction& k, const GridFunction& g, double budget, const NormSpec& norm,
                     TfSampling tf = {});

struct BupuChoice {
  Bupu psi;
  double error;
  DiscreteMeasure measure; ///< D_Psi k
  GridFunction approximation; ///< (D_Psi k) * g_rho
};

/// Coarsest Psi on delta = delta0, delta0/2, ... (delta >= 2h) with
/// ||k * g_rho - (D_Psi k) * g_rho|| <= budget. Throws BudgetInfeasible.
BupuChoice select_bupu(const GridFunction& k, const GridFunction& g_rho, double budget, const NormSpec& norm,
                       const Grid& grid, TfSampling tf = {}, double delta0 = 1.0);

struct ApproximateOptions {
  /// Cutoff margin for the truncation stage; <= 0 means L / 8.
  double margin = 0.0;
  /// Skip the rho search and use this compression.
  std::optional<double> fixed_rho;
  double delta0 = 1.0;
  TfSampling tf;
};

struct ApproximationResult {
  Approximant approximant;
  ApproximationReport report;
};

/// Builds h with ||f - h|| <= eps: truncate (eps/4), mollify (eps/4),
/// discretize (eps/4), then measure ||f - h|| directly.
///
/// Throws WindowZeroMean when |int g| < 1e-10 and BudgetInfeasible when a
/// stage or the final check fails.
ApproximationResult approximate(const GridFunction& f, const FunctionSpec& window, double eps,
                                const NormSpec& norm, const ApproximateOptions& options = {});

} // namespace tfapprox
