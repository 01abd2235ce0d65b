#include "tfapprox/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "tfapprox/operators.hpp"

namespace tfapprox {

namespace {

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double plateau(double t, double L, double margin) {
  const double a = std::abs(t);
  const double inner = L - 2.0 * margin;
  const double outer = L - margin;
  if (a <= inner) return 1.0;
  if (a >= outer) return 0.0;
  const double r = (outer - a) / margin;
  return r * r * (3.0 - 2.0 * r);
}

} // namespace

GridFunction Approximant::evaluate(const Grid& grid) const {
  const GridFunction g_rho = sample(window.compressed(rho), grid);
  return convolve_measure(atoms, g_rho);
}

Truncation truncate_to_test(const GridFunction& f, double eta, double margin, const NormSpec& norm_spec,
                            TfSampling tf) {
  const Grid& g = f.grid();
  if (!(eta > 0.0)) throw InvalidArgument("truncate_to_test: eta must be positive");
  if (!(margin > 0.0) || 2.0 * margin >= g.half_extent()) {
    throw InvalidArgument("truncate_to_test: margin must lie in (0, L/2)");
  }
  std::vector<cplx> out(f.size());
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (f[i] == cplx(0.0, 0.0)) continue;
    g.node(i, x);
    double chi = 1.0;
    for (double xj : x) chi *= plateau(xj, g.half_extent(), margin);
    out[i] = f[i] * chi;
  }
  GridFunction k(g, std::move(out));
  k.mark_interpolated(f.interpolated());
  const double err = norm(f - k, norm_spec, tf);
  if (err > eta) {
    ApproximationReport rep;
    rep.norm_id = norm_spec.id();
    rep.e_truncate = err;
    rep.failed_stage = "truncate";
    throw TruncationInfeasible("truncation error " + short_num(err) + " exceeds budget " + short_num(eta),
                               rep);
  }
  return {std::move(k), err};
}

RhoChoice select_rho(const GridFunction& k, const GridFunction& g, double budget, const NormSpec& norm_spec,
                     TfSampling tf) {
  const double rho_min = 4.0 * k.grid().spacing();
  RhoChoice best{1.0, kInfinity};
  for (double rho = 1.0; rho >= rho_min * (1.0 - 1e-12); rho *= 0.5) {
    const double err = mollify_error(k, g, rho, norm_spec, tf);
    if (err <= budget) return {rho, err};
    if (err < best.error) best = {rho, err};
  }
  ApproximationReport rep;
  rep.norm_id = norm_spec.id();
  rep.rho = best.rho;
  rep.e_mollify = best.error;
  rep.failed_stage = "rho";
  throw BudgetInfeasible("no rho >= " + short_num(rho_min) + " meets the mollification budget " +
                             short_num(budget) + " (best " + short_num(best.error) + " at rho = " +
                             short_num(best.rho) + ")",
                         rep);
}

BupuChoice select_bupu(const GridFunction& k, const GridFunction& g_rho, double budget, const NormSpec& norm_spec,
                       const Grid& grid, TfSampling tf, double delta0) {
  const double h = grid.spacing();
  double delta = delta0;
  while (delta > grid.half_extent() / 4.0) delta *= 0.5;
  const GridFunction exact = convolve(g_rho, k);
  std::optional<BupuChoice> best;
  for (; delta >= 2.0 * h * (1.0 - 1e-12); delta *= 0.5) {
    Bupu psi = build_regular_bupu(grid, delta);
    DiscreteMeasure mu = discretize(k, psi);
    GridFunction approx = convolve_measure(mu, g_rho);
    const double err = norm(exact - approx, norm_spec, tf);
    BupuChoice choice{std::move(psi), err, std::move(mu), std::move(approx)};
    if (err <= budget) return choice;
    if (!best || err < best->error) best.emplace(std::move(choice));
  }
  ApproximationReport rep;
  rep.norm_id = norm_spec.id();
  rep.failed_stage = "bupu";
  if (best) {
    rep.delta = best->psi.lattice_spacing();
    rep.e_discretize = best->error;
  }
  throw BudgetInfeasible("no BUPU with delta >= 2h meets the discretization budget " + short_num(budget) +
                             (best ? " (best " + short_num(best->error) + " at delta = " +
                                         short_num(best->psi.lattice_spacing()) + ")"
                                   : std::string()),
                         rep);
}

ApproximationResult approximate(const GridFunction& f, const FunctionSpec& window, double eps,
                                const NormSpec& norm_spec, const ApproximateOptions& options) {
  if (!(eps > 0.0)) {
    throw InvalidArgument("approximate: eps must be positive");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const Grid& grid = f.grid();
  ApproximationReport rep;
  rep.target = f.source() ? f.source()->to_string() : std::string("<samples>");
  rep.window = window.to_string();
  rep.norm_id = norm_spec.id();
  rep.eps = eps;
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };
  auto fail = [&](const std::string& stage, const std::string& msg) {
    rep.failed_stage = stage;
    rep.success = false;
    rep.wall_ms = elapsed();
    throw BudgetInfeasible(msg, rep);
  };

  const cplx mass = grid_integral(sample(window, grid));
  if (std::abs(mass) < 1e-10) {
    throw WindowZeroMean("window " + window.to_string() +
                         " has zero integral; the scheme needs g^(0) = int g != 0");
  }
  if (eps < 0.0) throw InvalidArgument("approximate: eps must be nonnegative");
  const FunctionSpec unit_window = window.scaled(1.0 / mass);
  const GridFunction g = sample(unit_window, grid);
  const double quarter = eps / 4.0;
  const double margin = options.margin > 0.0 ? options.margin : grid.half_extent() / 8.0;

  // Step 1: compactly supported k near f.
  std::optional<Truncation> trunc;
  try {
    trunc.emplace(truncate_to_test(f, std::max(quarter, 1e-300), margin, norm_spec, options.tf));
  } catch (const TruncationInfeasible& e) {
    rep.e_truncate = e.report().e_truncate;
    fail("truncate", e.what());
  }
  rep.e_truncate = trunc->error;
  const GridFunction& k = trunc->k;

  // Step 2: compression parameter.
  if (options.fixed_rho) {
    rep.rho = *options.fixed_rho;
    rep.e_mollify = mollify_error(k, g, rep.rho, norm_spec, options.tf);
  } else {
    try {
      const RhoChoice rc = select_rho(k, g, quarter, norm_spec, options.tf);
      rep.rho = rc.rho;
      rep.e_mollify = rc.error;
    } catch (const BudgetInfeasible& e) {
      rep.rho = e.report().rho;
      rep.e_mollify = e.report().e_mollify;
      fail("rho", e.what());
    }
  }
  const GridFunction g_rho = dilate_compress(g, rep.rho);

  // Step 3: discretize the convolution.
  std::optional<BupuChoice> bc;
  try {
    bc.emplace(select_bupu(k, g_rho, quarter, norm_spec, grid, options.tf, options.delta0));
  } catch (const BudgetInfeasible& e) {
    rep.delta = e.report().delta;
    rep.e_discretize = e.report().e_discretize;
    fail("bupu", e.what());
  }
  rep.delta = bc->psi.lattice_spacing();
  rep.e_discretize = bc->error;
  rep.node_count = bc->measure.size();

  // Step 4: measure the result directly.
  rep.e_total = norm(f - bc->approximation, norm_spec, options.tf);

  Approximant out;
  out.rho = rep.rho;
  out.window = window;
  out.atoms = bc->measure.scaled(1.0 / mass);
  if (rep.e_total > eps) {
    fail("total", "total error " + short_num(rep.e_total) + " exceeds eps = " + short_num(eps));
  }
  rep.success = true;
  rep.wall_ms = elapsed();
  return {std::move(out), std::move(rep)};
}

} // namespace tfapprox
