#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "tfapprox/convolution.hpp"
#include "tfapprox/experiments.hpp"
#include "tfapprox/operators.hpp"
#include "tfapprox/pipeline.hpp"

namespace tfapprox {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

class Suite {
public:
  void check(const std::string& name, bool ok, const std::string& detail) {
    results_.push_back({name, ok, detail});
  }
  // Exceptions inside a property count as a failure of that property only.
  template <class Fn>
  void run(const std::string& name, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      results_.push_back({name, false, std::string("exception: ") + e.what()});
    }
  }
  std::vector<PropertyResult> take() { return std::move(results_); }

private:
  std::vector<PropertyResult> results_;
};

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

std::vector<PropertyResult> run_selftest(const SelftestOptions& options) {
  Suite s;
  const Grid grid(1, 8.0, 1.0 / 32.0);
  const Weight v0(0, 1), v1(1, 1), v2(2, 1);
  const NormSpec l1w = NormSpec::weighted_lp(1, 1, 1);
  const auto gauss = sample(FunctionSpec::gaussian(1), grid);
  const std::vector<std::string> probe_specs{"gaussian(1)", "hat(1)", "hat(2)|shift(1)", "bspline(3,2)",
                                             "chirp(0.5)|shift(-1)"};
  std::vector<GridFunction> probes;
  for (const auto& p : probe_specs) probes.push_back(sample(FunctionSpec::parse(p), grid));

  // weights
  s.run("weights.peetre", [&] {
    std::vector<double> exps{0.0, 1.0, 2.0};
    if (options.tamper_weight_exponent) exps = {*options.tamper_weight_exponent};
    std::int64_t viol = 0;
    double worst = 0.0;
    for (double e : exps) {
      const Weight w(e, 1);
      const auto r = check_submultiplicative(w, 10000, 50.0, options.seed, peetre_constant(w));
      viol += r.violations;
      worst = std::max(worst, r.worst_ratio);
    }
    s.check("weights.peetre", viol == 0, "violations=" + std::to_string(viol) + " worst_ratio=" + sci(worst));
  });
  s.run("weights.c1_constant", [&] {
    double dev = 0.0;
    for (double e : {0.0, 1.0, 2.0, 3.5}) dev = std::max(dev, std::abs(c1_constant(Weight(e, 1)) / std::pow(2.0, e / 2) - 1));
    s.check("weights.c1_constant", dev <= 1e-12, "max_rel_dev=" + sci(dev));
  });
  s.run("weights.moderate", [&] {
    const double c = peetre_constant(v1);
    const auto ok = check_moderate(Weight(-1, 1), v1, 10000, 50.0, options.seed, c);
    const auto bad = check_moderate(Weight(-2, 1), v1, 10000, 50.0, options.seed, c);
    s.check("weights.moderate", ok.violations == 0 && bad.violations > 0,
            "v-1 violations=" + std::to_string(ok.violations) + " v-2 violations=" + std::to_string(bad.violations));
  });

  // sampling
  s.run("sampling.gaussian_mass", [&] {
    const double n = weighted_lp_norm(gauss, 1, v0);
    const double n2 = weighted_lp_norm(gauss, 1, v2);
    const double e = std::max(std::abs(n - 1), std::abs(n2 - (1 + 0.5 / std::numbers::pi)));
    s.check("sampling.gaussian_mass", e <= 1e-10, "err=" + sci(e));
  });
  s.run("sampling.fourier_gaussian", [&] {
    const auto F = fourier(gauss);
    const auto exact = sample(FunctionSpec::gaussian(1), F.grid());
    const double e = max_abs_diff(F, exact);
    s.check("sampling.fourier_gaussian", e <= 1e-9, "max_err=" + sci(e));
  });
  s.run("sampling.plancherel", [&] {
    double worst = 0.0;
    for (const auto& f : probes) {
      const double a = weighted_lp_norm(f, 2, v0), b = weighted_lp_norm(fourier(f), 2, v0);
      worst = std::max(worst, std::abs(a - b) / a);
    }
    s.check("sampling.plancherel", worst <= 1e-9, "max_rel=" + sci(worst));
  });

  // operators
  s.run("operators.compression_isometry", [&] {
    double dev = 0.0;
    bool nonexp = true;
    for (double rho : {0.5, 0.25, 0.125}) {
      const auto c = dilate_compress(gauss, rho);
      dev = std::max(dev, std::abs(weighted_lp_norm(c, 1, v0) / weighted_lp_norm(gauss, 1, v0) - 1));
      nonexp = nonexp && weighted_lp_norm(c, 1, v1) <= weighted_lp_norm(gauss, 1, v1) * (1 + 1e-9);
    }
    s.check("operators.compression_isometry", dev <= 1e-6 && nonexp, "max_rel_dev=" + sci(dev));
  });
  s.run("operators.tf_shift_bounds", [&] {
    bool ok = true;
    double worst = 0.0;
    for (const auto& f : probes) {
      for (double a : {-2.0, 0.5, 3.0}) {
        const TFPoint z{{a}, {0.75 * a}};
        const auto t = tf_shift(f, z);
        const double l2 = std::abs(weighted_lp_norm(t, 2, v0) / weighted_lp_norm(f, 2, v0) - 1);
        worst = std::max(worst, l2);
        const double bound = peetre_constant(v1) * std::sqrt(1 + a * a) * weighted_lp_norm(f, 1, v1);
        ok = ok && weighted_lp_norm(t, 1, v1) <= bound * (1 + 1e-12);
      }
    }
    s.check("operators.tf_shift_bounds", ok && worst <= 1e-10, "l2_dev=" + sci(worst));
  });

  // bupu
  s.run("bupu.partition_of_unity", [&] {
    const auto psi = build_regular_bupu(grid, 0.5);
    const auto one = spline_quasi_interp(sample(FunctionSpec::parse("const(1)"), grid), psi);
    double e = 0.0;
    std::vector<double> x(1);
    for (std::size_t i = 0; i < one.size(); ++i) {
      grid.node(i, x);
      if (std::abs(x[0]) <= psi.partition_half_extent()) e = std::max(e, std::abs(one[i] - 1.0));
    }
    s.check("bupu.partition_of_unity", e <= 1e-12, "max_err=" + sci(e));
  });
  s.run("bupu.uniform_bound", [&] {
    double worst = 0.0;
    for (double delta : {1.0, 0.5, 0.25, 0.125}) {
      const auto psi = build_regular_bupu(grid, delta);
      for (const auto& k : probes) {
        worst = std::max(worst, measure_norm(discretize(k, psi), v1) / (c1_constant(v1) * weighted_lp_norm(k, 1, v1)));
      }
    }
    s.check("bupu.uniform_bound", worst <= 1 + 1e-10, "max_ratio=" + sci(worst));
  });
  s.run("bupu.adjointness", [&] {
    const auto psi = build_regular_bupu(grid, 0.5);
    double worst = 0.0;
    for (const auto& k : probes) {
      for (const auto& f : probes) {
        const double scale = weighted_lp_norm(k, 1, v0) * weighted_lp_norm(f, kInfinity, v0);
        worst = std::max(worst, adjointness_residual(k, f, psi) / scale);
      }
    }
    s.check("bupu.adjointness", worst <= 1e-10, "max_rel_residual=" + sci(worst));
  });

  // convolution
  s.run("convolution.young_and_domination", [&] {
    double young = 0.0, dom = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const auto& f = probes[i];
      const auto& g = probes[(i + 2) % probes.size()];
      const auto fg = convolve(f, g);
      young = std::max(young, weighted_lp_norm(fg, 1, v1) / (weighted_lp_norm(f, 1, v1) * weighted_lp_norm(g, 1, v1)));
      std::vector<cplx> af(f.size()), ag(g.size());
      std::vector<double> x(1);
      for (std::size_t k = 0; k < f.size(); ++k) {
        grid.node(k, x);
        af[k] = std::abs(f[k]) * v1(x);
        ag[k] = std::abs(g[k]) * v1(x);
      }
      const auto rhs = convolve(GridFunction(grid, af), GridFunction(grid, ag));
      for (std::size_t k = 0; k < f.size(); ++k) {
        grid.node(k, x);
        dom = std::max(dom, std::abs(fg[k]) * v1(x) - peetre_constant(v1) * rhs[k].real());
      }
    }
    s.check("convolution.young_and_domination", young <= 1 + 1e-9 && dom <= 1e-10,
            "young_ratio=" + sci(young) + " domination_excess=" + sci(dom));
  });
  s.run("convolution.fourier_diagonal", [&] {
    const auto f = probes[1], g = probes[2];
    const auto lhs = fourier(convolve(f, g));
    const auto F = fourier(f), G = fourier(g);
    double e = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) e = std::max(e, std::abs(lhs[i] - F[i] * G[i]));
    s.check("convolution.fourier_diagonal", e <= 1e-8, "max_err=" + sci(e));
  });
  s.run("convolution.approximate_identity", [&] {
    const auto f = sample(FunctionSpec::hat(2), grid);
    double prev = kInfinity;
    bool dec = true;
    std::string detail;
    for (double rho : {1.0, 0.5, 0.25, 0.125}) {
      const double e = mollify_error(f, gauss, rho, l1w);
      dec = dec && e < prev;
      prev = e;
      detail += (detail.empty() ? "" : " ") + sci(e);
    }
    s.check("convolution.approximate_identity", dec, "errors=" + detail);
  });
  s.run("convolution.discretized_convergence", [&] {
    const auto f = sample(FunctionSpec::gaussian(2), grid);
    double prev = kInfinity;
    bool ok = true;
    std::string detail;
    for (double delta : {1.0, 0.5, 0.25, 0.125}) {
      const double e = discretized_conv_error(gauss, f, build_regular_bupu(grid, delta), l1w);
      ok = ok && e <= 0.75 * prev;
      prev = e;
      detail += (detail.empty() ? "" : " ") + sci(e);
    }
    s.check("convolution.discretized_convergence", ok, "errors=" + detail);
  });

  // spaces
  s.run("spaces.moyal", [&] {
    double worst = 0.0;
    for (const auto& f : probes) {
      const double a = norm(f, NormSpec::shubin(0)), b = weighted_lp_norm(f, 2, v0);
      worst = std::max(worst, std::abs(a - b) / b);
    }
    s.check("spaces.moyal", worst <= 1e-6, "max_rel=" + sci(worst));
  });
  s.run("spaces.fourier_invariance", [&] {
    double worst = 0.0;
    for (const auto& f : probes) worst = std::max(worst, fourier_invariance_defect(f, 1.0));
    s.check("spaces.fourier_invariance", worst <= 5e-3, "max_defect=" + sci(worst));
  });
  s.run("spaces.weight_max_equivalence", [&] {
    bool ok = true;
    std::string detail;
    for (double e : {1.0, 2.0}) {
      const auto r = weight_max_equiv_check(e, 10000, options.seed);
      ok = ok && r.min_ratio >= 1 - 1e-12 && r.max_ratio <= std::pow(2.0, e / 2) * (1 + 1e-12);
      detail += "s=" + sci(e) + " [" + sci(r.min_ratio) + "," + sci(r.max_ratio) + "] ";
    }
    s.check("spaces.weight_max_equivalence", ok, detail);
  });
  s.run("spaces.norm_axioms", [&] {
    bool ok = true;
    double worst = 0.0;
    for (const char* spec : {"lp(1,1)", "lp(2,0)", "lp(inf,2)", "katsnelson(1,1)", "shubin(1)", "modulation(1,2,1)"}) {
      const NormSpec ns = NormSpec::parse(spec, 1);
      for (std::size_t i = 0; i + 1 < probes.size(); ++i) {
        const double a = norm(probes[i], ns), b = norm(probes[i + 1], ns);
        const double ab = norm(probes[i] + probes[i + 1], ns);
        ok = ok && ab <= (a + b) * (1 + 1e-9) && a > 0;
        worst = std::max(worst, std::abs(norm(probes[i] * cplx(-2.5, 1.0), ns) / (std::abs(cplx(-2.5, 1.0)) * a) - 1));
      }
      ok = ok && norm(GridFunction::zeros(grid), ns) == 0.0;
    }
    s.check("spaces.norm_axioms", ok && worst <= 1e-12, "homogeneity_dev=" + sci(worst));
  });

  // pipeline
  s.run("pipeline.hat_l1", [&] {
    const auto f = sample(FunctionSpec::hat(2), grid);
    const double eps = 0.05 * norm(f, l1w);
    const auto r = approximate(f, FunctionSpec::gaussian(1), eps, l1w);
    const auto& rep = r.report;
    const bool ledger = rep.e_total <= rep.e_truncate + rep.e_mollify + rep.e_discretize + 1e-8 * norm(f, l1w);
    s.check("pipeline.hat_l1", rep.success && rep.e_total <= eps && ledger,
            "rho=" + sci(rep.rho) + " delta=" + sci(rep.delta) + " nodes=" + std::to_string(rep.node_count) +
                " e_total=" + sci(rep.e_total) + " eps=" + sci(eps));
  });
  s.run("pipeline.shubin_gaussian", [&] {
    const auto f = sample(FunctionSpec::parse("gaussian(2)|shift(1)"), grid);
    const NormSpec q = NormSpec::shubin(1);
    const double eps = 0.05 * norm(f, q);
    const auto r = approximate(f, FunctionSpec::gaussian(1), eps, q);
    s.check("pipeline.shubin_gaussian", r.report.success && r.report.e_total <= eps,
            "e_total=" + sci(r.report.e_total) + " eps=" + sci(eps));
  });

  // two-dimensional smoke
  s.run("smoke.two_dimensional", [&] {
    const Grid g2(2, 4.0, 1.0 / 8.0);
    const auto psi = build_regular_bupu(g2, 0.5);
    const auto k = sample(FunctionSpec::parse("gaussian(1)|shift(0.5,-0.25)"), g2);
    const auto mu = discretize(k, psi);
    cplx mass(0.0, 0.0);
    for (const auto& a : mu.atoms()) mass += a.coef;
    const double e = std::abs(mass - grid_integral(k));
    s.check("smoke.two_dimensional", e <= 1e-12 && std::abs(psi.size() - 0.5 * std::sqrt(2.0)) < 1e-15,
            "mass_err=" + sci(e) + " atoms=" + std::to_string(mu.size()));
  });

  return s.take();
}

} // namespace tfapprox
