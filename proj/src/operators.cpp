#include "tfapprox/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tfapprox/errors.hpp"

namespace tfapprox {

namespace {

void require_dim(const Grid& g, std::size_t n, const char* what) {
  if (static_cast<int>(n) != g.dim()) {
    throw DimensionMismatch(std::string(what) + ": point dimension " + std::to_string(n) +
                            " does not match grid dimension " + std::to_string(g.dim()));
  }
}

bool is_grid_aligned(double a, double h, long& steps) {
  const double r = a / h;
  const double k = std::round(r);
  if (std::abs(r - k) > 1e-9 * std::max(1.0, std::abs(r))) return false;
  steps = static_cast<long>(k);
  return true;
}

} // namespace

cplx interpolate_at(const GridFunction& f, std::span<const double> x) {
  const Grid& g = f.grid();
  require_dim(g, x.size(), "interpolate_at");
  const int d = g.dim();
  const int n = g.points_per_axis();
  long base[3];
  double frac[3];
  for (int j = 0; j < d; ++j) {
    const double r = (x[j] + g.half_extent()) / g.spacing();
    const double fl = std::floor(r);
    base[j] = static_cast<long>(fl);
    frac[j] = r - fl;
  }
  cplx acc(0.0, 0.0);
  for (int corner = 0; corner < (1 << d); ++corner) {
    double wgt = 1.0;
    std::size_t idx = 0;
    bool inside = true;
    for (int j = 0; j < d; ++j) {
      const int bit = (corner >> j) & 1;
      const long k = base[j] + bit;
      wgt *= bit ? frac[j] : 1.0 - frac[j];
      if (k < 0 || k >= n) {
        inside = false;
        break;
      }
      idx = idx * n + static_cast<std::size_t>(k);
    }
    if (inside && wgt != 0.0) acc += wgt * f[idx];
  }
  return acc;
}

GridFunction translate(const GridFunction& f, std::span<const double> a, bool interpolate) {
  const Grid& g = f.grid();
  require_dim(g, a.size(), "translate");
  if (f.source()) {
    return sample(f.source()->shifted(a), g);
  }
  const int d = g.dim();
  const int n = g.points_per_axis();
  long steps[3] = {0, 0, 0};
  bool aligned = true;
  for (int j = 0; j < d; ++j) aligned = aligned && is_grid_aligned(a[j], g.spacing(), steps[j]);

  std::vector<cplx> out(g.size());
  if (aligned) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::size_t rem = i, src = 0, stride = 1;
      bool inside = true;
      for (int j = d - 1; j >= 0; --j) {
        const long k = static_cast<long>(rem % n) - steps[j];
        rem /= n;
        if (k < 0 || k >= n) {
          inside = false;
          break;
        }
        src += static_cast<std::size_t>(k) * stride;
        stride *= n;
      }
      if (inside) out[i] = f[src];
    }
    GridFunction r(g, std::move(out));
    return r.mark_interpolated(f.interpolated());
  }
  if (!interpolate) {
    throw OffGridShift("translate: shift is not a multiple of the grid spacing h = " +
                       std::to_string(g.spacing()) + " (pass interpolate = true)");
  }
  std::vector<double> x(d);
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.node(i, x);
    for (int j = 0; j < d; ++j) x[j] -= a[j];
    out[i] = interpolate_at(f, x);
  }
  GridFunction r(g, std::move(out));
  return r.mark_interpolated();
}

GridFunction modulate(const GridFunction& f, std::span<const double> y) {
  const Grid& g = f.grid();
  require_dim(g, y.size(), "modulate");
  std::vector<cplx> out(g.size());
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.node(i, x);
    double phase = 0.0;
    for (int j = 0; j < g.dim(); ++j) phase += y[j] * x[j];
    out[i] = std::polar(1.0, 2.0 * std::numbers::pi * phase) * f[i];
  }
  std::optional<FunctionSpec> src;
  if (f.source()) src = f.source()->modulated(y);
  GridFunction r(g, std::move(out), std::move(src));
  return r.mark_interpolated(f.interpolated());
}

GridFunction dilate_compress(const GridFunction& g, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("dilate_compress: rho must be positive");
  if (rho == 1.0) return g;
  if (g.source()) {
    return sample(g.source()->compressed(rho), g.grid());
  }
  const Grid& grid = g.grid();
  const double amp = std::pow(rho, -static_cast<double>(grid.dim()));
  std::vector<cplx> out(grid.size());
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    grid.node(i, x);
    for (double& xj : x) xj /= rho;
    out[i] = amp * interpolate_at(g, x);
  }
  GridFunction r(grid, std::move(out));
  return r.mark_interpolated();
}

GridFunction tf_shift(const GridFunction& f, const TFPoint& z, bool interpolate) {
  return modulate(translate(f, z.x, interpolate), z.y);
}

double empirical_opnorm(const GridOperator& op, const NormFunction& norm,
                        std::span<const GridFunction> probes) {
  if (probes.empty()) throw EmptyProbeSet("empirical_opnorm: probe set is empty");
  double best = 0.0;
  for (const auto& f : probes) {
    const double nf = norm(f);
    if (!(nf > 0.0)) throw ZeroFunction("empirical_opnorm: probe has zero norm");
    best = std::max(best, norm(op(f)) / nf);
  }
  return best;
}

} // namespace tfapprox
