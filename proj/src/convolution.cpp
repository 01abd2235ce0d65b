#include "tfapprox/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfapprox/errors.hpp"
#include "tfapprox/fft.hpp"
#include "tfapprox/operators.hpp"

namespace tfapprox {

GridFunction convolve(const GridFunction& f, const GridFunction& g, ConvolveInfo* info) {
  if (!(f.grid() == g.grid())) throw GridMismatch("convolve: functions live on different grids");
  const Grid& grid = f.grid();
  const int d = grid.dim();
  const int n = grid.points_per_axis();
  const int m = 2 * n;
  std::size_t padded = 1;
  for (int j = 0; j < d; ++j) padded *= static_cast<std::size_t>(m);

  auto pad = [&](const GridFunction& src) {
    std::vector<cplx> out(padded);
    for (std::size_t i = 0; i < src.size(); ++i) {
      std::size_t rem = i, idx = 0, stride = 1;
      for (int j = d - 1; j >= 0; --j) {
        idx += (rem % n) * stride;
        rem /= n;
        stride *= static_cast<std::size_t>(m);
      }
      out[idx] = src[i];
    }
    return out;
  };
  std::vector<cplx> a = pad(f);
  std::vector<cplx> b = pad(g);
  const std::vector<int> shape(d, m);
  FftPlan fwd(shape, FftPlan::Direction::Forward);
  fwd.execute(a);
  fwd.execute(b);
  for (std::size_t i = 0; i < padded; ++i) a[i] *= b[i];
  FftPlan bwd(shape, FftPlan::Direction::Backward);
  bwd.execute(a);
  const double scale = grid.cell_volume() / static_cast<double>(padded);

  // x_m - x_k = (m - k) h and x_j = (j - N/2) h, so the node m of the result is
  // entry m + N/2 of the full linear convolution.
  std::vector<cplx> out(grid.size());
  KahanSum kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t rem = i, idx = 0, stride = 1;
    for (int j = d - 1; j >= 0; --j) {
      idx += (rem % n + n / 2) * stride;
      rem /= n;
      stride *= static_cast<std::size_t>(m);
    }
    out[i] = a[idx] * scale;
    kept.add(std::abs(out[i]));
  }
  if (info) {
    KahanSum all;
    for (const auto& v : a) all.add(std::abs(v) * scale);
    const double total = all.value();
    info->overflow_fraction = total > 0.0 ? std::max(0.0, 1.0 - kept.value() / total) : 0.0;
    info->overflow_warning = info->overflow_fraction > 1e-6;
  }
  GridFunction r(grid, std::move(out));
  return r.mark_interpolated(f.interpolated() || g.interpolated());
}

GridFunction convolve_measure(const DiscreteMeasure& mu, const GridFunction& g, bool interpolate) {
  const Grid& grid = g.grid();
  if (!mu.empty() && mu.dim() != grid.dim()) {
    throw DimensionMismatch("convolve_measure: measure and grid dimensions differ");
  }
  const int d = grid.dim();
  const int n = grid.points_per_axis();
  std::vector<cplx> out(grid.size());
  bool interpolated = g.interpolated();

  if (g.source()) {
    const auto box = g.source()->support_box(d);
    std::vector<double> x(d);
    for (const auto& atom : mu.atoms()) {
      const FunctionSpec shifted = g.source()->shifted(atom.node);
      // Node range per axis touched by the shifted support.
      long lo[3], hi[3];
      for (int j = 0; j < d; ++j) {
        if (box) {
          const double a = (*box)[j].first + atom.node[j];
          const double b = (*box)[j].second + atom.node[j];
          lo[j] = std::max(0L, static_cast<long>(std::floor((a + grid.half_extent()) / grid.spacing())));
          hi[j] = std::min(static_cast<long>(n) - 1,
                           static_cast<long>(std::ceil((b + grid.half_extent()) / grid.spacing())));
        } else {
          lo[j] = 0;
          hi[j] = n - 1;
        }
      }
      bool empty = false;
      std::size_t total = 1;
      for (int j = 0; j < d; ++j) {
        if (hi[j] < lo[j]) empty = true;
        total *= static_cast<std::size_t>(std::max(0L, hi[j] - lo[j] + 1));
      }
      if (empty) continue;
      for (std::size_t t = 0; t < total; ++t) {
        std::size_t r = t, idx = 0;
        long k[3];
        for (int j = d - 1; j >= 0; --j) {
          const long span = hi[j] - lo[j] + 1;
          k[j] = lo[j] + static_cast<long>(r % span);
          r /= span;
        }
        for (int j = 0; j < d; ++j) {
          idx = idx * n + static_cast<std::size_t>(k[j]);
          x[j] = grid.coord(static_cast<int>(k[j]));
        }
        out[idx] += atom.coef * shifted.eval(x);
      }
    }
  } else {
    for (const auto& atom : mu.atoms()) {
      const GridFunction t = translate(g, atom.node, interpolate);
      interpolated = interpolated || t.interpolated();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += atom.coef * t[i];
    }
  }
  GridFunction r(grid, std::move(out));
  return r.mark_interpolated(interpolated);
}

cplx grid_integral(const GridFunction& g) {
  KahanSum re, im;
  for (const auto& v : g.samples()) {
    re.add(v.real());
    im.add(v.imag());
  }
  return cplx(re.value(), im.value()) * g.grid().cell_volume();
}

double mollify_error(const GridFunction& f, const GridFunction& g, double rho, const NormSpec& norm_spec,
                     TfSampling tf) {
  const cplx mass = grid_integral(g);
  if (std::abs(mass - 1.0) > 1e-8) {
    throw NonNormalizedWindow("mollify_error: window integral is " + std::to_string(mass.real()) + " + " +
                              std::to_string(mass.imag()) + "i, expected 1");
  }
  const GridFunction g_rho = dilate_compress(g, rho);
  return norm(convolve(g_rho, f) - f, norm_spec, tf);
}

double discretized_conv_error(const GridFunction& g, const GridFunction& f, const Bupu& psi,
                              const NormSpec& norm_spec, TfSampling tf) {
  const GridFunction exact = convolve(g, f);
  const GridFunction approx = convolve_measure(discretize(f, psi), g);
  return norm(exact - approx, norm_spec, tf);
}

} // namespace tfapprox
