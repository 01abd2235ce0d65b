#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tfapprox/sampling.hpp"

namespace tfapprox {

/// Point z = (x, y) of the time-frequency plane R^{2d}.
struct TFPoint {
  std::vector<double> x;
  std::vector<double> y;
};

/// T_a f(t) = f(t - a).
///
/// Functions carrying a FunctionSpec are re-evaluated exactly, so any shift is
/// allowed. Otherwise samples move with zero extension (nothing wraps); a shift
/// that is not a multiple of h needs `interpolate` and then uses multilinear
/// interpolation. Throws OffGridShift otherwise.
GridFunction translate(const GridFunction& f, std::span<const double> a, bool interpolate = false);

/// M_y f(t) = exp(2 pi i y.t) f(t).
GridFunction modulate(const GridFunction& f, std::span<const double> y);

/// S_rho g(t) = rho^{-d} g(t / rho), on the same grid. Resamples the
/// FunctionSpec when present, else interpolates and flags the result.
GridFunction dilate_compress(const GridFunction& g, double rho);

/// pi(z) f = M_y T_x f.
GridFunction tf_shift(const GridFunction& f, const TFPoint& z, bool interpolate = false);

/// Multilinear interpolation of the samples at an arbitrary point; zero outside the grid.
cplx interpolate_at(const GridFunction& f, std::span<const double> x);

using GridOperator = std::function<GridFunction(const GridFunction&)>;
using NormFunction = std::function<double(const GridFunction&)>;

/// max over probes of ||op f|| / ||f||: a lower bound for the operator norm.
/// Throws EmptyProbeSet for no probes and ZeroFunction for a zero probe.
double empirical_opnorm(const GridOperator& op, const NormFunction& norm,
                        std::span<const GridFunction> probes);

} // namespace tfapprox
