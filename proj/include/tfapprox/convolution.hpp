#pragma once

#include "tfapprox/bupu.hpp"
#include "tfapprox/sampling.hpp"
#include "tfapprox/spaces.hpp"

namespace tfapprox {

struct ConvolveInfo {
  /// Fraction of the L1 mass of the uncropped result that falls outside the grid.
  double overflow_fraction = 0.0;
  /// overflow_fraction > 1e-6.
  bool overflow_warning = false;
};

/// (f * g)(x) = h^d sum_t f(t) g(x - t) on the grid of f. Linear (not
/// circular) convolution: both factors are zero-padded to 2N per axis.
GridFunction convolve(const GridFunction& f, const GridFunction& g, ConvolveInfo* info = nullptr);

/// mu * g = sum_i c_i T_{x_i} g. Symbolic windows are evaluated exactly at each
/// shift; sample-only windows need grid-aligned nodes unless `interpolate`.
GridFunction convolve_measure(const DiscreteMeasure& mu, const GridFunction& g, bool interpolate = false);

/// h^d sum g; the value of g^(0).
cplx grid_integral(const GridFunction& g);

/// ||S_rho g * f - f|| in the given norm. g must have unit integral within
/// 1e-8, else NonNormalizedWindow.
double mollify_error(const GridFunction& f, const GridFunction& g, double rho, const NormSpec& norm,
                     TfSampling tf = {});

/// ||g * f - g * D_Psi f||.
double discretized_conv_error(const GridFunction& g, const GridFunction& f, const Bupu& psi,
                              const NormSpec& norm, TfSampling tf = {});

} // namespace tfapprox
