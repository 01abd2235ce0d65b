#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tfapprox/operators.hpp"
#include "tfapprox/sampling.hpp"
#include "tfapprox/weights.hpp"

namespace tfapprox {

struct NormSpec;

/// ||f w||_p on R^d.
struct WeightedLp {
  double p;
  Weight w;
};

/// ||f m1||_2 + ||f^ m2||_2, the norm of L^2_{m1} intersected with F L^2_{m2}.
struct Katsnelson {
  Weight m1;
  Weight m2;
};

/// Mixed norm of the short-time Fourier transform: for each frequency y the
/// weighted L^p norm over x, then L^q over y. `w` lives on R^{2d} and is
/// evaluated at (x, y). The window is rescaled to unit L^2 norm.
struct Modulation {
  double p;
  double q;
  Weight w;
  FunctionSpec window;
};

/// Shubin class Q_s: Modulation(2, 2, v_s on R^{2d}, window).
struct Shubin {
  double s;
  FunctionSpec window;
};

/// Sum of the member norms (norm of an intersection space).
struct SumOfNorms {
  std::vector<NormSpec> parts;
};

struct NormSpec {
  std::variant<WeightedLp, Katsnelson, Modulation, Shubin, SumOfNorms> kind;

  /// Parses `lp(p,s)` (p may be `inf`), `katsnelson(s1,s2)`,
  /// `modulation(p,q,s)`, `shubin(s)`, and sums `a + b`. Weights are built
  /// for dimension `dim` (2 dim on the time-frequency plane); STFT norms use
  /// the Gaussian window.
  static NormSpec parse(std::string_view text, int dim);

  static NormSpec weighted_lp(double p, double s, int dim) { return {WeightedLp{p, Weight(s, dim)}}; }
  static NormSpec shubin(double s) { return {Shubin{s, FunctionSpec::gaussian(1.0)}}; }

  /// Stable text identifier, parseable by parse().
  std::string id() const;
};

/// Modulation spec equivalent to a Shubin spec for dimension dim.
Modulation as_modulation(const Shubin& s, int dim);

/// Sampling of the time-frequency plane used by STFT-based norms.
///
/// Shifts x run over base grid nodes with step `x_stride` h per axis and the
/// frequencies y over the dual grid. x_stride = 0 picks the largest stride with
/// step <= 1/8 and then doubles it while more than 4096 shifts would be used.
struct TfSampling {
  int x_stride = 0;
};

int resolve_x_stride(const Grid& grid, TfSampling tf);

/// V_g sigma on the sampled time-frequency plane, x-major.
struct StftResult {
  Grid base;
  Grid freq;        ///< base.dual()
  int x_stride = 1;
  int x_per_axis = 0;
  std::vector<cplx> values; ///< values[ix * freq.size() + iy]

  std::size_t x_count() const;
  std::vector<double> x_node(std::size_t ix) const;
  double x_cell() const;
  cplx at(std::size_t ix, std::size_t iy) const { return values[ix * freq.size() + iy]; }
};

/// V_g sigma(x, y) = <sigma, M_y T_x g> = int sigma(t) conj(g(t - x)) exp(-2 pi i y.t) dt.
/// The window is used as given (no normalization). Throws ZeroFunction when
/// ||g||_2 = 0 on the grid.
StftResult stft(const GridFunction& sigma, const FunctionSpec& window, TfSampling tf = {});

double norm(const GridFunction& f, const NormSpec& spec, TfSampling tf = {});
NormFunction norm_function(const NormSpec& spec, TfSampling tf = {});

struct EmbeddingReport {
  bool embeds = false;
  double inf_m1 = 0.0;
  double inf_m2 = 0.0;
};

/// Whether L^2_{m1} intersected with F L^2_{m2} sits inside L^2, i.e. both
/// weights are bounded away from zero on R^d. inf_m1 / inf_m2 are the minima
/// over the grid nodes; the decision uses the infimum over all of R^d.
EmbeddingReport embed_check_L2(const Weight& m1, const Weight& m2, const Grid& grid);

struct RatioReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Samples z = (x, y) in [-radius, radius]^{2 dim} and reports the range of
/// v_s(z) / max(v_s(x), v_s(y)), which lies in [1, 2^{s/2}].
RatioReport weight_max_equiv_check(double s, std::int64_t sample_count, std::uint64_t seed,
                                   int dim = 1, double radius = 50.0);

/// | ||f^||_{Q_s} - ||f||_{Q_s} | / ||f||_{Q_s} with the Gaussian window.
double fourier_invariance_defect(const GridFunction& f, double s, TfSampling tf = {});

struct ShiftExponents {
  double translation = 0.0;
  double modulation = 0.0;
};

/// Smallest exponents n1, n2 such that ||T_x f|| <= <x>^{n1} ||f|| and
/// ||M_y f|| <= <y>^{n2} ||f|| hold on the probe family for grid-aligned
/// shifts along the first axis of size 1, 2, 4, ... up to max_shift.
ShiftExponents estimate_shift_exponents(const NormSpec& spec, std::span<const GridFunction> probes,
                                        double max_shift, TfSampling tf = {});

} // namespace tfapprox
