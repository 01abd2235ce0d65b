#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tfapprox/function_spec.hpp"
#include "tfapprox/weights.hpp"

namespace tfapprox {

/// Uniform symmetric grid covering [-L, L)^d with spacing h and N = 2L/h
/// nodes per axis. Node k on an axis sits at -L + k h; the origin is node N/2.
class Grid {
public:
  /// Throws InvalidArgument unless 2L/h is an even integer (relative tolerance 1e-9).
  Grid(int dim, double half_extent, double spacing);

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  double half_extent() const { return L_; }
  int points_per_axis() const { return n_; }
  std::size_t size() const { return size_; }
  /// h^d, the quadrature weight of a node.
  double cell_volume() const { return cell_; }

  double coord(int k) const { return -L_ + k * h_; }
  /// Writes the coordinates of flat (row-major) node `index` into `out`.
  void node(std::size_t index, std::span<double> out) const;
  std::vector<double> node(std::size_t index) const;

  /// Grid of the Fourier variable: spacing 1/(2L), half-extent 1/(2h), same N.
  Grid dual() const;
  /// Same extent, spacing h / factor.
  Grid refined(int factor) const;

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && h_ == o.h_ && L_ == o.L_;
  }

private:
  int dim_;
  double h_;
  double L_;
  int n_;
  std::size_t size_;
  double cell_;
};

/// Complex samples of a function on a Grid. Immutable once built.
///
/// When the function was sampled from a FunctionSpec that description is kept; the
/// operators use it to translate and dilate exactly instead of resampling.
class GridFunction {
public:
  GridFunction(Grid grid, std::vector<cplx> samples);
  GridFunction(Grid grid, std::vector<cplx> samples, std::optional<FunctionSpec> source);

  static GridFunction zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  const cplx& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }

  const std::optional<FunctionSpec>& source() const { return source_; }
  /// True when some stage produced the samples by linear interpolation.
  bool interpolated() const { return interpolated_; }
  GridFunction& mark_interpolated(bool v = true) {
    interpolated_ = v;
    return *this;
  }

  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;
  GridFunction operator*(cplx c) const;
  friend GridFunction operator*(cplx c, const GridFunction& f) { return f * c; }

  /// Drops the symbolic source (the result of arithmetic has none).
  GridFunction without_source() const;

private:
  Grid grid_;
  std::vector<cplx> samples_;
  std::optional<FunctionSpec> source_;
  bool interpolated_ = false;
};

/// Pointwise evaluation of `spec` at the grid nodes.
GridFunction sample(const FunctionSpec& spec, const Grid& grid);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (h^d sum |f w|^p)^{1/p}, or max |f w| for p = infinity.
double weighted_lp_norm(const GridFunction& f, double p, const Weight& w);

/// Continuous-normalized transform f^(xi) = int f(x) exp(-2 pi i x.xi) dx,
/// sampled on grid().dual().
GridFunction fourier(const GridFunction& f);

/// Bilinear pairing h^d sum sigma f (no conjugation).
cplx inner(const GridFunction& f, const GridFunction& sigma);
/// h^d sum f conj(g).
cplx hermitian_inner(const GridFunction& f, const GridFunction& g);

/// Fraction of the weighted L1 mass sitting in the outer 10% shell
/// (max_j |x_j| >= 0.9 L). Zero for the zero function.
double tail_mass(const GridFunction& f, const Weight& w);

/// Compensated (Neumaier) summation in a fixed order.
class KahanSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      c_ += (sum_ - t) + v;
    } else {
      c_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

} // namespace tfapprox
