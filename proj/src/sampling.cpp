#include "tfapprox/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfapprox/errors.hpp"
#include "tfapprox/fft.hpp"
#include "detail.hpp"

namespace tfapprox {

Grid::Grid(int dim, double half_extent, double spacing) : dim_(dim), h_(spacing), L_(half_extent) {
  if (dim < 1 || dim > 3) {
    throw InvalidArgument("grid dimension must be 1, 2 or 3");
  }
  if (!(spacing > 0.0) || !(half_extent > 0.0)) {
    throw InvalidArgument("grid spacing and half-extent must be positive");
  }
  const double ratio = 2.0 * half_extent / spacing;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * ratio || rounded < 2.0) {
    throw InvalidArgument("grid: 2L/h = " + std::to_string(ratio) + " is not an integer");
  }
  n_ = static_cast<int>(rounded);
  if (n_ % 2 != 0) {
    throw InvalidArgument("grid: points per axis must be even, got " + std::to_string(n_));
  }
  size_ = 1;
  for (int j = 0; j < dim; ++j) size_ *= static_cast<std::size_t>(n_);
  cell_ = std::pow(h_, dim_);
}

void Grid::node(std::size_t index, std::span<double> out) const {
  for (int j = dim_ - 1; j >= 0; --j) {
    out[j] = coord(static_cast<int>(index % n_));
    index /= n_;
  }
}

std::vector<double> Grid::node(std::size_t index) const {
  std::vector<double> x(dim_);
  node(index, x);
  return x;
}

Grid Grid::dual() const { return Grid(dim_, 0.5 / h_, 0.5 / L_); }

Grid Grid::refined(int factor) const {
  if (factor < 1) throw InvalidArgument("refinement factor must be >= 1");
  return Grid(dim_, L_, h_ / factor);
}

GridFunction::GridFunction(Grid grid, std::vector<cplx> samples)
    : GridFunction(std::move(grid), std::move(samples), std::nullopt) {}

GridFunction::GridFunction(Grid grid, std::vector<cplx> samples, std::optional<FunctionSpec> source)
    : grid_(std::move(grid)), samples_(std::move(samples)), source_(std::move(source)) {
  if (samples_.size() != grid_.size()) {
    throw InvalidArgument("sample count " + std::to_string(samples_.size()) +
                          " does not match grid size " + std::to_string(grid_.size()));
  }
}

GridFunction GridFunction::zeros(const Grid& grid) {
  return GridFunction(grid, std::vector<cplx>(grid.size()), FunctionSpec::zero());
}

namespace {
void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw GridMismatch(std::string(what) + ": functions live on different grids");
}
} // namespace

GridFunction GridFunction::operator+(const GridFunction& o) const {
  require_same_grid(grid_, o.grid_, "sum");
  std::vector<cplx> out(samples_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = samples_[i] + o.samples_[i];
  GridFunction r(grid_, std::move(out));
  r.interpolated_ = interpolated_ || o.interpolated_;
  return r;
}

GridFunction GridFunction::operator-(const GridFunction& o) const {
  require_same_grid(grid_, o.grid_, "difference");
  std::vector<cplx> out(samples_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = samples_[i] - o.samples_[i];
  GridFunction r(grid_, std::move(out));
  r.interpolated_ = interpolated_ || o.interpolated_;
  return r;
}

GridFunction GridFunction::operator*(cplx c) const {
  std::vector<cplx> out(samples_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * samples_[i];
  std::optional<FunctionSpec> src;
  if (source_) src = source_->scaled(c);
  GridFunction r(grid_, std::move(out), std::move(src));
  r.interpolated_ = interpolated_;
  return r;
}

GridFunction GridFunction::without_source() const {
  GridFunction r(grid_, samples_);
  r.interpolated_ = interpolated_;
  return r;
}

GridFunction sample(const FunctionSpec& spec, const Grid& grid) {
  std::vector<cplx> out(grid.size());
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    grid.node(i, x);
    out[i] = spec.eval(x);
  }
  return GridFunction(grid, std::move(out), spec);
}

double weighted_lp_norm(const GridFunction& f, double p, const Weight& w) {
  const Grid& g = f.grid();
  if (w.dimension() != g.dim()) {
    throw DimensionMismatch("weighted_lp_norm: weight dimension " + std::to_string(w.dimension()) +
                            " vs grid dimension " + std::to_string(g.dim()));
  }
  if (!(p >= 1.0)) {
    throw InvalidArgument("weighted_lp_norm: p must be >= 1");
  }
  std::vector<double> x(g.dim());
  const bool trivial_weight = w.exponent() == 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      double v = std::abs(f[i]);
      if (v == 0.0) continue;
      if (!trivial_weight) {
        g.node(i, x);
        v *= w(x);
      }
      m = std::max(m, v);
    }
    return m;
  }
  KahanSum acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double v = std::abs(f[i]);
    if (v == 0.0) continue;
    if (!trivial_weight) {
      g.node(i, x);
      v *= w(x);
    }
    acc.add(p == 1.0 ? v : (p == 2.0 ? v * v : std::pow(v, p)));
  }
  const double s = acc.value() * g.cell_volume();
  return p == 1.0 ? s : (p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p));
}

namespace detail {

CenteredFourier::CenteredFourier(const Grid& grid)
    : plan_(std::vector<int>(grid.dim(), grid.points_per_axis()), FftPlan::Direction::Forward),
      sign_in_(grid.size()), sign_out_(grid.size()) {
  // Centered indices: x_k = (k - N/2) h, xi_j = (j - N/2) / (2L). The phase
  // exp(-2 pi i x_k xi_j) factors into the plain DFT kernel times
  // (-1)^k (-1)^j (-1)^{N/2} per axis.
  const int n = grid.points_per_axis();
  const int d = grid.dim();
  double scale = grid.cell_volume();
  if ((n / 2) % 2 != 0 && d % 2 != 0) scale = -scale;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t index = i;
    int s = 0;
    for (int j = 0; j < d; ++j) {
      s += static_cast<int>(index % n);
      index /= n;
    }
    sign_in_[i] = (s % 2) ? -1.0 : 1.0;
    sign_out_[i] = sign_in_[i] * scale;
  }
}

void CenteredFourier::apply(std::vector<cplx>& buf) {
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= sign_in_[i];
  plan_.execute(buf);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= sign_out_[i];
}

} // namespace detail

GridFunction fourier(const GridFunction& f) {
  std::vector<cplx> buf(f.samples().begin(), f.samples().end());
  detail::CenteredFourier(f.grid()).apply(buf);
  return GridFunction(f.grid().dual(), std::move(buf));
}

cplx inner(const GridFunction& f, const GridFunction& sigma) {
  require_same_grid(f.grid(), sigma.grid(), "inner");
  KahanSum re, im;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const cplx v = sigma[i] * f[i];
    re.add(v.real());
    im.add(v.imag());
  }
  return cplx(re.value(), im.value()) * f.grid().cell_volume();
}

cplx hermitian_inner(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f.grid(), g.grid(), "hermitian_inner");
  KahanSum re, im;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const cplx v = f[i] * std::conj(g[i]);
    re.add(v.real());
    im.add(v.imag());
  }
  return cplx(re.value(), im.value()) * f.grid().cell_volume();
}

double tail_mass(const GridFunction& f, const Weight& w) {
  const Grid& g = f.grid();
  if (w.dimension() != g.dim()) throw DimensionMismatch("tail_mass: weight dimension mismatch");
  std::vector<double> x(g.dim());
  const double edge = 0.9 * g.half_extent();
  KahanSum total, shell;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    if (a == 0.0) continue;
    g.node(i, x);
    const double v = a * w(x);
    total.add(v);
    double m = 0.0;
    for (double xj : x) m = std::max(m, std::abs(xj));
    if (m >= edge) shell.add(v);
  }
  return total.value() > 0.0 ? shell.value() / total.value() : 0.0;
}

} // namespace tfapprox
