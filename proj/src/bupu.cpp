#include "tfapprox/bupu.hpp"

#include <cmath>
#include <string>

#include "tfapprox/errors.hpp"

namespace tfapprox {

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
  for (auto& a : atoms) add(std::move(a.node), a.coef);
}

void DiscreteMeasure::add(std::vector<double> node, cplx coef) {
  if (static_cast<int>(node.size()) != dim_) {
    throw DimensionMismatch("atom node has dimension " + std::to_string(node.size()) +
                            ", measure has dimension " + std::to_string(dim_));
  }
  atoms_.push_back({std::move(node), coef});
}

DiscreteMeasure DiscreteMeasure::scaled(cplx c) const {
  DiscreteMeasure out(dim_);
  out.atoms_ = atoms_;
  for (auto& a : out.atoms_) a.coef *= c;
  return out;
}

double measure_norm(const DiscreteMeasure& mu, const Weight& w) {
  if (!mu.empty() && w.dimension() != mu.dim()) {
    throw DimensionMismatch("measure_norm: weight dimension mismatch");
  }
  KahanSum acc;
  for (const auto& a : mu.atoms()) acc.add(std::abs(a.coef) * w(a.node));
  return acc.value();
}

Bupu::Bupu(Grid grid, double delta) : grid_(std::move(grid)), delta_(delta) {
  const double h = grid_.spacing();
  const double r = delta / h;
  steps_ = static_cast<int>(std::lround(r));
  if (!(delta > 0.0) || std::abs(r - steps_) > 1e-9 * r || steps_ < 1) {
    throw InvalidArgument("BUPU lattice spacing " + std::to_string(delta) +
                          " is not a positive multiple of h = " + std::to_string(h));
  }
  if (delta > grid_.half_extent() / 4.0 * (1.0 + 1e-12)) {
    throw InvalidArgument("BUPU lattice spacing " + std::to_string(delta) +
                          " is too coarse for half-extent " + std::to_string(grid_.half_extent()));
  }
  delta_ = steps_ * h;
  size_ = delta_ * std::sqrt(static_cast<double>(grid_.dim()));
  lattice_max_ = static_cast<int>(std::floor((grid_.half_extent() - delta_) / delta_ + 1e-9));
  per_axis_ = static_cast<std::size_t>(2 * lattice_max_ + 1);
  count_ = 1;
  for (int j = 0; j < grid_.dim(); ++j) count_ *= per_axis_;
  profile_.resize(2 * steps_ + 1);
  for (int m = -steps_; m <= steps_; ++m) {
    profile_[m + steps_] = 1.0 - std::abs(m) / static_cast<double>(steps_);
  }
}

Bupu build_regular_bupu(const Grid& grid, double delta) { return Bupu(grid, delta); }

std::vector<double> Bupu::center(std::size_t i) const {
  std::vector<double> c(dim());
  for (int j = dim() - 1; j >= 0; --j) {
    const long m = static_cast<long>(i % per_axis_) - lattice_max_;
    i /= per_axis_;
    c[j] = m * delta_;
  }
  return c;
}

std::size_t Bupu::center_node(std::size_t i) const {
  const int n = grid_.points_per_axis();
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int j = dim() - 1; j >= 0; --j) {
    const long m = static_cast<long>(i % per_axis_) - lattice_max_;
    i /= per_axis_;
    idx += static_cast<std::size_t>(n / 2 + m * steps_) * stride;
    stride *= static_cast<std::size_t>(n);
  }
  return idx;
}

double Bupu::psi(std::size_t i, std::span<const double> x) const {
  const auto c = center(i);
  double v = 1.0;
  for (int j = 0; j < dim() && v > 0.0; ++j) {
    v *= std::max(0.0, 1.0 - std::abs(x[j] - c[j]) / delta_);
  }
  return v;
}

namespace {

// Calls fn(flat_index, psi_value) for every grid node in the open support of psi_i.
template <class Fn>
void for_each_support_node(const Bupu& psi, std::size_t i, Fn&& fn) {
  const int d = psi.dim();
  const int n = psi.grid().points_per_axis();
  const int s = psi.support_steps();
  const std::size_t center = psi.center_node(i);
  long c[3];
  std::size_t rem = center;
  for (int j = d - 1; j >= 0; --j) {
    c[j] = static_cast<long>(rem % n);
    rem /= n;
  }
  const int width = 2 * s - 1; // offsets -(s-1) .. s-1; psi vanishes at +-s
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(width);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t r = t, idx = 0;
    double v = 1.0;
    for (int j = 0; j < d; ++j) {
      // j-th axis digit, most significant first
      std::size_t div = 1;
      for (int q = j + 1; q < d; ++q) div *= static_cast<std::size_t>(width);
      const int off = static_cast<int>((r / div) % width) - (s - 1);
      v *= psi.hat_value(off);
      idx = idx * n + static_cast<std::size_t>(c[j] + off);
    }
    fn(idx, v);
  }
}

} // namespace

DiscreteMeasure discretize(const GridFunction& k, const Bupu& psi) {
  if (!(k.grid() == psi.grid())) throw GridMismatch("discretize: function and BUPU grids differ");
  DiscreteMeasure mu(psi.dim());
  const double cell = k.grid().cell_volume();
  for (std::size_t i = 0; i < psi.center_count(); ++i) {
    KahanSum re, im;
    for_each_support_node(psi, i, [&](std::size_t idx, double v) {
      const cplx t = k[idx] * v;
      re.add(t.real());
      im.add(t.imag());
    });
    const cplx c = cplx(re.value(), im.value()) * cell;
    if (std::abs(c) != 0.0) mu.add(psi.center(i), c);
  }
  return mu;
}

GridFunction spline_quasi_interp(const GridFunction& f, const Bupu& psi) {
  if (!(f.grid() == psi.grid())) throw GridMismatch("spline_quasi_interp: grids differ");
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < psi.center_count(); ++i) {
    const cplx fi = f[psi.center_node(i)];
    if (fi == cplx(0.0, 0.0)) continue;
    for_each_support_node(psi, i, [&](std::size_t idx, double v) { out[idx] += fi * v; });
  }
  return GridFunction(f.grid(), std::move(out));
}

double adjointness_residual(const GridFunction& k, const GridFunction& f, const Bupu& psi) {
  const DiscreteMeasure mu = discretize(k, psi);
  // Left side: the discrete measure acting on f through the center samples.
  KahanSum lre, lim;
  const int d = psi.dim();
  const int n = f.grid().points_per_axis();
  const double h = f.grid().spacing();
  for (const auto& a : mu.atoms()) {
    std::size_t idx = 0;
    for (int j = 0; j < d; ++j) {
      idx = idx * n + static_cast<std::size_t>(std::lround((a.node[j] + f.grid().half_extent()) / h));
    }
    const cplx t = a.coef * f[idx];
    lre.add(t.real());
    lim.add(t.imag());
  }
  const cplx lhs(lre.value(), lim.value());
  const cplx rhs = inner(k, spline_quasi_interp(f, psi));
  return std::abs(lhs - rhs);
}

} // namespace tfapprox
