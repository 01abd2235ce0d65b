#pragma once

#include <cstddef>
#include <vector>

#include "tfapprox/sampling.hpp"
#include "tfapprox/weights.hpp"

namespace tfapprox {

/// One atom c * delta_x of a finite discrete measure.
struct Atom {
  std::vector<double> node;
  cplx coef;
};

/// Finite linear combination of point masses on R^d.
class DiscreteMeasure {
public:
  explicit DiscreteMeasure(int dim) : dim_(dim) {}
  DiscreteMeasure(int dim, std::vector<Atom> atoms);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  void add(std::vector<double> node, cplx coef);
  DiscreteMeasure scaled(cplx c) const;

private:
  int dim_;
  std::vector<Atom> atoms_;
};

/// sum_i |c_i| w(x_i)
double measure_norm(const DiscreteMeasure& mu, const Weight& w);

/// Regular bounded uniform partition of unity made of tensor hat functions
///   psi_i(x) = prod_j max(0, 1 - |x_j - c_ij| / delta)
/// centered on delta Z^d inside [-L + delta, L - delta]^d. The hats sum to one
/// on that box, every center is a grid node, and psi_i(x_j) = [i == j].
class Bupu {
public:
  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  double lattice_spacing() const { return delta_; }
  /// Support radius: supp psi_i lies in the closed ball B_size(x_i).
  double size() const { return size_; }
  std::size_t center_count() const { return count_; }
  std::vector<double> center(std::size_t i) const;
  /// Flat grid index of center i.
  std::size_t center_node(std::size_t i) const;
  double psi(std::size_t i, std::span<const double> x) const;
  /// Half-width of the box on which all psi_i sum to one.
  double partition_half_extent() const { return lattice_max_ * delta_; }

  /// Node offsets (in grid steps) of the support, and hat value 1 - |m| h / delta.
  int support_steps() const { return steps_; }
  double hat_value(int offset) const { return profile_[offset + steps_]; }

private:
  friend Bupu build_regular_bupu(const Grid& grid, double delta);
  Bupu(Grid grid, double delta);

  Grid grid_;
  double delta_;
  double size_;
  int steps_;                // delta / h
  int lattice_max_;          // centers are m delta for |m| <= lattice_max_
  std::size_t per_axis_;
  std::size_t count_;
  std::vector<double> profile_;
};

/// Throws InvalidArgument when delta is not a multiple of h or delta > L/4.
Bupu build_regular_bupu(const Grid& grid, double delta);

/// D_Psi applied to k dx: atoms (x_i, h^d sum k psi_i). Zero atoms are dropped.
DiscreteMeasure discretize(const GridFunction& k, const Bupu& psi);

/// Sp_Psi f = sum_i f(x_i) psi_i, on the grid.
GridFunction spline_quasi_interp(const GridFunction& f, const Bupu& psi);

/// |sum_i c_i f(x_i) - h^d sum k Sp_Psi f|, the defect of [D_Psi mu](f) = mu(Sp_Psi f).
double adjointness_residual(const GridFunction& k, const GridFunction& f, const Bupu& psi);

} // namespace tfapprox
