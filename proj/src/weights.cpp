#include "tfapprox/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "tfapprox/errors.hpp"

namespace tfapprox {

Weight::Weight(double exponent, int dimension) : s_(exponent), n_(dimension) {
  if (dimension < 1) {
    throw InvalidArgument("weight dimension must be positive");
  }
  if (!std::isfinite(exponent)) {
    throw InvalidArgument("weight exponent must be finite");
  }
}

double Weight::from_norm2(double r2) const {
  if (s_ == 0.0) {
    return 1.0;
  }
  return std::pow(1.0 + r2, 0.5 * s_);
}

double Weight::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw DimensionMismatch("weight of dimension " + std::to_string(n_) +
                            " evaluated at a point of dimension " + std::to_string(x.size()));
  }
  double r2 = 0.0;
  for (double xi : x) {
    r2 += xi * xi;
  }
  return from_norm2(r2);
}

double c1_constant(const Weight& w, double radius) {
  if (!w.is_submultiplicative()) {
    throw SignalsNotSubmultiplicative("c1_constant requires s >= 0, got s = " +
                                      std::to_string(w.exponent()));
  }
  if (radius < 0.0) {
    throw InvalidArgument("c1_constant radius must be nonnegative");
  }
  // Radial and increasing, so the max sits on the sphere.
  return w.from_norm2(radius * radius);
}

namespace {

template <class Ratio>
InequalityReport sample_pairs(int n, std::int64_t pair_count, double box_radius,
                              std::uint64_t seed, double constant, Ratio&& ratio) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-box_radius, box_radius);
  std::vector<double> x(n), y(n), xy(n);
  InequalityReport rep;
  rep.pairs = pair_count;
  for (std::int64_t k = 0; k < pair_count; ++k) {
    for (int j = 0; j < n; ++j) {
      x[j] = coord(rng);
      y[j] = coord(rng);
      xy[j] = x[j] + y[j];
    }
    const double r = ratio(x, y, xy);
    rep.worst_ratio = std::max(rep.worst_ratio, r);
    if (r > constant * (1.0 + kInequalitySlack)) {
      ++rep.violations;
    }
  }
  return rep;
}

} // namespace

InequalityReport check_submultiplicative(const Weight& w, std::int64_t pair_count,
                                         double box_radius, std::uint64_t seed,
                                         double constant) {
  return sample_pairs(w.dimension(), pair_count, box_radius, seed, constant,
                      [&](const auto& x, const auto& y, const auto& xy) {
                        return w(xy) / (w(x) * w(y));
                      });
}

InequalityReport check_moderate(const Weight& m, const Weight& w, std::int64_t pair_count,
                                double box_radius, std::uint64_t seed,
                                double constant) {
  if (m.dimension() != w.dimension()) {
    throw DimensionMismatch("moderate check needs weights of equal dimension");
  }
  return sample_pairs(m.dimension(), pair_count, box_radius, seed, constant,
                      [&](const auto& x, const auto& y, const auto& xy) {
                        return m(xy) / (m(x) * w(y));
                      });
}

double peetre_constant(const Weight& w) {
  return std::pow(2.0, std::abs(w.exponent()) / 2.0);
}

} // namespace tfapprox
