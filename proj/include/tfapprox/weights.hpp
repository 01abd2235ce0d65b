#pragma once

#include <cstdint>
#include <span>

namespace tfapprox {

/// Polynomial weight v_s(x) = (1 + |x|^2)^{s/2} on R^n.
///
/// For s >= 0 the weight satisfies Peetre's inequality
/// v_s(x+y) <= 2^{s/2} v_s(x) v_s(y); the constant-one form fails near the
/// origin (x = y = 1/2 in one dimension). Any real s is moderate with respect
/// to v_{|s|} with the same constant. n is d for weights on the
/// base space and 2d for weights on the time-frequency plane.
class Weight {
public:
  Weight(double exponent, int dimension);

  static Weight polynomial(double s, int dimension) { return {s, dimension}; }

  double exponent() const { return s_; }
  int dimension() const { return n_; }

  double operator()(std::span<const double> x) const;
  double eval(std::span<const double> x) const { return (*this)(x); }
  /// Evaluates the radial profile at |x|^2 = r2.
  double from_norm2(double r2) const;

  bool is_submultiplicative() const { return s_ >= 0.0; }

private:
  double s_;
  int n_;
};

/// max_{|z| <= radius} w(z). Radius 1 is the constant used for BUPUs of size <= 1.
/// Throws SignalsNotSubmultiplicative when s < 0.
double c1_constant(const Weight& w, double radius = 1.0);

struct InequalityReport {
  std::int64_t violations = 0;
  double worst_ratio = 0.0;
  std::int64_t pairs = 0;
};

/// Relative slack used by all sampled inequality checks.
inline constexpr double kInequalitySlack = 1e-12;

/// Samples pair_count pairs uniformly in [-box_radius, box_radius]^n and
/// tests w(x+y) <= C w(x) w(y) (1 + slack). worst_ratio is reported without C.
InequalityReport check_submultiplicative(const Weight& w, std::int64_t pair_count,
                                         double box_radius, std::uint64_t seed,
                                         double constant = 1.0);

/// Same sampling contract for m(x+y) <= C m(x) w(y).
InequalityReport check_moderate(const Weight& m, const Weight& w, std::int64_t pair_count,
                                double box_radius, std::uint64_t seed,
                                double constant = 1.0);

/// 2^{|s|/2}, the constant in Peetre's inequality for v_s.
double peetre_constant(const Weight& w);

} // namespace tfapprox
