#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tfapprox/errors.hpp"
#include "tfapprox/sampling.hpp"

using namespace tfapprox;

namespace {
std::vector<cplx> samples_of(const GridFunction& f) { return {f.samples().begin(), f.samples().end()}; }
} // namespace

TEST_CASE("grid geometry") {
  const Grid g(1, 16, 1.0 / 64);
  CHECK(g.points_per_axis() == 2048);
  CHECK(g.coord(1024) == 0.0);
  CHECK(g.coord(0) == -16.0);
  CHECK(g.cell_volume() == 1.0 / 64);
  const Grid d = g.dual();
  CHECK(d.spacing() == 1.0 / 32);
  CHECK(d.half_extent() == 32.0);
  CHECK(d.points_per_axis() == 2048);
  CHECK(g.refined(10).points_per_axis() == 20480);

  const Grid g2(2, 8, 1.0 / 8);
  CHECK(g2.size() == 128u * 128u);
  const auto x = g2.node(64 * 128 + 65);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 0.125);
  CHECK_THROWS_AS(Grid(1, 1.0, 0.3), InvalidArgument);
  CHECK_THROWS_AS(Grid(1, 1.0, 2.0 / 3.0), InvalidArgument);
  CHECK_THROWS_AS(Grid(0, 1.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(Grid(4, 1.0, 0.5), InvalidArgument);
}

TEST_CASE("sample evaluates pointwise") {
  const Grid g(1, 16, 1.0 / 64);
  const auto z = sample(FunctionSpec::zero(), g);
  for (std::size_t i = 0; i < z.size(); ++i) REQUIRE(z[i] == cplx(0.0));
  CHECK(sample(FunctionSpec::gaussian(1), g)[1024].real() == 1.0);
  CHECK(sample(FunctionSpec::hat(2), g)[1024 + 64].real() == 0.5);
  CHECK(sample(FunctionSpec::hat(2), g).source().has_value());
}

TEST_CASE("weighted Lp norms against closed forms") {
  const Grid g(1, 16, 1.0 / 64);
  const auto f = sample(FunctionSpec::gaussian(1), g);
  CHECK(weighted_lp_norm(GridFunction::zeros(g), 1, Weight(0, 1)) == 0.0);
  CHECK(weighted_lp_norm(f, 1, Weight(0, 1)) == doctest::Approx(1.0).epsilon(1e-10));
  const double v2_oracle = oracle::integrate([](double x) { return (1 + x * x) * oracle::gaussian(x); }, -16, 16);
  CHECK(v2_oracle == doctest::Approx(1 + 0.5 / std::numbers::pi).epsilon(1e-13));
  CHECK(weighted_lp_norm(f, 1, Weight(2, 1)) == doctest::Approx(v2_oracle).epsilon(1e-10));
  CHECK(weighted_lp_norm(f, 2, Weight(0, 1)) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-10));
  CHECK(weighted_lp_norm(f, kInfinity, Weight(0, 1)) == 1.0);
  const double v1_oracle = oracle::integrate([](double x) { return std::sqrt(1 + x * x) * oracle::gaussian(x); }, -16, 16);
  CHECK(weighted_lp_norm(f, 1, Weight(1, 1)) == doctest::Approx(v1_oracle).epsilon(1e-10));
  CHECK_THROWS_AS(weighted_lp_norm(f, 0.5, Weight(0, 1)), InvalidArgument);
}

TEST_CASE("fourier matches closed forms and a direct DFT") {
  const Grid g(1, 16, 1.0 / 64);
  const auto F = fourier(sample(FunctionSpec::gaussian(1), g));
  const auto exact = sample(FunctionSpec::gaussian(1), F.grid());
  double err = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) err = std::max(err, std::abs(F[i] - exact[i]));
  CHECK(err <= 1e-9);

  const auto h = sample(FunctionSpec::parse("hat(1)|shift(0.5)"), g);
  const auto H = fourier(h);
  const auto hs = samples_of(h);
  for (int j : {0, 700, 1024, 1030, 1500, 2047}) {
    const double xi = H.grid().coord(j);
    CAPTURE(xi);
    CHECK(std::abs(H[j] - oracle::direct_fourier(hs, 16, 1.0 / 64, xi)) < 1e-12);
  }
  // hat(1)^ = sinc^2 and the shift adds a phase; grid sampling of a hat is
  // exact for the trapezoid rule of its transform up to aliasing.
  const double xi = H.grid().coord(1030);
  const double sinc = std::sin(std::numbers::pi * xi) / (std::numbers::pi * xi);
  CHECK(std::abs(H[1030] - sinc * sinc * std::polar(1.0, -std::numbers::pi * xi)) < 1e-4);
}

TEST_CASE("fourier in two dimensions factorizes") {
  const Grid g(2, 8, 1.0 / 8);
  const auto F = fourier(sample(FunctionSpec::gaussian(1), g));
  const auto exact = sample(FunctionSpec::gaussian(1), F.grid());
  double err = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) err = std::max(err, std::abs(F[i] - exact[i]));
  CHECK(err <= 1e-9);
}

TEST_CASE("pairings and tail mass") {
  const Grid g(1, 8, 1.0 / 16);
  const auto f = sample(FunctionSpec::gaussian(1), g);
  CHECK(std::abs(inner(f, GridFunction::zeros(g))) == 0.0);
  CHECK(inner(f, sample(FunctionSpec::parse("const(1)"), g)).real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(hermitian_inner(f, f).real() == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-10));
  const auto m = sample(FunctionSpec::parse("gaussian(1)|modulate(1)"), g);
  CHECK(inner(m, m).real() == doctest::Approx(std::exp(-2 * std::numbers::pi) / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(tail_mass(f, Weight(0, 1)) < 1e-40);
  CHECK(tail_mass(sample(FunctionSpec::parse("hat(0.5)|shift(7.75)"), g), Weight(0, 1)) == doctest::Approx(1.0));
  CHECK(tail_mass(GridFunction::zeros(g), Weight(0, 1)) == 0.0);
  CHECK_THROWS_AS(inner(f, sample(FunctionSpec::gaussian(1), Grid(1, 8, 1.0 / 8))), GridMismatch);
}

TEST_CASE("arithmetic") {
  const Grid g(1, 4, 0.5);
  const auto a = sample(FunctionSpec::hat(1), g);
  const auto b = sample(FunctionSpec::gaussian(1), g);
  const auto c = a + b * cplx(2.0) - a;
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - 2.0 * b[i]) < 1e-15);
  CHECK_FALSE(c.source().has_value());
  CHECK((a * cplx(3.0)).source().has_value());
}

TEST_CASE("Neumaier summation") {
  KahanSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);
}
