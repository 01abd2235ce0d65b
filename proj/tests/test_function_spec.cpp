#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tfapprox/errors.hpp"
#include "tfapprox/function_spec.hpp"

using namespace tfapprox;

namespace {
cplx at(const FunctionSpec& f, std::vector<double> x) { return f.eval(x); }
} // namespace

TEST_CASE("base terms") {
  CHECK(at(FunctionSpec::parse("gaussian(1)"), {0.0}).real() == 1.0);
  CHECK(at(FunctionSpec::parse("gaussian(2)"), {1.0}).real() == doctest::Approx(oracle::gaussian(1.0, 2.0)));
  CHECK(at(FunctionSpec::parse("gaussian(1)"), {0.5, 0.5}).real() ==
        doctest::Approx(std::exp(-std::numbers::pi * 0.5)));
  CHECK(at(FunctionSpec::parse("hat(2)"), {1.0}).real() == 0.5);
  CHECK(at(FunctionSpec::parse("hat(2)"), {3.0}).real() == 0.0);
  CHECK(at(FunctionSpec::parse("zero"), {1.0}) == cplx(0.0));
  CHECK(at(FunctionSpec::parse("const(2.5)"), {7.0}).real() == 2.5);
  CHECK(std::abs(at(FunctionSpec::parse("chirp(0.5)"), {1.0})) == doctest::Approx(std::exp(-std::numbers::pi)));
  CHECK(at(FunctionSpec::parse("sine(1)"), {0.25}).real() == doctest::Approx(std::exp(-std::numbers::pi / 16)));
}

TEST_CASE("cardinal B-splines have unit mass and the right support") {
  for (int n : {0, 1, 2, 3}) {
    const double half = (n + 1) / 2.0;
    std::vector<double> breaks;
    for (int k = 0; k <= n + 1; ++k) breaks.push_back(-half + k);
    const double mass = oracle::integrate_pieces([&](double x) { return cardinal_bspline(n, x); }, breaks);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cardinal_bspline(n, half + 1e-9) == 0.0);
  }
  CHECK(cardinal_bspline(1, 0.25) == doctest::Approx(0.75));
  CHECK(cardinal_bspline(3, 0.0) == doctest::Approx(2.0 / 3.0));
  // bspline(3,2) has support [-2, 2].
  CHECK(at(FunctionSpec::parse("bspline(3,2)"), {2.01}).real() == 0.0);
  CHECK(at(FunctionSpec::parse("bspline(3,2)"), {1.9}).real() > 0.0);
}

TEST_CASE("modifiers compose left to right") {
  const auto f = FunctionSpec::parse("hat(1)|shift(2)|scale(3)");
  CHECK(at(f, {2.0}).real() == 3.0);
  CHECK(at(f, {0.0}).real() == 0.0);
  const auto g = FunctionSpec::parse("gaussian(1)|compress(0.5)");
  CHECK(at(g, {0.0}).real() == doctest::Approx(2.0));
  CHECK(at(g, {0.5}).real() == doctest::Approx(2.0 * std::exp(-std::numbers::pi)));
  const auto m = FunctionSpec::parse("gaussian(1)|modulate(0.25)");
  CHECK(at(m, {1.0}).imag() == doctest::Approx(std::exp(-std::numbers::pi)));
  const auto c = FunctionSpec::parse("const(1)|scale(0,2)");
  CHECK(at(c, {0.0}) == cplx(0.0, 2.0));
  const auto v = FunctionSpec::parse("hat(1)|shift(1,-1)");
  CHECK(at(v, {1.0, -1.0}).real() == 1.0);
}

TEST_CASE("programmatic modifiers match parsed ones") {
  const std::vector<double> a{1.5};
  const auto f = FunctionSpec::gaussian(1).shifted(a).compressed(0.5).scaled(2.0);
  const auto g = FunctionSpec::parse("gaussian(1)|shift(1.5)|compress(0.5)|scale(2)");
  for (double x = -3; x < 3; x += 0.3) CHECK(std::abs(at(f, {x}) - at(g, {x})) < 1e-15);
}

TEST_CASE("to_string round-trips") {
  for (const char* text : {"gaussian(0.1)|shift(0.3333333333333333)", "bspline(3,2)|scale(1,-2)", "zero",
                           "chirp(0.5)|modulate(1,2)", "sine(1)", "const(-1)"}) {
    const auto f = FunctionSpec::parse(text);
    CHECK(FunctionSpec::parse(f.to_string()).to_string() == f.to_string());
  }
  CHECK(FunctionSpec::parse(" gaussian( 1 ) | shift( 2 ) ").to_string() ==
        FunctionSpec::parse("gaussian(1)|shift(2)").to_string());
}

TEST_CASE("support boxes") {
  const auto box = FunctionSpec::parse("hat(2)|shift(1)").support_box(1);
  REQUIRE(box.has_value());
  CHECK((*box)[0].first == doctest::Approx(-1.0));
  CHECK((*box)[0].second == doctest::Approx(3.0));
  const auto cbox = FunctionSpec::parse("hat(1)|compress(0.5)").support_box(1);
  REQUIRE(cbox.has_value());
  CHECK((*cbox)[0].second == doctest::Approx(0.5));
  CHECK_FALSE(FunctionSpec::parse("const(1)").support_box(1).has_value());
  const auto gbox = FunctionSpec::gaussian(1).support_box(2);
  REQUIRE(gbox.has_value());
  const double r = (*gbox)[0].second;
  CHECK(oracle::gaussian(r) < 1e-17);
}

TEST_CASE("parse errors") {
  for (const char* bad : {"", "gauss(1)", "gaussian(", "gaussian(1)|", "hat(-1)", "gaussian(0)",
                          "bspline(1.5,2)", "gaussian(1)|shift()", "gaussian(1)|warp(2)", "hat(1,2)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(FunctionSpec::parse(bad), ParseError);
  }
  CHECK_THROWS_AS(FunctionSpec::parse("hat(1)|shift(1,2)").eval(std::vector<double>{0.0}), DimensionMismatch);
}
