#include <doctest.h>

#include <sstream>

#include "tfapprox/config.hpp"
#include "tfapprox/experiments.hpp"
#include "tfapprox/io.hpp"

using namespace tfapprox;

TEST_CASE("numbers round-trip") {
  for (double v : {0.1, 1.0 / 3, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("CSV quoting") {
  std::ostringstream out;
  CsvWriter csv(out, {"a", "b"});
  csv.row({"lp(1,1)", "say \"hi\""});
  CHECK(out.str() == "a,b\n\"lp(1,1)\",\"say \"\"hi\"\"\"\n");
  CHECK_THROWS_AS(csv.row({"only one"}), InvalidArgument);
}

TEST_CASE("key-value configs") {
  const auto kv = parse_key_values("# comment\n dim = 2\n\ntarget = hat(1)|shift(1,1)  # trailing\n");
  CHECK(kv.at("dim") == "2");
  CHECK(kv.at("target") == "hat(1)|shift(1,1)");
  CHECK_THROWS_AS(parse_key_values("novalue\n"), ConfigError);
  const auto ladder = parse_ladder("1, 1/2,0.25 ,1/8");
  CHECK(ladder == std::vector<double>{1.0, 0.5, 0.25, 0.125});
  CHECK(parse_ladder("").empty());
  CHECK_THROWS_AS(parse_ladder("1,x"), ConfigError);
  CHECK_THROWS_AS(parse_ladder("1/0"), ConfigError);
}

TEST_CASE("experiment config defaults and validation") {
  const auto cfg = ExperimentConfig::from_key_values({});
  CHECK(cfg.dim == 1);
  CHECK(cfg.extent == 16.0);
  CHECK(cfg.spacing == 1.0 / 64);
  CHECK(cfg.grid().points_per_axis() == 2048);
  CHECK_THROWS_AS(cfg.window_spec(), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_key_values({{"colour", "red"}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_key_values({{"dim", "two"}}), ConfigError);
  const auto c2 = ExperimentConfig::from_key_values({{"spacing", "1/32"}, {"eps", "0.01"}, {"plot", "true"}});
  CHECK(c2.spacing == 1.0 / 32);
  CHECK(*c2.eps == 0.01);
  CHECK(c2.plot);
}

TEST_CASE("sweeps are sorted and reproducible") {
  auto cfg = ExperimentConfig::from_key_values(
      {{"target", "gaussian(1)"}, {"window", "gaussian(1)"}, {"rho_ladder", "1/8,1,1/4,1/2"}, {"extent", "8"}, {"spacing", "1/32"}});
  const auto rows = sweep_rho(cfg);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].parameter < rows[i - 1].parameter);
    CHECK(rows[i].error < rows[i - 1].error);
  }
  std::ostringstream a, b;
  write_sweep_csv(a, "rho", rows);
  write_sweep_csv(b, "rho", sweep_rho(cfg));
  CHECK(a.str() == b.str());
  cfg.target = "zero";
  for (const auto& r : sweep_rho(cfg)) CHECK(r.error == 0.0);
  cfg.rho_ladder.clear();
  std::ostringstream empty;
  write_sweep_csv(empty, "rho", sweep_rho(cfg));
  CHECK(empty.str() == "rho,error\n");
  cfg.window = "sine(1)";
  cfg.rho_ladder = {1.0};
  CHECK_THROWS_AS(sweep_rho(cfg), WindowZeroMean);
}

TEST_CASE("SVG output is self-contained") {
  std::ostringstream out;
  write_svg_plot(out, {{"a", "#000000", {0, 1, 2}, {0, 1, 0}}}, "t <&>");
  const auto s = out.str();
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);
  CHECK(s.find("t &lt;&amp;&gt;") != std::string::npos);
  CHECK(s.find("<polyline") != std::string::npos);
}
