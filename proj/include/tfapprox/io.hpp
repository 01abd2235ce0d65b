#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tfapprox/pipeline.hpp"

namespace tfapprox {

/// Decimal with 17 significant digits (round-trips every double).
std::string format_number(double v);

/// RFC 4180 CSV with LF line endings; fields containing ',', '"' or a newline are quoted.
class CsvWriter {
public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);

private:
  void write(const std::vector<std::string>& fields);
  std::ostream& out_;
  std::size_t columns_;
};

/// `rho=<r>` followed by one line `x_1 ... x_d re(c) im(c)` per atom.
void write_approximant(std::ostream& out, const Approximant& a);
/// Inverse of write_approximant; the window is not part of the format.
Approximant read_approximant(std::istream& in, const FunctionSpec& window);

std::vector<std::string> report_csv_header();
std::vector<std::string> report_csv_fields(const ApproximationReport& r);

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line plot with axes, tick labels and a legend; no external dependencies.
void write_svg_plot(std::ostream& out, const std::vector<SvgSeries>& series, const std::string& title,
                    int width = 800, int height = 500);

} // namespace tfapprox
