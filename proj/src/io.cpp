#include "tfapprox/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "tfapprox/errors.hpp"

namespace tfapprox {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  write(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw InvalidArgument("CSV row has " + std::to_string(fields.size()) + " fields, header has " +
                          std::to_string(columns_));
  }
  write(fields);
}

void CsvWriter::write(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out_ << f;
      continue;
    }
    out_ << '"';
    for (char c : f) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  out_ << '\n';
}

void write_approximant(std::ostream& out, const Approximant& a) {
  out << "rho=" << format_number(a.rho) << '\n';
  for (const auto& atom : a.atoms.atoms()) {
    for (double x : atom.node) out << format_number(x) << ' ';
    out << format_number(atom.coef.real()) << ' ' << format_number(atom.coef.imag()) << '\n';
  }
}

Approximant read_approximant(std::istream& in, const FunctionSpec& window) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("rho=", 0) != 0) {
    throw ParseError("approximant: first line must be rho=<value>");
  }
  Approximant a;
  a.window = window;
  try {
    a.rho = std::stod(line.substr(4));
  } catch (const std::exception&) {
    throw ParseError("approximant: bad rho value '" + line.substr(4) + "'");
  }
  std::vector<Atom> atoms;
  int dim = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> vals;
    double v;
    while (ls >> v) vals.push_back(v);
    if (!ls.eof() || vals.size() < 3) throw ParseError("approximant: bad atom line '" + line + "'");
    const int d = static_cast<int>(vals.size()) - 2;
    if (dim == 0) dim = d;
    if (d != dim) throw ParseError("approximant: atoms of mixed dimension");
    atoms.push_back({std::vector<double>(vals.begin(), vals.begin() + d), cplx(vals[d], vals[d + 1])});
  }
  a.atoms = DiscreteMeasure(dim == 0 ? 1 : dim, std::move(atoms));
  return a;
}

std::vector<std::string> report_csv_header() {
  return {"target", "window", "norm", "eps", "rho", "delta", "nodes",
          "e_trunc", "e_mollify", "e_disc", "e_total", "wall_ms"};
}

std::vector<std::string> report_csv_fields(const ApproximationReport& r) {
  return {r.target,
          r.window,
          r.norm_id,
          format_number(r.eps),
          format_number(r.rho),
          format_number(r.delta),
          std::to_string(r.node_count),
          format_number(r.e_truncate),
          format_number(r.e_mollify),
          format_number(r.e_discretize),
          format_number(r.e_total),
          format_number(r.wall_ms)};
}

namespace {

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
    case '&': o += "&amp;"; break;
    case '<': o += "&lt;"; break;
    case '>': o += "&gt;"; break;
    case '"': o += "&quot;"; break;
    default: o += c;
    }
  }
  return o;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

} // namespace

void write_svg_plot(std::ostream& out, const std::vector<SvgSeries>& series, const std::string& title,
                    int width, int height) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw InvalidArgument("svg series '" + s.label + "' has mismatched x/y");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin < xmax)) { xmin = 0; xmax = 1; }
  if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << esc(title) << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    out << "<line x1=\"" << sx(xv) << "\" y1=\"" << top + ph << "\" x2=\"" << sx(xv) << "\" y2=\""
        << top + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(xv) << "\" y=\"" << top + ph + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << tick(xv) << "</text>\n";
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << left << "\" y2=\"" << sy(yv)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << sy(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << tick(yv) << "</text>\n";
  }
  if (ymin < 0 && ymax > 0) {
    out << "<line x1=\"" << left << "\" y1=\"" << sy(0) << "\" x2=\"" << left + pw << "\" y2=\"" << sy(0)
        << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  }
  int legend = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << esc(s.color) << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", sx(s.x[i]), sy(s.y[i]));
      out << buf;
    }
    out << "\"/>\n";
    const double ly = top + 15 + 18 * legend++;
    out << "<line x1=\"" << left + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << left + pw - 125 << "\" y2=\""
        << ly << "\" stroke=\"" << esc(s.color) << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + pw - 120 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << esc(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

} // namespace tfapprox
