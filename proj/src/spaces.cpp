#include "tfapprox/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>

#include "detail.hpp"
#include "tfapprox/errors.hpp"

namespace tfapprox {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_default_window(const FunctionSpec& w) { return w.to_string() == "gaussian(1)"; }

double parse_number(const std::string& tok, const std::string& whole) {
  if (tok == "inf") return kInfinity;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError("norm spec: bad number '" + tok + "' in \"" + whole + "\"");
  }
  return v;
}

NormSpec parse_single(const std::string& part, const std::string& whole, int dim) {
  const auto open = part.find('(');
  if (open == std::string::npos || part.back() != ')') {
    throw ParseError("norm spec: expected name(args) at '" + part + "' in \"" + whole + "\"");
  }
  const std::string name = part.substr(0, open);
  std::vector<double> args;
  const std::string inner = part.substr(open + 1, part.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= inner.size() && !inner.empty()) {
    const auto comma = inner.find(',', pos);
    const auto end = comma == std::string::npos ? inner.size() : comma;
    args.push_back(parse_number(inner.substr(pos, end - pos), whole));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw ParseError("norm spec: '" + name + "' takes " + std::to_string(n) + " arguments in \"" +
                       whole + "\"");
    }
  };
  auto check_p = [&](double p) {
    if (!(p >= 1.0)) throw ParseError("norm spec: exponent must be >= 1 in \"" + whole + "\"");
  };
  if (name == "lp") {
    need(2);
    check_p(args[0]);
    return {WeightedLp{args[0], Weight(args[1], dim)}};
  }
  if (name == "katsnelson") {
    need(2);
    return {Katsnelson{Weight(args[0], dim), Weight(args[1], dim)}};
  }
  if (name == "modulation") {
    need(3);
    check_p(args[0]);
    check_p(args[1]);
    return {Modulation{args[0], args[1], Weight(args[2], 2 * dim), FunctionSpec::gaussian(1.0)}};
  }
  if (name == "shubin") {
    need(1);
    return NormSpec::shubin(args[0]);
  }
  throw ParseError("norm spec: unknown norm '" + name + "' in \"" + whole + "\"");
}

} // namespace

NormSpec NormSpec::parse(std::string_view text, int dim) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  }
  if (s.empty()) throw ParseError("norm spec: empty");
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() == 1) return parse_single(parts[0], s, dim);
  SumOfNorms sum;
  for (const auto& p : parts) sum.parts.push_back(parse_single(p, s, dim));
  return {std::move(sum)};
}

std::string NormSpec::id() const {
  return std::visit(
      overloaded{
          [](const WeightedLp& n) { return "lp(" + num(n.p) + "," + num(n.w.exponent()) + ")"; },
          [](const Katsnelson& n) {
            return "katsnelson(" + num(n.m1.exponent()) + "," + num(n.m2.exponent()) + ")";
          },
          [](const Modulation& n) {
            std::string s = "modulation(" + num(n.p) + "," + num(n.q) + "," + num(n.w.exponent()) + ")";
            if (!is_default_window(n.window)) s += "[" + n.window.to_string() + "]";
            return s;
          },
          [](const Shubin& n) {
            std::string s = "shubin(" + num(n.s) + ")";
            if (!is_default_window(n.window)) s += "[" + n.window.to_string() + "]";
            return s;
          },
          [](const SumOfNorms& n) {
            std::string s;
            for (std::size_t i = 0; i < n.parts.size(); ++i) s += (i ? "+" : "") + n.parts[i].id();
            return s;
          }},
      kind);
}

Modulation as_modulation(const Shubin& s, int dim) {
  return Modulation{2.0, 2.0, Weight(s.s, 2 * dim), s.window};
}

int resolve_x_stride(const Grid& grid, TfSampling tf) {
  if (tf.x_stride > 0) return tf.x_stride;
  const int n = grid.points_per_axis();
  int stride = std::max(1, static_cast<int>(std::floor(0.125 / grid.spacing() + 1e-9)));
  auto shifts = [&](int st) {
    double c = 1.0;
    for (int j = 0; j < grid.dim(); ++j) c *= std::ceil(static_cast<double>(n) / st);
    return c;
  };
  while (shifts(stride) > 4096.0 && stride < n) stride *= 2;
  return stride;
}

std::size_t StftResult::x_count() const {
  std::size_t c = 1;
  for (int j = 0; j < base.dim(); ++j) c *= static_cast<std::size_t>(x_per_axis);
  return c;
}

std::vector<double> StftResult::x_node(std::size_t ix) const {
  std::vector<double> x(base.dim());
  for (int j = base.dim() - 1; j >= 0; --j) {
    x[j] = base.coord(static_cast<int>(ix % x_per_axis) * x_stride);
    ix /= x_per_axis;
  }
  return x;
}

double StftResult::x_cell() const { return std::pow(x_stride * base.spacing(), base.dim()); }

namespace {

// Runs fn(ix, x, column) for every sampled shift x, where column holds
// V_g sigma(x, .) on the dual grid.
template <class Fn>
StftResult stft_columns(const GridFunction& sigma, const FunctionSpec& window, TfSampling tf,
                        Fn&& fn) {
  const Grid& g = sigma.grid();
  const int d = g.dim();
  const int n = g.points_per_axis();
  StftResult meta{g, g.dual(), resolve_x_stride(g, tf), 0, {}};
  meta.x_per_axis = (n + meta.x_stride - 1) / meta.x_stride;

  // Window at relative offsets r h, r in [-(n-1), n-1] per axis.
  const int m = 2 * n - 1;
  std::size_t wsize = 1;
  for (int j = 0; j < d; ++j) wsize *= static_cast<std::size_t>(m);
  std::vector<cplx> wconj(wsize);
  std::vector<double> pt(d);
  KahanSum energy;
  for (std::size_t i = 0; i < wsize; ++i) {
    std::size_t r = i;
    for (int j = d - 1; j >= 0; --j) {
      pt[j] = (static_cast<long>(r % m) - (n - 1)) * g.spacing();
      r /= m;
    }
    wconj[i] = std::conj(window.eval(pt));
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node(i, pt);
    energy.add(std::norm(window.eval(pt)));
  }
  if (!(energy.value() > 0.0)) throw ZeroFunction("stft: window has zero L2 norm on the grid");

  detail::CenteredFourier ft(g);
  std::vector<cplx> col(g.size());
  std::vector<long> tidx(d), xidx(d);
  const std::size_t xcount = meta.x_count();
  for (std::size_t ix = 0; ix < xcount; ++ix) {
    std::size_t r = ix;
    for (int j = d - 1; j >= 0; --j) {
      xidx[j] = static_cast<long>(r % meta.x_per_axis) * meta.x_stride;
      r /= meta.x_per_axis;
    }
    bool any = false;
    for (std::size_t t = 0; t < g.size(); ++t) {
      const cplx s = sigma[t];
      if (s == cplx(0.0, 0.0)) {
        col[t] = 0.0;
        continue;
      }
      std::size_t rem = t, widx = 0, stride = 1;
      for (int j = d - 1; j >= 0; --j) {
        const long off = static_cast<long>(rem % n) - xidx[j] + (n - 1);
        rem /= n;
        widx += static_cast<std::size_t>(off) * stride;
        stride *= static_cast<std::size_t>(m);
      }
      col[t] = s * wconj[widx];
      any = any || col[t] != cplx(0.0, 0.0);
    }
    const auto x = meta.x_node(ix);
    if (!any) {
      std::fill(col.begin(), col.end(), cplx(0.0, 0.0));
    } else {
      ft.apply(col);
    }
    fn(ix, x, std::span<const cplx>(col));
  }
  return meta;
}

double window_l2(const FunctionSpec& window, const Grid& g) {
  std::vector<double> pt(g.dim());
  KahanSum e;
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node(i, pt);
    e.add(std::norm(window.eval(pt)));
  }
  return std::sqrt(e.value() * g.cell_volume());
}

double modulation_norm(const GridFunction& f, const Modulation& spec, TfSampling tf) {
  const Grid& g = f.grid();
  const int d = g.dim();
  if (spec.w.dimension() != 2 * d) {
    throw DimensionMismatch("modulation norm: weight must live on R^{2d}");
  }
  const double gnorm = window_l2(spec.window, g);
  if (!(gnorm > 0.0)) throw ZeroFunction("modulation norm: window has zero L2 norm");
  const Grid freq = g.dual();
  std::vector<double> y2(freq.size());
  {
    std::vector<double> y(d);
    for (std::size_t i = 0; i < freq.size(); ++i) {
      freq.node(i, y);
      double s = 0.0;
      for (double v : y) s += v * v;
      y2[i] = s;
    }
  }
  const double p = spec.p;
  const bool pinf = std::isinf(p);
  std::vector<double> acc(freq.size(), 0.0);
  std::vector<double> comp(freq.size(), 0.0);
  double xcell = 0.0;
  const StftResult meta = stft_columns(f, spec.window, tf, [&](std::size_t, const std::vector<double>& x,
                                                               std::span<const cplx> col) {
    double x2 = 0.0;
    for (double v : x) x2 += v * v;
    for (std::size_t iy = 0; iy < col.size(); ++iy) {
      const double a = std::abs(col[iy]);
      if (a == 0.0) continue;
      const double val = a / gnorm * spec.w.from_norm2(x2 + y2[iy]);
      if (pinf) {
        acc[iy] = std::max(acc[iy], val);
      } else {
        // Neumaier update per frequency keeps the x-sum order fixed and accurate.
        const double term = p == 2.0 ? val * val : (p == 1.0 ? val : std::pow(val, p));
        const double t = acc[iy] + term;
        comp[iy] += std::abs(acc[iy]) >= term ? (acc[iy] - t) + term : (term - t) + acc[iy];
        acc[iy] = t;
      }
    }
  });
  xcell = meta.x_cell();
  const double q = spec.q;
  double outer = 0.0;
  KahanSum osum;
  for (std::size_t iy = 0; iy < acc.size(); ++iy) {
    double inner;
    if (pinf) {
      inner = acc[iy];
    } else {
      const double s = (acc[iy] + comp[iy]) * xcell;
      inner = p == 2.0 ? std::sqrt(s) : (p == 1.0 ? s : std::pow(s, 1.0 / p));
    }
    if (std::isinf(q)) {
      outer = std::max(outer, inner);
    } else {
      osum.add(q == 2.0 ? inner * inner : (q == 1.0 ? inner : std::pow(inner, q)));
    }
  }
  if (std::isinf(q)) return outer;
  const double s = osum.value() * freq.cell_volume();
  return q == 2.0 ? std::sqrt(s) : (q == 1.0 ? s : std::pow(s, 1.0 / q));
}

} // namespace

StftResult stft(const GridFunction& sigma, const FunctionSpec& window, TfSampling tf) {
  std::vector<cplx> values;
  StftResult meta = stft_columns(sigma, window, tf, [&](std::size_t, const std::vector<double>&,
                                                        std::span<const cplx> col) {
    values.insert(values.end(), col.begin(), col.end());
  });
  meta.values = std::move(values);
  return meta;
}

double norm(const GridFunction& f, const NormSpec& spec, TfSampling tf) {
  const int d = f.grid().dim();
  return std::visit(
      overloaded{
          [&](const WeightedLp& n) { return weighted_lp_norm(f, n.p, n.w); },
          [&](const Katsnelson& n) {
            return weighted_lp_norm(f, 2.0, n.m1) + weighted_lp_norm(fourier(f), 2.0, n.m2);
          },
          [&](const Modulation& n) { return modulation_norm(f, n, tf); },
          [&](const Shubin& n) { return modulation_norm(f, as_modulation(n, d), tf); },
          [&](const SumOfNorms& n) {
            double s = 0.0;
            for (const auto& part : n.parts) s += norm(f, part, tf);
            return s;
          }},
      spec.kind);
}

NormFunction norm_function(const NormSpec& spec, TfSampling tf) {
  return [spec, tf](const GridFunction& f) { return norm(f, spec, tf); };
}

EmbeddingReport embed_check_L2(const Weight& m1, const Weight& m2, const Grid& grid) {
  if (m1.dimension() != grid.dim() || m2.dimension() != grid.dim()) {
    throw DimensionMismatch("embed_check_L2: weights must live on the grid dimension");
  }
  // Radial monotone profiles: the extremes over the nodes sit at the origin
  // (a node) and at the corner (-L, ..., -L).
  const double corner2 = grid.dim() * grid.half_extent() * grid.half_extent();
  auto grid_inf = [&](const Weight& w) { return std::min(w.from_norm2(0.0), w.from_norm2(corner2)); };
  auto rd_inf = [](const Weight& w) { return w.exponent() >= 0.0 ? 1.0 : 0.0; };
  EmbeddingReport rep;
  rep.inf_m1 = grid_inf(m1);
  rep.inf_m2 = grid_inf(m2);
  rep.embeds = rd_inf(m1) >= 1e-9 && rd_inf(m2) >= 1e-9;
  return rep;
}

RatioReport weight_max_equiv_check(double s, std::int64_t sample_count, std::uint64_t seed, int dim,
                                   double radius) {
  if (s < 0.0) throw SignalsNotSubmultiplicative("weight_max_equiv_check requires s >= 0");
  const Weight vz(s, 2 * dim), vx(s, dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-radius, radius);
  std::vector<double> z(2 * dim);
  RatioReport rep{kInfinity, 0.0};
  for (std::int64_t k = 0; k < sample_count; ++k) {
    for (auto& c : z) c = coord(rng);
    const std::span<const double> zs(z);
    const double r = vz(zs) / std::max(vx(zs.first(dim)), vx(zs.subspan(dim)));
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  if (sample_count <= 0) rep = {1.0, 1.0};
  return rep;
}

double fourier_invariance_defect(const GridFunction& f, double s, TfSampling tf) {
  const NormSpec q = NormSpec::shubin(s);
  const double nf = norm(f, q, tf);
  if (!(nf > 0.0)) throw ZeroFunction("fourier_invariance_defect: zero function");
  const double nF = norm(fourier(f), q, tf);
  return std::abs(nF - nf) / nf;
}

ShiftExponents estimate_shift_exponents(const NormSpec& spec, std::span<const GridFunction> probes,
                                        double max_shift, TfSampling tf) {
  if (probes.empty()) throw EmptyProbeSet("estimate_shift_exponents: no probes");
  const int d = probes[0].grid().dim();
  const NormFunction nf = norm_function(spec, tf);
  ShiftExponents out;
  for (double a = 1.0; a <= max_shift; a *= 2.0) {
    std::vector<double> v(d, 0.0);
    v[0] = a;
    const double bracket = std::log(std::sqrt(1.0 + a * a));
    const double rt = empirical_opnorm([&](const GridFunction& f) { return translate(f, v); }, nf, probes);
    const double rm = empirical_opnorm([&](const GridFunction& f) { return modulate(f, v); }, nf, probes);
    out.translation = std::max(out.translation, std::log(rt) / bracket);
    out.modulation = std::max(out.modulation, std::log(rm) / bracket);
  }
  return out;
}

} // namespace tfapprox
