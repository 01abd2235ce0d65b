#include "tfapprox/function_spec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "tfapprox/errors.hpp"

namespace tfapprox {

namespace {

// exp(-pi r^2) = 1e-18 at r = kGaussRadius.
const double kGaussRadius = std::sqrt(18.0 * std::numbers::ln10 / std::numbers::pi);

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Lexer {
public:
  explicit Lexer(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        src_.push_back(c);
      }
    }
  }

  bool done() const { return pos_ >= src_.size(); }
  char peek() const { return done() ? '\0' : src_[pos_]; }

  void expect(char c) {
    if (peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      ++pos_;
    }
    if (start == pos_) {
      fail("expected a name");
    }
    return src_.substr(start, pos_ - start);
  }

  double number() {
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || !std::isfinite(v)) {
      fail("expected a number");
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  std::vector<double> arglist() {
    std::vector<double> args;
    if (peek() != '(') {
      return args;
    }
    expect('(');
    if (peek() == ')') {
      ++pos_;
      return args;
    }
    args.push_back(number());
    while (peek() == ',') {
      ++pos_;
      args.push_back(number());
    }
    expect(')');
    return args;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::string near = done() ? std::string("end of input") : "'" + src_.substr(pos_, 12) + "'";
    throw ParseError("function spec: " + what + " at " + near + " in \"" + src_ + "\"");
  }

  [[noreturn]] void fail_token(const std::string& token, const std::string& what) const {
    throw ParseError("function spec: " + what + " '" + token + "' in \"" + src_ + "\"");
  }

private:
  std::string src_;
  std::size_t pos_ = 0;
};

const char* term_name(FunctionSpec::Term t) {
  switch (t) {
  case FunctionSpec::Term::Zero: return "zero";
  case FunctionSpec::Term::Const: return "const";
  case FunctionSpec::Term::Gaussian: return "gaussian";
  case FunctionSpec::Term::Hat: return "hat";
  case FunctionSpec::Term::BSpline: return "bspline";
  case FunctionSpec::Term::Chirp: return "chirp";
  case FunctionSpec::Term::Sine: return "sine";
  }
  return "?";
}

const char* mod_name(FunctionSpec::ModKind k) {
  switch (k) {
  case FunctionSpec::ModKind::Shift: return "shift";
  case FunctionSpec::ModKind::Compress: return "compress";
  case FunctionSpec::ModKind::Scale: return "scale";
  case FunctionSpec::ModKind::Modulate: return "modulate";
  }
  return "?";
}

double axis_arg(const std::vector<double>& args, std::size_t axis) {
  return args.size() == 1 ? args[0] : args[axis];
}

void check_vector_args(const std::vector<double>& args, std::size_t dim) {
  if (args.size() != 1 && args.size() != dim) {
    throw DimensionMismatch("modifier has " + std::to_string(args.size()) +
                            " components but the point has dimension " + std::to_string(dim));
  }
}

} // namespace

double cardinal_bspline(int degree, double x) {
  const double half = 0.5 * (degree + 1);
  if (degree == 0) {
    return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
  }
  const double u = -std::abs(x); // symmetric; left half has fewer active terms
  if (u <= -half) {
    return 0.0;
  }
  double sum = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= degree + 1; ++k) {
    const double t = u + half - k;
    if (t <= 0.0) {
      break;
    }
    sum += ((k % 2) ? -binom : binom) * std::pow(t, degree);
    binom = binom * (degree + 1 - k) / (k + 1);
  }
  return sum / std::tgamma(degree + 1.0);
}

FunctionSpec FunctionSpec::parse(std::string_view text) {
  Lexer lex(text);
  FunctionSpec spec;
  const std::string name = lex.identifier();
  spec.term_args_ = lex.arglist();
  const auto nargs = spec.term_args_.size();
  auto need = [&](std::size_t n) {
    if (nargs != n) {
      lex.fail_token(name, "wrong number of arguments (expected " + std::to_string(n) + ") for");
    }
  };
  if (name == "zero") {
    spec.term_ = Term::Zero;
    need(0);
  } else if (name == "const") {
    spec.term_ = Term::Const;
    need(1);
  } else if (name == "gaussian") {
    spec.term_ = Term::Gaussian;
    need(1);
    if (spec.term_args_[0] <= 0) lex.fail_token(name, "width must be positive for");
  } else if (name == "hat") {
    spec.term_ = Term::Hat;
    need(1);
    if (spec.term_args_[0] <= 0) lex.fail_token(name, "width must be positive for");
  } else if (name == "bspline") {
    spec.term_ = Term::BSpline;
    need(2);
    const double n = spec.term_args_[0];
    if (n < 0 || n != std::floor(n) || n > 20) lex.fail_token(name, "degree must be an integer in [0,20] for");
    if (spec.term_args_[1] <= 0) lex.fail_token(name, "width must be positive for");
  } else if (name == "chirp") {
    spec.term_ = Term::Chirp;
    need(1);
  } else if (name == "sine") {
    spec.term_ = Term::Sine;
    need(1);
  } else {
    lex.fail_token(name, "unknown term");
  }

  while (!lex.done()) {
    lex.expect('|');
    const std::string mod = lex.identifier();
    Modifier m;
    m.args = lex.arglist();
    if (mod == "shift") {
      m.kind = ModKind::Shift;
    } else if (mod == "compress") {
      m.kind = ModKind::Compress;
      if (m.args.size() != 1 || m.args[0] <= 0) lex.fail_token(mod, "needs one positive factor:");
    } else if (mod == "scale") {
      m.kind = ModKind::Scale;
      if (m.args.size() == 1) m.args.push_back(0.0);
      if (m.args.size() != 2) lex.fail_token(mod, "needs scale(c) or scale(re,im):");
    } else if (mod == "modulate") {
      m.kind = ModKind::Modulate;
    } else {
      lex.fail_token(mod, "unknown modifier");
    }
    if ((m.kind == ModKind::Shift || m.kind == ModKind::Modulate) && m.args.empty()) {
      lex.fail_token(mod, "needs at least one component:");
    }
    spec.mods_.push_back(std::move(m));
  }
  return spec;
}

FunctionSpec FunctionSpec::gaussian(double s) { return parse("gaussian(" + fmt17(s) + ")"); }
FunctionSpec FunctionSpec::hat(double w) { return parse("hat(" + fmt17(w) + ")"); }

cplx FunctionSpec::eval(std::span<const double> x) const {
  const std::size_t d = x.size();
  double pt[8];
  std::vector<double> heap;
  double* p = pt;
  if (d > 8) {
    heap.resize(d);
    p = heap.data();
  }
  for (std::size_t j = 0; j < d; ++j) p[j] = x[j];

  cplx factor(1.0, 0.0);
  for (auto it = mods_.rbegin(); it != mods_.rend(); ++it) {
    switch (it->kind) {
    case ModKind::Shift:
      check_vector_args(it->args, d);
      for (std::size_t j = 0; j < d; ++j) p[j] -= axis_arg(it->args, j);
      break;
    case ModKind::Compress: {
      const double r = it->args[0];
      factor /= std::pow(r, static_cast<double>(d));
      for (std::size_t j = 0; j < d; ++j) p[j] /= r;
      break;
    }
    case ModKind::Scale:
      factor *= cplx(it->args[0], it->args[1]);
      break;
    case ModKind::Modulate: {
      check_vector_args(it->args, d);
      double phase = 0.0;
      for (std::size_t j = 0; j < d; ++j) phase += axis_arg(it->args, j) * p[j];
      factor *= std::polar(1.0, 2.0 * std::numbers::pi * phase);
      break;
    }
    }
  }

  double r2 = 0.0;
  for (std::size_t j = 0; j < d; ++j) r2 += p[j] * p[j];
  const double pi = std::numbers::pi;
  switch (term_) {
  case Term::Zero:
    return {0.0, 0.0};
  case Term::Const:
    return factor * term_args_[0];
  case Term::Gaussian: {
    const double s = term_args_[0];
    return factor * (std::exp(-pi * r2 / (s * s)) / std::pow(s, static_cast<double>(d)));
  }
  case Term::Hat: {
    const double w = term_args_[0];
    double v = 1.0;
    for (std::size_t j = 0; j < d && v > 0.0; ++j) v *= std::max(0.0, 1.0 - std::abs(p[j]) / w);
    return factor * v;
  }
  case Term::BSpline: {
    const int n = static_cast<int>(term_args_[0]);
    const double stretch = 0.5 * (n + 1) / term_args_[1];
    double v = 1.0;
    for (std::size_t j = 0; j < d && v != 0.0; ++j) v *= cardinal_bspline(n, p[j] * stretch);
    return factor * v;
  }
  case Term::Chirp:
    return factor * std::exp(-pi * r2) * std::polar(1.0, pi * term_args_[0] * r2);
  case Term::Sine:
    return factor * (std::sin(2.0 * pi * term_args_[0] * p[0]) * std::exp(-pi * r2));
  }
  return {0.0, 0.0};
}

FunctionSpec FunctionSpec::shifted(std::span<const double> a) const {
  FunctionSpec out = *this;
  out.mods_.push_back({ModKind::Shift, std::vector<double>(a.begin(), a.end())});
  return out;
}

FunctionSpec FunctionSpec::compressed(double rho) const {
  if (!(rho > 0.0)) throw InvalidArgument("compression factor must be positive");
  FunctionSpec out = *this;
  out.mods_.push_back({ModKind::Compress, {rho}});
  return out;
}

FunctionSpec FunctionSpec::scaled(cplx c) const {
  FunctionSpec out = *this;
  out.mods_.push_back({ModKind::Scale, {c.real(), c.imag()}});
  return out;
}

FunctionSpec FunctionSpec::modulated(std::span<const double> y) const {
  FunctionSpec out = *this;
  out.mods_.push_back({ModKind::Modulate, std::vector<double>(y.begin(), y.end())});
  return out;
}

std::optional<std::vector<std::pair<double, double>>> FunctionSpec::support_box(int dim) const {
  double radius = 0.0;
  switch (term_) {
  case Term::Zero: radius = 0.0; break;
  case Term::Const: return std::nullopt;
  case Term::Gaussian: radius = term_args_[0] * kGaussRadius; break;
  case Term::Hat: radius = term_args_[0]; break;
  case Term::BSpline: radius = term_args_[1]; break;
  case Term::Chirp:
  case Term::Sine: radius = kGaussRadius; break;
  }
  std::vector<std::pair<double, double>> box(dim, {-radius, radius});
  for (const auto& m : mods_) {
    if (m.kind == ModKind::Shift) {
      check_vector_args(m.args, dim);
      for (int j = 0; j < dim; ++j) {
        box[j].first += axis_arg(m.args, j);
        box[j].second += axis_arg(m.args, j);
      }
    } else if (m.kind == ModKind::Compress) {
      for (auto& [lo, hi] : box) {
        lo *= m.args[0];
        hi *= m.args[0];
      }
    }
  }
  return box;
}

std::string FunctionSpec::to_string() const {
  std::string out = term_name(term_);
  auto args = [](const std::vector<double>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += ",";
      s += fmt17(a[i]);
    }
    return s + ")";
  };
  if (!term_args_.empty()) out += args(term_args_);
  for (const auto& m : mods_) {
    out += "|";
    out += mod_name(m.kind);
    if (m.kind == ModKind::Scale && m.args[1] == 0.0) {
      out += args({m.args[0]});
    } else {
      out += args(m.args);
    }
  }
  return out;
}

} // namespace tfapprox
