// Command line front end: convergence sweeps, end-to-end approximation,
// norm evaluation and the invariant self-test.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "tfapprox/config.hpp"
#include "tfapprox/experiments.hpp"
#include "tfapprox/io.hpp"
#include "tfapprox/pipeline.hpp"

namespace {

using namespace tfapprox;

enum ExitCode : int { kOk = 0, kUsage = 1, kBudget = 2, kHypothesis = 3 };

// Writes to `path`, or to stdout when the path is empty.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_sweep(const ExperimentConfig& cfg, bool rho) {
  const auto rows = rho ? sweep_rho(cfg) : sweep_bupu(cfg);
  Output out(cfg.out);
  write_sweep_csv(out.stream(), rho ? "rho" : "delta", rows);
  return kOk;
}

void write_plot(const std::string& path, const GridFunction& f, const GridFunction& h, const std::string& title) {
  SvgSeries sf{"target f", "#1f77b4", {}, {}};
  SvgSeries sh{"approximant h", "#d62728", {}, {}};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.grid().coord(static_cast<int>(i));
    sf.x.push_back(x);
    sf.y.push_back(f[i].real());
    sh.x.push_back(x);
    sh.y.push_back(h[i].real());
  }
  std::ofstream svg(path, std::ios::binary);
  if (!svg) throw ConfigError("cannot open plot file '" + path + "'");
  write_svg_plot(svg, {sf, sh}, title);
}

int cmd_approximate(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid();
  const NormSpec ns = cfg.norm_spec();
  const FunctionSpec target = cfg.target_spec();
  const FunctionSpec window = cfg.window_spec();
  if (cfg.plot && (cfg.out.empty() || cfg.dim != 1)) {
    throw ConfigError("--plot needs --out and dim = 1");
  }
  const GridFunction f = sample(target, grid);
  const double eps = cfg.eps ? *cfg.eps : cfg.eps_rel * norm(f, ns);
  ApproximateOptions opt;
  opt.margin = cfg.margin;

  auto write_report = [&](const ApproximationReport& rep) {
    Output out(cfg.out.empty() ? std::string() : cfg.out + ".csv");
    CsvWriter csv(out.stream(), report_csv_header());
    csv.row(report_csv_fields(rep));
  };
  try {
    const auto result = approximate(f, window, eps, ns, opt);
    if (!cfg.out.empty()) {
      std::ofstream a(cfg.out, std::ios::binary);
      if (!a) throw ConfigError("cannot open output file '" + cfg.out + "'");
      write_approximant(a, result.approximant);
    }
    write_report(result.report);
    if (cfg.plot) {
      write_plot(cfg.out + ".svg", f, result.approximant.evaluate(grid),
                 target.to_string() + " approximated in " + ns.id());
    }
    return kOk;
  } catch (const BudgetInfeasible& e) {
    std::cerr << "budget infeasible: " << e.what() << '\n';
    write_report(e.report());
    return kBudget;
  }
}

int cmd_norm(const ExperimentConfig& cfg) {
  const GridFunction f = sample(cfg.target_spec(), cfg.grid());
  Output out(cfg.out);
  out.stream() << format_number(norm(f, cfg.norm_spec())) << '\n';
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"tfapprox: approximation by shifted dilates of one window"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  std::map<std::string, std::string> flags;
  bool plot = false;
  for (const auto& key : ExperimentConfig::known_keys()) {
    if (key == "plot") continue;
    std::string names = "--" + key;
    if (key.find('_') != std::string::npos) {
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      names += ",--" + dashed;
    }
    app.add_option(names, flags[key], "overrides '" + key + "' from the config file")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
  auto* plot_flag = app.add_flag("--plot", plot, "write an SVG overlay of target and approximant");

  auto* sweep_rho_cmd = app.add_subcommand("sweep-rho", "mollification error over the rho ladder");
  auto* sweep_bupu_cmd = app.add_subcommand("sweep-bupu", "discretization error over the delta ladder");
  auto* approx_cmd = app.add_subcommand("approximate", "build an approximant within eps");
  auto* norm_cmd = app.add_subcommand("norm", "evaluate a norm of the target");
  auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant suite");
  double tamper = 0.0;
  auto* tamper_opt = selftest_cmd->add_option("--tamper-weight-exponent", tamper)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    KeyValues kv;
    if (!config_path.empty()) kv = read_config_file(config_path);
    for (const auto& key : ExperimentConfig::known_keys()) {
      if (key == "plot") continue;
      if (app.count("--" + key) > 0) kv[key] = flags[key];
    }
    if (plot_flag->count() > 0) kv["plot"] = plot ? "true" : "false";
    const ExperimentConfig cfg = ExperimentConfig::from_key_values(kv);

    if (*sweep_rho_cmd) return cmd_sweep(cfg, true);
    if (*sweep_bupu_cmd) return cmd_sweep(cfg, false);
    if (*approx_cmd) return cmd_approximate(cfg);
    if (*norm_cmd) return cmd_norm(cfg);
    if (*selftest_cmd) {
      SelftestOptions opt;
      opt.seed = cfg.seed;
      if (tamper_opt->count() > 0) opt.tamper_weight_exponent = tamper;
      Output out(cfg.out);
      return print_selftest(out.stream(), run_selftest(opt)) ? kOk : kUsage;
    }
  } catch (const WindowZeroMean& e) {
    std::cerr << "hypothesis violated: " << e.what() << '\n';
    return kHypothesis;
  } catch (const BudgetInfeasible& e) {
    std::cerr << "budget infeasible: " << e.what() << '\n';
    return kBudget;
  } catch (const tfapprox::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
