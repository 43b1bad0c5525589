#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "hbm/harness.hpp"

namespace hbm::harness {

namespace {

struct ModelFlags {
  CLI::Option* mu2 = nullptr;
  CLI::Option* nu = nullptr;
  double nu_value = 0.0;
};

void add_model_options(CLI::App* cmd, RunConfig& cfg, ModelFlags& flags) {
  cmd->add_option("--mu1", cfg.params.mu1, "fundamental drift");
  flags.mu2 = cmd->add_option("--mu2", cfg.params.mu2, "technical mean-reversion rate");
  cmd->add_option("--sigma1", cfg.params.sigma1, "fundamental volatility");
  cmd->add_option("--sigma2", cfg.params.sigma2, "technical volatility");
  cmd->add_option("--rho", cfg.params.rho, "correlation of the two noises");
  flags.nu = cmd->add_option("--nu", flags.nu_value, "degrees of freedom; sets mu2 = (nu - 1) sigma2^2 / 2")
                 ->excludes(flags.mu2);
}

void add_output_options(CLI::App* cmd, RunConfig& cfg, std::string& format) {
  cmd->add_option("-o,--out", cfg.output_path, "output file (default stdout); sidecar goes to <out>.json");
  cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--config", "flat key=value file; command-line flags take precedence");
}

void add_seed(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option_function<std::uint64_t>("--seed", [&cfg](const std::uint64_t& s) { cfg.seed = s; },
                                          "random seed (generated and printed when absent)");
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw usage_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/// Pulls the --config value out of args (if present) and merges the file.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    return merge_config(std::move(args), read_file(path));
  }
  return args;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format;
  std::map<std::string, ModelFlags> model_flags;
  std::string family = "nu0";
  std::string method = "closed";
  std::string inversion = "stehfest";
  std::string scheme = "hyperbolic";
  std::string var_model = "hyperbolic";
  std::string tail_family = "gaussian";
  std::string tail_side = "one";
  std::string suite = "core";
  std::string order_size = "deterministic";

  CLI::App app{"Hybrid arithmetic/geometric Brownian motion toolkit", "hbm"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  std::map<std::string, Command> commands;
  auto sub = [&](const char* name, const char* help, Command c) {
    CLI::App* s = app.add_subcommand(name, help);
    commands[name] = c;
    add_output_options(s, cfg, format);
    return s;
  };

  CLI::App* simulate = sub("simulate", "Monte Carlo paths of the SDE", Command::Simulate);
  add_model_options(simulate, cfg, model_flags[simulate->get_name()]);
  add_seed(simulate, cfg);
  simulate->add_option("--scheme", scheme, "euler, hyperbolic, integrating-factor, conditional-gaussian")
      ->check(CLI::IsMember({"euler", "hyperbolic", "integrating-factor", "conditional-gaussian"}));
  simulate->add_option("--t", cfg.t, "horizon");
  simulate->add_option("--times", cfg.times, "comma-separated output times")->delimiter(',');
  simulate->add_option("--n-paths", cfg.n_paths, "number of paths");
  simulate->add_option("--dt", cfg.dt, "step size (default 1e-3 min(1, 1/sigma2^2))");
  simulate->add_flag("--summary", cfg.summary, "per-time moments instead of raw paths");

  CLI::App* dens = sub("density", "Density curve of a family", Command::Density);
  add_model_options(dens, cfg, model_flags[dens->get_name()]);
  dens->add_option("--family", family, "gaussian, nu0, chameleon, bimodal, student, pearson4")
      ->check(CLI::IsMember({"gaussian", "nu0", "chameleon", "bimodal", "student", "pearson4", "transform"}));
  dens->add_option("--method", method, "closed or transform (numerical inversion)")
      ->check(CLI::IsMember({"closed", "transform"}));
  dens->add_option("--inversion", inversion, "stehfest or talbot")->check(CLI::IsMember({"stehfest", "talbot"}));
  dens->add_option("--stehfest-order", cfg.inversion.stehfest_order, "even order in [6, 40]");
  dens->add_option("--talbot-nodes", cfg.inversion.talbot_nodes, "Talbot node count");
  dens->add_option("--t", cfg.t, "time");
  dens->add_option("--xmin", cfg.xmin);
  dens->add_option("--xmax", cfg.xmax);
  dens->add_option("--n", cfg.n, "grid points");
  dens->add_flag("--cdf", cfg.cdf, "add a cdf column");
  dens->add_option("--figure-dir", cfg.figure_dir, "write hybrid/Gaussian overlay tables here");
  dens->add_option("--figure-times", cfg.figure_times, "overlay horizons")->delimiter(',');

  CLI::App* mom = sub("moments", "Raw moments from the moment ODEs", Command::Moments);
  add_model_options(mom, cfg, model_flags[mom->get_name()]);
  mom->add_option("--order", cfg.order, "highest moment (<= 12)");
  mom->add_option("--t", cfg.t, "time");
  mom->add_option("--times", cfg.times, "comma-separated times")->delimiter(',');
  mom->add_option("--x0", cfg.x0, "initial value");

  CLI::App* cls = sub("classify", "Degrees of freedom and market regime", Command::Classify);
  add_model_options(cls, cfg, model_flags[cls->get_name()]);

  CLI::App* var = sub("var", "Value at risk", Command::Var);
  add_model_options(var, cfg, model_flags[var->get_name()]);
  var->add_option("--u0", cfg.u0, "percentile(s)")->delimiter(',');
  var->add_option("--t", cfg.t, "horizon");
  var->add_option("--model", var_model, "gaussian, hyperbolic, mixture-experimental")
      ->check(CLI::IsMember({"gaussian", "hyperbolic", "mixture-experimental"}));

  CLI::App* tails = sub("tails", "Tail probabilities and the explosion table", Command::Tails);
  add_model_options(tails, cfg, model_flags[tails->get_name()]);
  tails->add_option("--k", cfg.k, "event sizes in standard deviations")->delimiter(',');
  tails->add_option("--family", tail_family, "gaussian or student")->check(CLI::IsMember({"gaussian", "student"}));
  tails->add_option("--tail-nu", cfg.tail_nu, "Student degrees of freedom");
  tails->add_option("--side", tail_side, "one or two")->check(CLI::IsMember({"one", "two"}));
  tails->add_flag("--explosion", cfg.explosion, "variance explosion table over --times instead");
  tails->add_option("--t", cfg.t, "time");
  tails->add_option("--times", cfg.times, "comma-separated times")->delimiter(',');

  CLI::App* micro = sub("microsim", "Discrete trade-arrival simulation", Command::Microsim);
  add_seed(micro, cfg);
  micro->add_option("--lambda-buy", cfg.micro.lambda_buy);
  micro->add_option("--lambda-sell", cfg.micro.lambda_sell);
  micro->add_option("--mu-slope", cfg.micro.mu_slope);
  micro->add_option("--lot-size", cfg.micro.lot_size);
  micro->add_option("--omega", cfg.micro.omega);
  micro->add_option("--order-size", order_size, "deterministic, geometric, shifted-poisson")
      ->check(CLI::IsMember({"deterministic", "geometric", "shifted-poisson"}));
  micro->add_option("--order-mean", cfg.micro.order_size.mean, "mean lots per order");
  micro->add_option("--t", cfg.t, "horizon");
  micro->add_option("--times", cfg.times, "comma-separated output times")->delimiter(',');
  micro->add_option("--n-paths", cfg.n_paths);
  micro->add_option("--dt", cfg.dt, "step (default min(0.01, t/10))");
  micro->add_flag("--summary", cfg.summary, "per-time moments next to the mapped SDE moments");

  CLI::App* val = sub("validate", "Monte Carlo vs analytic validation suite", Command::Validate);
  add_seed(val, cfg);
  val->add_option("--suite", suite, "core or full")->check(CLI::IsMember({"core", "full"}));

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = apply_config(std::move(args));
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = commands.at(chosen->get_name());
    const ModelFlags flags = model_flags[chosen->get_name()];
    if (flags.nu && flags.nu->count() > 0) {
      cfg.params.mu2 = 0.5 * (flags.nu_value - 1.0) * cfg.params.sigma2 * cfg.params.sigma2;
    }
    cfg.family = parse_density_family(family);
    const bool mu2_given = (flags.mu2 && flags.mu2->count() > 0) || (flags.nu && flags.nu->count() > 0);
    if (cfg.command == Command::Density && !mu2_given) {
      const std::map<DensityFamily, double> fixed = {
          {DensityFamily::Nu0, 0.0}, {DensityFamily::Chameleon, 2.0}, {DensityFamily::BimodalNuMinus2, -2.0}};
      if (auto it = fixed.find(cfg.family); it != fixed.end()) {
        cfg.params.mu2 = 0.5 * (it->second - 1.0) * cfg.params.sigma2 * cfg.params.sigma2;
      }
    }
    cfg.method = method == "closed" ? DensityMethod::Closed : DensityMethod::Transform;
    cfg.inversion.method = inversion == "stehfest" ? InversionMethod::GaverStehfest : InversionMethod::TalbotFixed;
    cfg.scheme = scheme == "euler"                ? Scheme::Euler
                 : scheme == "hyperbolic"         ? Scheme::HyperbolicEuler
                 : scheme == "integrating-factor" ? Scheme::IntegratingFactor
                                                  : Scheme::ConditionalGaussian;
    cfg.var_method = var_model == "gaussian"     ? VarMethod::Gaussian
                     : var_model == "hyperbolic" ? VarMethod::Hyperbolic
                                                 : VarMethod::MixtureExperimental;
    cfg.tail_family = tail_family == "gaussian" ? TailFamily::Gaussian : TailFamily::StudentNu;
    cfg.tail_side = tail_side == "one" ? TailSide::OneSided : TailSide::TwoSided;
    cfg.suite = suite == "core" ? Suite::Core : Suite::Full;
    cfg.micro.order_size.kind = order_size == "deterministic" ? OrderSizeKind::Deterministic
                                : order_size == "geometric"   ? OrderSizeKind::Geometric
                                                              : OrderSizeKind::ShiftedPoisson;
    if (format.empty()) {
      const bool record = cfg.command == Command::Classify || cfg.command == Command::Validate;
      cfg.format = record ? OutputFormat::JSON : OutputFormat::CSV;
    } else {
      cfg.format = format == "json" ? OutputFormat::JSON : OutputFormat::CSV;
    }
    return run(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hbm::harness
