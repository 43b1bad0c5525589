#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hbm/harness.hpp"
#include "hbm/moments.hpp"
#include "hbm/statistics.hpp"

namespace hbm::harness {

namespace {

using json = nlohmann::ordered_json;

std::string_view to_string(OrderSizeKind k) {
  switch (k) {
    case OrderSizeKind::Deterministic: return "deterministic";
    case OrderSizeKind::Geometric: return "geometric";
    case OrderSizeKind::ShiftedPoisson: return "shifted-poisson";
  }
  return "unknown";
}

std::string_view to_string(VarMethod m) {
  switch (m) {
    case VarMethod::Gaussian: return "gaussian";
    case VarMethod::Hyperbolic: return "hyperbolic";
    case VarMethod::MixtureExperimental: return "mixture-experimental";
  }
  return "unknown";
}

json model_json(const ModelParams& p) {
  return json{{"mu1", p.mu1}, {"mu2", p.mu2}, {"sigma1", p.sigma1}, {"sigma2", p.sigma2}, {"rho", p.rho}};
}

std::vector<double> time_grid(const RunConfig& c) {
  return c.times.empty() ? std::vector<double>{c.t} : c.times;
}

json config_json(const RunConfig& c, std::optional<std::uint64_t> seed) {
  json j;
  j["command"] = to_string(c.command);
  j["version"] = version();
  j["seed"] = seed ? json(*seed) : json(nullptr);
  json opts = json::object();
  switch (c.command) {
    case Command::Simulate:
      opts["scheme"] = hbm::to_string(c.scheme);
      opts["times"] = time_grid(c);
      opts["n_paths"] = c.n_paths;
      opts["dt"] = c.dt;
      opts["summary"] = c.summary;
      break;
    case Command::Density:
      opts["family"] = hbm::to_string(c.family);
      opts["method"] = c.method == DensityMethod::Closed ? "closed" : "transform";
      opts["inversion"] = c.inversion.method == InversionMethod::GaverStehfest ? "stehfest" : "talbot";
      opts["stehfest_order"] = c.inversion.stehfest_order;
      opts["talbot_nodes"] = c.inversion.talbot_nodes;
      opts["t"] = c.t;
      opts["xmin"] = c.xmin;
      opts["xmax"] = c.xmax;
      opts["n"] = c.n;
      opts["cdf"] = c.cdf;
      if (!c.figure_dir.empty()) {
        opts["figure_dir"] = c.figure_dir;
        opts["figure_times"] = c.figure_times;
      }
      break;
    case Command::Moments:
      opts["order"] = c.order;
      opts["times"] = time_grid(c);
      opts["x0"] = c.x0;
      break;
    case Command::Classify:
      break;
    case Command::Var:
      opts["u0"] = c.u0;
      opts["t"] = c.t;
      opts["model"] = to_string(c.var_method);
      break;
    case Command::Tails:
      opts["explosion"] = c.explosion;
      if (c.explosion) {
        opts["times"] = time_grid(c);
      } else {
        opts["k"] = c.k;
        opts["family"] = c.tail_family == TailFamily::Gaussian ? "gaussian" : "student";
        opts["nu"] = c.tail_nu;
        opts["side"] = c.tail_side == TailSide::OneSided ? "one" : "two";
      }
      break;
    case Command::Microsim:
      opts["lambda_buy"] = c.micro.lambda_buy;
      opts["lambda_sell"] = c.micro.lambda_sell;
      opts["mu_slope"] = c.micro.mu_slope;
      opts["lot_size"] = c.micro.lot_size;
      opts["omega"] = c.micro.omega;
      opts["order_size"] = to_string(c.micro.order_size.kind);
      opts["order_mean"] = c.micro.order_size.mean;
      opts["times"] = time_grid(c);
      opts["n_paths"] = c.n_paths;
      opts["dt"] = c.dt;
      opts["summary"] = c.summary;
      break;
    case Command::Validate:
      opts["suite"] = c.suite == Suite::Core ? "core" : "full";
      break;
  }
  j["parameters"] = json{{"model", model_json(c.params)}, {"options", opts}};
  j["output"] = c.output_path.empty() ? json("stdout") : json(c.output_path);
  j["format"] = c.format == OutputFormat::CSV ? "csv" : "json";
  return j;
}

void emit(const Table& table, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::CSV) {
    write_csv(os, table);
  } else {
    write_json(os, table);
  }
}

Table ensemble_table(const std::vector<double>& times, std::size_t n_paths,
                     const std::vector<double>& values, bool summary,
                     const std::vector<double>* explosion_time) {
  Table table;
  const std::size_t nt = times.size();
  if (!summary) {
    table.columns = {"path", "t", "x"};
    for (std::size_t i = 0; i < n_paths; ++i) {
      for (std::size_t j = 0; j < nt; ++j) {
        table.add_row({static_cast<std::int64_t>(i), times[j], values[i * nt + j]});
      }
    }
    return table;
  }
  table.columns = {"t", "n", "mean", "variance", "mean_se", "variance_se", "exploded"};
  for (std::size_t j = 0; j < nt; ++j) {
    std::vector<double> col(n_paths);
    std::int64_t exploded = 0;
    for (std::size_t i = 0; i < n_paths; ++i) {
      col[i] = values[i * nt + j];
      if (explosion_time && (*explosion_time)[i] >= 0.0 && (*explosion_time)[i] <= times[j]) ++exploded;
    }
    const SampleSummary s = summarize(col);
    table.add_row({times[j], static_cast<std::int64_t>(s.n), s.mean, s.variance, s.mean_se, s.variance_se,
                   exploded});
  }
  return table;
}

Table run_simulate(const RunConfig& c, std::uint64_t seed) {
  const std::vector<double> times = time_grid(c);
  const double dt = c.dt > 0.0 ? c.dt : default_dt(c.params);
  switch (c.scheme) {
    case Scheme::Euler:
    case Scheme::HyperbolicEuler: {
      const PathEnsemble e = c.scheme == Scheme::Euler ? simulate_euler(c.params, times, c.n_paths, dt, seed)
                                                       : simulate_hyperbolic(c.params, times, c.n_paths, dt, seed);
      return ensemble_table(e.times, e.n_paths, e.paths, c.summary, &e.explosion_time);
    }
    case Scheme::IntegratingFactor:
    case Scheme::ConditionalGaussian: {
      const auto steps = static_cast<std::size_t>(std::max(10.0, std::ceil(c.t / dt)));
      const std::vector<double> xs =
          c.scheme == Scheme::IntegratingFactor
              ? simulate_integrating_factor(c.params, c.t, c.n_paths, steps, seed)
              : simulate_conditional_gaussian(c.params, c.t, c.n_paths, steps, seed);
      return ensemble_table({c.t}, c.n_paths, xs, c.summary, nullptr);
    }
  }
  throw std::logic_error("unknown scheme");
}

Table run_density(const RunConfig& c) {
  Table table;
  table.columns = {"x", "f"};
  if (c.cdf) table.columns.emplace_back("cdf");
  for (double x : linspace(c.xmin, c.xmax, c.n)) {
    double f = 0.0;
    if (c.method == DensityMethod::Transform) {
      f = invert_transform(x, c.t, c.params, c.inversion).value;
    } else {
      f = density(c.family, x, c.t, c.params);
    }
    std::vector<Cell> row = {x, f};
    if (c.cdf) {
      const DensityFamily fam = c.method == DensityMethod::Transform ? DensityFamily::TransformInverted : c.family;
      row.emplace_back(density_cdf(fam, x, c.t, c.params));
    }
    table.add_row(std::move(row));
  }
  return table;
}

Table run_figure(const RunConfig& c) {
  const auto paths =
      emit_figure_data(c.family, c.params, c.figure_times, linspace(c.xmin, c.xmax, c.n), c.figure_dir);
  Table table;
  table.columns = {"t", "path"};
  for (std::size_t i = 0; i < paths.size(); ++i) table.add_row({c.figure_times[i], paths[i]});
  return table;
}

Table run_moments(const RunConfig& c) {
  const auto mv = moment_odes_solve(c.params, c.order, time_grid(c), c.x0);
  Table table;
  table.columns = {"t"};
  for (int n = 0; n <= c.order; ++n) table.columns.push_back("e" + std::to_string(n));
  table.columns.emplace_back("mean");
  table.columns.emplace_back("variance");
  for (const MomentVector& m : mv) {
    std::vector<Cell> row = {m.t};
    for (double v : m.values) row.emplace_back(v);
    row.emplace_back(m.mean());
    row.emplace_back(c.order >= 2 ? m.variance() : std::nan(""));
    table.add_row(std::move(row));
  }
  return table;
}

Table run_classify(const RunConfig& c) {
  const MarketState s = classify_market(c.params);
  Table table;
  table.columns = {"nu", "m", "regime", "momentum_dominated", "timescale", "price_scale"};
  table.add_row({s.nu, 0.5 * (s.nu + 1.0), std::string(to_string(s.regime)), s.momentum_dominated, s.timescale,
                 s.price_scale});
  return table;
}

Table run_var(const RunConfig& c) {
  Table table;
  table.columns = {"u0", "t", "model", "signed_var", "var"};
  for (double u : c.u0) {
    VarRequest r;
    r.u0 = u;
    r.t = c.t;
    r.params = c.params;
    double s = 0.0;
    switch (c.var_method) {
      case VarMethod::Gaussian: s = gaussian_var(r); break;
      case VarMethod::Hyperbolic: s = hyperbolic_var(r); break;
      case VarMethod::MixtureExperimental: s = momentum_mixture_var_experimental(r); break;
    }
    table.add_row({u, c.t, std::string(to_string(c.var_method)), s, std::abs(s)});
  }
  return table;
}

Table run_tails(const RunConfig& c) {
  Table table;
  if (c.explosion) {
    table.columns = {"t", "variance", "explosion_factor", "k_equivalent"};
    for (const ExplosionRow& r : explosion_report(c.params, time_grid(c))) {
      table.add_row({r.t, r.variance, r.explosion_factor, r.k_equivalent});
    }
    return table;
  }
  table.columns = {"k", "family", "nu", "side", "probability", "log10_probability"};
  const bool student = c.tail_family == TailFamily::StudentNu;
  const std::optional<double> nu = student ? std::optional<double>(c.tail_nu) : std::nullopt;
  for (double k : c.k) {
    const double lp = log_tail_probability(k, c.tail_family, nu, c.tail_side);
    table.add_row({k, std::string(student ? "student" : "gaussian"), student ? c.tail_nu : std::nan(""),
                   std::string(c.tail_side == TailSide::OneSided ? "one" : "two"), std::exp(lp),
                   lp / std::log(10.0)});
  }
  return table;
}

Table run_microsim(const RunConfig& c, std::uint64_t seed) {
  const std::vector<double> times = time_grid(c);
  const double dt = c.dt > 0.0 ? c.dt : std::min(0.01, times.front() / 10.0);
  const std::vector<double> v = simulate_discrete_ensemble(c.micro, times, dt, c.n_paths, seed);
  Table table = ensemble_table(times, c.n_paths, v, c.summary, nullptr);
  if (!c.summary) return table;
  table.columns.erase(table.columns.end() - 1);
  for (auto& row : table.rows) row.pop_back();
  table.columns.emplace_back("e1_sde");
  table.columns.emplace_back("variance_sde");
  std::optional<ModelParams> mapped;
  try {
    mapped = map_to_sde(c.micro);
  } catch (const std::domain_error&) {
  }
  std::vector<MomentVector> mv;
  if (mapped) mv = moment_odes_solve(*mapped, 2, times);
  for (std::size_t j = 0; j < table.rows.size(); ++j) {
    table.rows[j].emplace_back(mapped ? mv[j].mean() : std::nan(""));
    table.rows[j].emplace_back(mapped ? mv[j].variance() : std::nan(""));
  }
  return table;
}

bool randomized(const RunConfig& c) {
  return c.command == Command::Simulate || c.command == Command::Microsim || c.command == Command::Validate;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  std::optional<std::uint64_t> seed = config.seed;
  if (randomized(config) && !seed) {
    seed = std::random_device{}() | (static_cast<std::uint64_t>(std::random_device{}()) << 32);
    err << "seed: " << *seed << '\n';
  }

  std::ofstream file;
  if (!config.output_path.empty()) {
    file.open(config.output_path);
    if (!file) throw usage_error("cannot write " + config.output_path);
  }
  std::ostream& os = config.output_path.empty() ? out : file;

  int code = 0;
  json extra;
  switch (config.command) {
    case Command::Simulate: emit(run_simulate(config, *seed), config.format, os); break;
    case Command::Density:
      emit(config.figure_dir.empty() ? run_density(config) : run_figure(config), config.format, os);
      break;
    case Command::Moments: emit(run_moments(config), config.format, os); break;
    case Command::Classify:
      if (config.format == OutputFormat::JSON) {
        write_json_record(os, run_classify(config));
      } else {
        write_csv(os, run_classify(config));
      }
      break;
    case Command::Var: emit(run_var(config), config.format, os); break;
    case Command::Tails: emit(run_tails(config), config.format, os); break;
    case Command::Microsim: {
      emit(run_microsim(config, *seed), config.format, os);
      try {
        extra["mapped_model"] = model_json(map_to_sde(config.micro));
      } catch (const std::domain_error& e) {
        extra["mapped_model"] = e.what();
      }
      break;
    }
    case Command::Validate: {
      const ValidationReport report = run_validation(config.suite, *seed);
      if (config.format == OutputFormat::JSON) {
        os << report_json(report) << '\n';
      } else {
        Table t;
        t.columns = {"name", "statistic", "threshold", "comparison", "pass"};
        for (const Check& ch : report.checks) {
          t.add_row({ch.name, ch.statistic, ch.threshold, std::string(ch.at_least ? ">=" : "<="), ch.pass});
        }
        write_csv(os, t);
      }
      extra["validation_wall_time"] = report.wall_time;
      code = report.pass() ? 0 : 1;
      break;
    }
  }
  if (!config.output_path.empty()) {
    file.close();
    if (!file) throw usage_error("error writing " + config.output_path);
  }

  json sidecar = config_json(config, seed);
  for (auto& [key, value] : extra.items()) sidecar[key] = value;
  sidecar["exit_code"] = code;
  sidecar["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (config.output_path.empty()) {
    err << sidecar.dump() << '\n';
  } else {
    const std::string path = config.output_path + ".json";
    std::ofstream side(path);
    side << sidecar.dump(2) << '\n';
    if (!side) throw usage_error("cannot write " + path);
  }
  return code;
}

}  // namespace hbm::harness
