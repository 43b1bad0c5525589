#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>

#include <nlohmann/json.hpp>

#include "hbm/harness.hpp"
#include "hbm/moments.hpp"
#include "hbm/quadrature.hpp"
#include "hbm/random.hpp"
#include "hbm/special_functions.hpp"
#include "hbm/statistics.hpp"

namespace hbm::harness {

Check Check::upper(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, false, statistic <= threshold};
}

Check Check::lower(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, true, statistic >= threshold};
}

bool ValidationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::uint64_t name_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h = (h ^ c) * 1099511628211ULL;
  }
  return splitmix64(seed ^ h);
}

using CheckFn = std::function<Check(std::uint64_t)>;

struct Entry {
  std::string name;
  CheckFn fn;
};

Check tails_gaussian(std::uint64_t) {
  const double p = tail_probability(25.0, TailFamily::Gaussian, std::nullopt, TailSide::TwoSided);
  return Check::upper("risk.tail_gaussian_25", std::abs(std::log10(p / 6e-138)), 0.3);
}

Check tails_student(std::uint64_t) {
  const double p = tail_probability(25.0, TailFamily::StudentNu, 4.0, TailSide::TwoSided);
  return Check::upper("risk.tail_student4_25", std::abs(std::log10(p / 4e-6)), std::log10(2.0));
}

Check explosion_threshold(std::uint64_t) {
  const double ve = explosion_factor_from_exponent(6.4746);
  const double err = std::max(std::abs(ve - 100.0) / 0.1,
                              std::abs(sigma_event_equivalent(25.0, ve) - 2.5) / 0.002);
  return Check::upper("moments.explosion_threshold", err, 1.0);
}

Check variance_ode(std::uint64_t) {
  double worst = 0.0;
  const std::vector<double> ts = {0.1, 1.0, 5.0};
  for (double nu : {-2.0, 0.0, 1.0, 2.0, 3.0, 4.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    const auto mv = moment_odes_solve(p, 2, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      worst = std::max(worst, rel(mv[i].variance(), variance_closed_form(p, ts[i])));
    }
  }
  return Check::upper("moments.variance_ode_vs_closed", worst, 1e-8);
}

Check representations(std::uint64_t) {
  double worst = 0.0;
  for (double nu : {0.0, 1.0, 2.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    for (double x : {0.1, 1.0, 5.0}) {
      for (double pp : {0.5, 2.0}) {
        const double h = transform_density(x, pp, p);
        const double l = transform_density_legendre(x, pp, p);
        const double s = transform_density_series(x, pp, p);
        worst = std::max({worst, rel(l, h), rel(s, h), rel(s, l)});
      }
    }
  }
  return Check::upper("laplace.representation_equivalence", worst, 1e-9);
}

Check inversion(std::uint64_t, double nu, const std::vector<double>& xs, const std::vector<double>& ts,
                const std::string& name) {
  const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
  const DensityFamily fam = nu == 0.0 ? DensityFamily::Nu0 : DensityFamily::Chameleon;
  double worst = 0.0;
  for (double x : xs) {
    for (double t : ts) {
      const double exact = density(fam, x, t, p);
      if (exact > 1e-6) worst = std::max(worst, rel(invert_transform(x, t, p), exact));
    }
  }
  return Check::upper(name, worst, 1e-4);
}

Check chameleon_variance(std::uint64_t) {
  double worst = 0.0;
  for (double s2 : {0.5, 1.0, 2.0}) {
    const ModelParams p = ModelParams::from_nu(2.0, 1.0, s2);
    for (double t : {0.5, 1.0, 5.0}) {
      // x = (sigma1 / sigma2) sinh(u): the tail is lognormal in x, Gaussian in u
      const double c = p.sigma1 / p.sigma2;
      const auto q = integrate_with_cutoff(
          [&](double u) {
            const double x = c * std::sinh(u);
            return x * x * chameleon_density(x, t, p) * c * std::cosh(u);
          },
          1.0, 1e-30, 1e-11);
      worst = std::max(worst, rel(q.value, t));
    }
  }
  return Check::upper("densities.chameleon_variance", worst, 1e-6);
}

Check pearson_mass(std::uint64_t) {
  double worst = 0.0;
  for (double nu : {3.0, 5.0}) {
    for (double nu2 : {-1.0, 0.0, 2.0}) {
      const PearsonIVParams p4 = pearson4_from_shape(1.0, 0.0, nu, nu2);
      worst = std::max(worst, std::abs(pearson4_expectation(p4, [](double) { return 1.0; }) - 1.0));
    }
  }
  return Check::upper("densities.pearson4_mass", worst, 1e-8);
}

// Zero-flux form of stationarity, J = b f - (D f)' / 2, with the analytic
// derivative of the scaled Student density.
Check student_stationarity(std::uint64_t) {
  double worst = 0.0;
  for (double nu : {3.0, 4.0, 6.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    const StudentEquilibrium eq = student_equilibrium(p);
    const double c = p.sigma1 * p.sigma1;
    const double d2 = p.sigma2 * p.sigma2;
    const double ex = -0.5 * (nu + 1.0);
    for (double x = -10.0; x <= 10.0; x += 0.01) {
      const double q = c + d2 * x * x;
      const double f = eq.density(x);
      const double fp = f * ex * 2.0 * d2 * x / q;
      const double flux = -p.mu2 * x * f - 0.5 * (2.0 * d2 * x * f + q * fp);
      worst = std::max(worst, std::abs(flux));
    }
  }
  return Check::upper("densities.student_stationary_flux", worst, 1e-8);
}

Check euler_mean(std::uint64_t seed) {
  ModelParams p;
  p.mu1 = 1.0;
  p.mu2 = 1.0;
  p.sigma1 = 0.2;
  p.sigma2 = 0.5;
  const PathEnsemble e = simulate_euler(p, {1.0}, 10000, 1e-3, seed);
  const std::vector<double> col = e.column(0);
  const SampleSummary s = summarize(col);
  return Check::upper("sde.euler_mean_se", std::abs(s.mean - mean_closed_form(p, 1.0)) / s.mean_se, 4.0);
}

Check ks_family(std::uint64_t seed, double nu, std::size_t n, double dt, const std::string& name,
                double threshold) {
  const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
  const DensityFamily fam = nu == 0.0   ? DensityFamily::Nu0
                            : nu == 2.0 ? DensityFamily::Chameleon
                                        : DensityFamily::BimodalNuMinus2;
  const PathEnsemble e = simulate_euler(p, {1.0}, n, dt, seed);
  const double ks = ks_one_sample(e.column(0), [&](double x) { return density_cdf(fam, x, 1.0, p); });
  return Check::upper(name, ks, threshold);
}

Check micro_bridge(std::uint64_t seed) {
  MicrostructureParams mp;
  mp.lambda_buy = 50.0;
  mp.lambda_sell = 50.0;
  mp.mu_slope = 0.04;
  mp.omega = 1.0;
  const ModelParams p = map_to_sde(mp);
  const std::vector<double> v = simulate_discrete_ensemble(mp, {1.0}, 0.01, 10000, seed);
  const SampleSummary s = summarize(v);
  const double z_mean = std::abs(s.mean - mean_closed_form(p, 1.0)) / s.mean_se;
  const double z_var = std::abs(s.second_moment - variance_closed_form(p, 1.0)) / s.second_moment_se;
  return Check::upper("microstructure.bridge_moments_se", std::max(z_mean, z_var), 4.0);
}

Check var_limit(std::uint64_t) {
  VarRequest r;
  r.params.sigma1 = 0.2;
  r.params.sigma2 = 1e-4;
  double worst = 0.0;
  for (double u : {0.01, 0.05, 0.25}) {
    r.u0 = u;
    worst = std::max(worst, rel(hyperbolic_var(r), gaussian_var(r)));
  }
  return Check::upper("risk.var_sigma2_limit", worst, 1e-6);
}

Check var_mc(std::uint64_t seed) {
  const ModelParams p = ModelParams::from_nu(0.0, 0.2, 1.0);
  const std::size_t n = 1000000;
  // Driftless in the hyperbolic coordinate, so one step is exact.
  std::vector<double> xs = simulate_hyperbolic(p, {1.0}, n, 1.0, seed).column(0);
  std::sort(xs.begin(), xs.end());
  // Worst distance, in units of the 99% order-statistic half-band.
  double worst = 0.0;
  for (double u : {0.01, 0.05, 0.25}) {
    VarRequest r{u, 1.0, p, VarModel::HyperbolicVar};
    const double half = 2.5758 * std::sqrt(u * (1.0 - u) * static_cast<double>(n));
    const auto lo = static_cast<std::size_t>(std::floor(n * u - half));
    const auto hi = static_cast<std::size_t>(std::ceil(n * u + half));
    const double q = hyperbolic_var(r);
    const double band = 0.5 * (xs[hi - 1] - xs[lo - 1]);
    worst = std::max(worst, std::abs(empirical_quantile(xs, u) - q) / band);
  }
  return Check::upper("risk.var_monte_carlo_band", worst, 1.0);
}

Check figure_osculation(std::uint64_t) {
  const ModelParams p = ModelParams::from_nu(0.0, 1.0, 1.0);
  double worst = 0.0;
  for (double t : {0.1, 1.0, 5.0}) {
    worst = std::max(worst, rel(nu0_density(0.0, t, p), gaussian_density(0.0, t, p)));
  }
  return Check::upper("figures.origin_osculation", worst, 1e-12);
}

std::vector<Entry> suite_entries(Suite suite) {
  std::vector<Entry> e = {
      {"tails_gaussian", tails_gaussian},
      {"tails_student", tails_student},
      {"explosion", explosion_threshold},
      {"variance_ode", variance_ode},
      {"representations", representations},
      {"inversion_nu0",
       [](std::uint64_t s) { return inversion(s, 0.0, {0.0, 0.5}, {1.0}, "laplace.inversion_nu0"); }},
      {"pearson", pearson_mass},
      {"student", student_stationarity},
      {"euler_mean", euler_mean},
      {"ks_nu0_small",
       [](std::uint64_t s) {
         return ks_family(s, 0.0, 20000, 1e-3, "sde.ks_nu0_euler_2e4", 1.63 / std::sqrt(20000.0));
       }},
      {"micro", micro_bridge},
      {"var_limit", var_limit},
      {"figure_osculation", figure_osculation},
  };
  if (suite == Suite::Full) {
    e.push_back({"chameleon_variance", chameleon_variance});
    e.push_back({"inversion_nu0_full", [](std::uint64_t s) {
                   return inversion(s, 0.0, {0.0, 0.5, 2.0}, {0.5, 1.0, 5.0}, "laplace.inversion_nu0_grid");
                 }});
    e.push_back({"inversion_nu2_full", [](std::uint64_t s) {
                   return inversion(s, 2.0, {0.0, 0.5, 2.0}, {0.5, 1.0, 5.0}, "laplace.inversion_nu2_grid");
                 }});
    for (double nu : {0.0, 2.0, -2.0}) {
      const std::string name = "sde.ks_euler_1e5_nu" + format_double(nu);
      e.push_back({name, [nu, name](std::uint64_t s) { return ks_family(s, nu, 100000, 1e-3, name, 0.01); }});
    }
    e.push_back({"var_mc", var_mc});
  }
  return e;
}

}  // namespace

ValidationReport run_validation(Suite suite, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  ValidationReport report;
  report.seed = seed;
  report.suite = suite == Suite::Core ? "core" : "full";
  std::vector<std::future<Check>> futures;
  for (const Entry& entry : suite_entries(suite)) {
    const std::uint64_t s = name_seed(seed, entry.name);
    futures.push_back(std::async(std::launch::async, entry.fn, s));
  }
  for (auto& f : futures) report.checks.push_back(f.get());
  std::sort(report.checks.begin(), report.checks.end(),
            [](const Check& a, const Check& b) { return a.name < b.name; });
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_json(const ValidationReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["pass"] = report.pass();
  auto checks = nlohmann::ordered_json::array();
  for (const Check& c : report.checks) {
    nlohmann::ordered_json o;
    o["name"] = c.name;
    o["statistic"] = c.statistic;
    o["threshold"] = c.threshold;
    o["comparison"] = c.at_least ? ">=" : "<=";
    o["pass"] = c.pass;
    checks.push_back(std::move(o));
  }
  j["checks"] = std::move(checks);
  return j.dump(2);
}

}  // namespace hbm::harness
