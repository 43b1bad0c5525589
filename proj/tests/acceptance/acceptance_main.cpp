// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here and never relaxed. Exit status is 0 when the set of failing criteria
// equals the set passed with --expected-failures (empty by default).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hbm/densities.hpp"
#include "hbm/laplace.hpp"
#include "hbm/microstructure.hpp"
#include "hbm/moments.hpp"
#include "hbm/risk.hpp"
#include "hbm/sde_simulation.hpp"
#include "hbm/special_functions.hpp"
#include "hbm/statistics.hpp"
#include "oracles.hpp"

using namespace hbm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const char* fmt, double stat, double bound) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, stat, bound);
    if (!detail.empty()) detail += "; ";
    detail += buf;
    if (!ok) {
      detail += " [fail]";
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

double rel(double a, double b) { return oracle::rel(a, b); }

Outcome headline_tails() {
  Outcome o;
  const double g = tail_probability(25.0, TailFamily::Gaussian, std::nullopt, TailSide::TwoSided);
  const double s = tail_probability(25.0, TailFamily::StudentNu, 4.0, TailSide::TwoSided);
  o.require(std::abs(std::log10(g / 6e-138)) <= 0.3, "|log10(P_gauss/6e-138)| = %.4f <= %.1f",
            std::abs(std::log10(g / 6e-138)), 0.3);
  o.require(s / 4e-6 >= 0.5 && s / 4e-6 <= 2.0, "P_student4/4e-6 = %.4f within factor %.0f", s / 4e-6, 2.0);
  return o;
}

Outcome explosion_threshold() {
  Outcome o;
  const double ve = explosion_factor_from_exponent(6.4746);
  const double k = sigma_event_equivalent(25.0, ve);
  o.require(std::abs(ve - 100.0) <= 0.1, "|V_E - 100| = %.5f <= %.1f", std::abs(ve - 100.0), 0.1);
  o.require(std::abs(k - 2.5) <= 0.002, "|k_eq - 2.5| = %.6f <= %.3f", std::abs(k - 2.5), 0.002);
  return o;
}

Outcome variance_ode() {
  double worst = 0.0;
  for (double nu : {-2.0, 0.0, 1.0, 2.0, 3.0, 4.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    for (const MomentVector& m : moment_odes_solve(p, 2, {0.0, 0.1, 1.0, 5.0})) {
      if (m.t > 0.0) worst = std::max(worst, rel(m.variance(), variance_closed_form(p, m.t)));
    }
  }
  Outcome o;
  o.require(worst < 1e-8, "max rel diff = %.3e < %.0e", worst, 1e-8);
  return o;
}

Outcome monte_carlo_ks() {
  Outcome o;
  const std::pair<double, DensityFamily> fams[] = {
      {0.0, DensityFamily::Nu0}, {2.0, DensityFamily::Chameleon}, {-2.0, DensityFamily::BimodalNuMinus2}};
  std::uint64_t seed = 1001;
  for (auto [nu, fam] : fams) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    const PathEnsemble e = simulate_euler(p, {1.0}, 100000, 1e-3, seed++);
    const double d = ks_one_sample(e.column(0), [&](double x) { return density_cdf(fam, x, 1.0, p); });
    char fmt[64];
    std::snprintf(fmt, sizeof fmt, "KS(nu=%g) = %%.5f < %%.2f", nu);
    o.require(d < 0.01, fmt, d, 0.01);
  }
  return o;
}

Outcome transform_inversion() {
  double worst0 = 0.0;
  double worst2 = 0.0;
  const ModelParams p0 = ModelParams::from_nu(0.0, 1.0, 1.0);
  const ModelParams p2 = ModelParams::from_nu(2.0, 1.0, 1.0);
  for (double x : {0.0, 0.5, 2.0}) {
    for (double t : {0.5, 1.0, 5.0}) {
      const double f0 = nu0_density(x, t, p0);
      const double f2 = chameleon_density(x, t, p2);
      if (f0 > 1e-6) worst0 = std::max(worst0, rel(invert_transform(x, t, p0), f0));
      if (f2 > 1e-6) worst2 = std::max(worst2, rel(invert_transform(x, t, p2), f2));
    }
  }
  Outcome o;
  o.require(worst0 < 1e-4, "nu=0 max rel = %.3e < %.0e", worst0, 1e-4);
  o.require(worst2 < 1e-4, "nu=2 max rel = %.3e < %.0e", worst2, 1e-4);
  return o;
}

Outcome representations() {
  double worst = 0.0;
  for (double nu : {0.0, 1.0, 2.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    for (double x : {0.1, 1.0, 5.0}) {
      for (double pp : {0.5, 1.0, 2.0}) {
        const double h = transform_density(x, pp, p);
        const double l = transform_density_legendre(x, pp, p);
        const double s = transform_density_series(x, pp, p);
        worst = std::max({worst, rel(h, l), rel(h, s), rel(l, s)});
      }
    }
  }
  std::mt19937_64 rng(314159);
  std::uniform_real_distribution<double> nu_d(-6.0, 6.0);
  std::uniform_real_distribution<double> s_d(0.0, 50.0);
  double residual = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double nu = nu_d(rng);
    const double s = 50.0 - s_d(rng);  // (0, 50]
    const double g = indicial_root(nu, s);
    residual = std::max(residual, std::abs(g * g + nu * g - s));
  }
  Outcome o;
  o.require(worst < 1e-9, "pairwise max rel = %.3e < %.0e", worst, 1e-9);
  o.require(residual < 1e-10, "indicial residual = %.3e < %.0e", residual, 1e-10);
  return o;
}

Outcome chameleon() {
  double worst_var = 0.0;
  for (double s2 : {0.5, 1.0, 2.0}) {
    const ModelParams p = ModelParams::from_nu(2.0, 1.0, s2);
    for (double t : {0.5, 1.0, 5.0}) {
      const double c = 1.0 / s2;
      const double v = oracle::whole_line([&](double u) {
        if (std::abs(u) > 300.0) return 0.0;
        const double x = c * std::sinh(u);
        return x * x * chameleon_density(x, t, p) * c * std::cosh(u);
      });
      worst_var = std::max(worst_var, rel(v, t));
    }
  }
  const ModelParams p = ModelParams::from_nu(2.0, 1.0, 1.0);
  const double early = rel(chameleon_density(0.0, 1e-4, p), 1.0 / std::sqrt(2.0 * std::numbers::pi * 1e-4));
  double late = 0.0;
  for (double x : {0.0, 1.0, 3.0}) {
    late = std::max(late, rel(chameleon_density(x, 1e3, p), 0.5 / std::pow(1.0 + x * x, 1.5)));
  }
  Outcome o;
  o.require(worst_var < 1e-6, "variance rel = %.3e < %.0e", worst_var, 1e-6);
  o.require(early < 1e-3, "t=1e-4 vs Gaussian rel = %.3e < %.0e", early, 1e-3);
  o.require(late < 1e-3, "t=1e3 vs Student-2 rel = %.3e < %.0e", late, 1e-3);
  return o;
}

Outcome pearson() {
  double mass_err = 0.0;
  double moment_err = 0.0;
  for (double nu : {3.0, 5.0}) {
    for (double nu2 : {-1.0, 0.0, 2.0}) {
      const PearsonIVParams p4 = pearson4_from_shape(1.0, 0.0, nu, nu2);
      const auto expect = [&](const std::function<double(double)>& g) {
        return oracle::tanh_sinh(
            [&](double th) {
              const double c = std::cos(th);
              const double x = p4.lambda + p4.a * std::tan(th);
              return g(x) * pearson4_density(x, p4) * p4.a / (c * c);
            },
            -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
      };
      mass_err = std::max(mass_err, std::abs(expect([](double) { return 1.0; }) - 1.0));
      const PearsonIVMoments m = pearson4_moments(p4);
      const double mean = expect([](double x) { return x; });
      const double var = expect([&](double x) { return (x - mean) * (x - mean); });
      moment_err = std::max({moment_err, std::abs(*m.mean - mean) / std::max(1.0, std::abs(mean)), rel(*m.variance, var)});
      if (m.skewness) {
        const double sd = std::sqrt(var);
        const double sk = expect([&](double x) { return std::pow((x - mean) / sd, 3); });
        moment_err = std::max(moment_err, std::abs(*m.skewness - sk) / std::max(1.0, std::abs(sk)));
      }
      if (m.excess_kurtosis) {
        const double sd = std::sqrt(var);
        const double ku = expect([&](double x) { return std::pow((x - mean) / sd, 4); }) - 3.0;
        moment_err = std::max(moment_err, rel(*m.excess_kurtosis, ku));
      }
    }
  }
  const double kurt = *pearson4_moments(pearson4_from_shape(1.0, 0.0, 5.0, 0.0)).excess_kurtosis;
  Outcome o;
  o.require(mass_err < 1e-8, "|mass - 1| = %.3e < %.0e", mass_err, 1e-8);
  o.require(moment_err < 1e-6, "moments rel = %.3e < %.0e", moment_err, 1e-6);
  o.require(std::abs(kurt - 6.0) < 1e-10, "|kurt(nu=5) - 6| = %.3e < %.0e", std::abs(kurt - 6.0), 1e-10);
  return o;
}

Outcome student_stationarity() {
  double worst = 0.0;
  for (double nu : {3.0, 4.0, 6.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    const StudentEquilibrium eq = student_equilibrium(p);
    const auto df = [&](double x) { return p.diffusion_squared(x) * eq.density(x); };
    for (int i = 0; i <= 2000; ++i) {
      const double x = -10.0 + 0.01 * i;
      const double flux = (p.mu1 - p.mu2 * x) * eq.density(x) - 0.5 * oracle::derivative(df, x);
      worst = std::max(worst, std::abs(flux));
    }
  }
  Outcome o;
  o.require(worst < 1e-8, "max |stationary flux| = %.3e < %.0e", worst, 1e-8);
  return o;
}

Outcome microstructure_bridge() {
  MicrostructureParams base;
  base.lambda_buy = 50.0;
  base.lambda_sell = 50.0;
  base.mu_slope = 0.04;
  base.omega = 1.0;
  const ModelParams p = map_to_sde(base);

  Outcome o;
  const SampleSummary s = summarize(simulate_discrete_ensemble(base, {1.0}, 0.01, 10000, 2718));
  const double z_mean = std::abs(s.mean - mean_closed_form(p, 1.0)) / s.mean_se;
  const double z_var = std::abs(s.second_moment - variance_closed_form(p, 1.0)) / s.second_moment_se;
  o.require(std::abs(derive_nu(p) - 3.0) < 1e-12, "|nu - 3| = %.1e < %.0e", std::abs(derive_nu(p) - 3.0), 1e-12);
  o.require(z_mean <= 4.0, "e1 error = %.2f SE <= %.0f", z_mean, 4.0);
  o.require(z_var <= 4.0, "V error = %.2f SE <= %.0f", z_var, 4.0);

  // finer trades: rates and slope up by c, price impact down by c, same SDE
  std::vector<double> disc;
  for (double c : {1.0, 2.0, 4.0}) {
    MicrostructureParams m = base;
    m.lambda_buy *= c;
    m.lambda_sell *= c;
    m.mu_slope *= c;
    m.omega /= c;
    const ModelParams q = map_to_sde(m);
    const std::vector<double> times{0.5, 1.0};
    const std::vector<double> v = simulate_discrete_ensemble(m, times, 0.01, 2000000, 4000 + static_cast<int>(c));
    double d = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
      std::vector<double> col(v.size() / times.size());
      for (std::size_t i = 0; i < col.size(); ++i) col[i] = v[i * times.size() + j];
      const SampleSummary sj = summarize(col);
      const double V = variance_closed_form(q, times[j]);
      d = std::max({d, std::abs(sj.second_moment / V - 1.0), std::abs(sj.mean - mean_closed_form(q, times[j])) / std::sqrt(V)});
    }
    disc.push_back(d);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "discrepancy c=1,2,4: %.4f, %.4f, %.4f", disc[0], disc[1], disc[2]);
  o.detail += std::string("; ") + buf;
  const bool monotone = disc[1] < disc[0] && disc[2] < disc[1];
  o.require(monotone, "monotone decrease = %.0f (need %.0f)", monotone ? 1.0 : 0.0, 1.0);
  return o;
}

Outcome value_at_risk_check() {
  const ModelParams p = ModelParams::from_nu(0.0, 0.2, 1.0);
  const std::size_t n = 1000000;
  std::vector<double> xs = simulate_hyperbolic(p, {1.0}, n, 1.0, 5150).column(0);
  std::sort(xs.begin(), xs.end());
  Outcome o;
  for (double u : {0.01, 0.05, 0.25}) {
    const VarRequest r{u, 1.0, p, VarModel::HyperbolicVar};
    const double q = hyperbolic_var(r);
    const double half = 2.5758 * std::sqrt(u * (1.0 - u) * static_cast<double>(n));
    const auto lo = static_cast<std::size_t>(std::floor(static_cast<double>(n) * u - half));
    const auto hi = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * u + half));
    const bool inside = xs[lo - 1] <= q && q <= xs[hi - 1];
    char fmt[96];
    std::snprintf(fmt, sizeof fmt, "u0=%g: VaR %%.5f in [%.5f, %%.5f]", u, xs[lo - 1]);
    o.require(inside, fmt, q, xs[hi - 1]);
  }
  VarRequest r;
  r.params.sigma1 = 0.2;
  r.params.sigma2 = 1e-4;
  double worst = 0.0;
  for (double u : {0.01, 0.05, 0.25}) {
    r.u0 = u;
    worst = std::max(worst, rel(hyperbolic_var(r), gaussian_var(r)));
  }
  o.require(worst < 1e-6, "sigma2->0 rel = %.3e < %.0e", worst, 1e-6);
  return o;
}

Outcome figures() {
  const ModelParams p = ModelParams::from_nu(0.0, 1.0, 1.0);
  double dev = 0.0;
  for (int i = 0; i <= 60000; ++i) {
    const double x = -3.0 + 1e-4 * i;
    dev = std::max(dev, std::abs(nu0_density(x, 0.1, p) - gaussian_density(x, 0.1, p)));
  }
  const double ratio = nu0_density(4.0, 5.0, p) / gaussian_density(4.0, 5.0, p);
  double osc = 0.0;
  for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    osc = std::max(osc, rel(nu0_density(0.0, t, p), gaussian_density(0.0, t, p)));
  }
  Outcome o;
  o.require(dev < 0.02, "t=0.1 max |f_h - f_g| on [-3,3] = %.5f < %.2f", dev, 0.02);
  o.require(ratio > 10.0, "t=5 f_h(4)/f_g(4) = %.4f > %.0f", ratio, 10.0);
  o.require(osc < 1e-12, "origin osculation rel = %.1e < %.0e", osc, 1e-12);
  return o;
}

std::set<int> parse_ids(const std::string& list) {
  std::set<int> ids;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) ids.insert(std::stoi(tok));
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expected-failures" && i + 1 < argc) {
      expected = parse_ids(argv[++i]);
    } else if (a.rfind("--expected-failures=", 0) == 0) {
      expected = parse_ids(a.substr(20));
    } else {
      std::fprintf(stderr, "usage: %s [--expected-failures id,id,...]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "headline tail probabilities", headline_tails},
      {2, "variance explosion threshold", explosion_threshold},
      {3, "variance closed form vs moment ODE", variance_ode},
      {4, "Monte Carlo vs closed-form densities (KS)", monte_carlo_ks},
      {5, "transform inversion oracle", transform_inversion},
      {6, "transform representation equivalence", representations},
      {7, "chameleon signature", chameleon},
      {8, "Pearson IV normalization and moments", pearson},
      {9, "Student equilibrium stationarity", student_stationarity},
      {10, "microstructure bridge", microstructure_bridge},
      {11, "value at risk", value_at_risk_check},
      {12, "figure overlays", figures},
  };

  std::set<int> failed;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) failed.insert(c.id);
    std::printf("%s  %2d  %-42s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (failed != expected) {
    std::printf("failing set differs from the expected set\n");
    return 1;
  }
  if (!expected.empty()) {
    std::printf("known failures only (documented in README)\n");
  }
  return 0;
}
