#include <algorithm>
#include <cmath>
#include <sstream>

#include "hbm/harness.hpp"

#ifndef HBM_VERSION
#define HBM_VERSION "0.0.0"
#endif

namespace hbm::harness {

std::string_view version() noexcept { return HBM_VERSION; }

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::Simulate: return "simulate";
    case Command::Density: return "density";
    case Command::Moments: return "moments";
    case Command::Classify: return "classify";
    case Command::Var: return "var";
    case Command::Tails: return "tails";
    case Command::Microsim: return "microsim";
    case Command::Validate: return "validate";
  }
  return "unknown";
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {a};
  std::vector<double> out(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + h * static_cast<double>(i);
  out.back() = b;
  return out;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw usage_error(message);
}

void check_times(const std::vector<double>& times) {
  require(!times.empty(), "at least one time is required");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]) && times[i] > 0.0, "times must be positive");
    require(i == 0 || times[i] > times[i - 1], "times must be strictly increasing");
  }
}

}  // namespace

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  const std::vector<double> grid = times.empty() ? std::vector<double>{t} : times;
  switch (command) {
    case Command::Simulate:
      check_times(grid);
      require(n_paths >= 1, "n-paths must be at least 1");
      require(dt >= 0.0 && std::isfinite(dt), "dt must be non-negative");
      if (scheme == Scheme::IntegratingFactor || scheme == Scheme::ConditionalGaussian) {
        require(grid.size() == 1, "this scheme samples a single horizon; pass --t");
      }
      if (scheme == Scheme::HyperbolicEuler) {
        require(params.sigma2 > 0.0, "hyperbolic scheme needs sigma2 > 0");
      }
      break;
    case Command::Density:
      require(t > 0.0 && std::isfinite(t), "t must be positive");
      require(n >= 2, "n must be at least 2");
      require(xmax > xmin, "xmax must exceed xmin");
      if (!figure_dir.empty()) check_times(figure_times);
      break;
    case Command::Moments:
      for (double v : grid) require(std::isfinite(v) && v >= 0.0, "times must be non-negative");
      require(order >= 1 && order <= 12, "order must lie in [1, 12]");
      break;
    case Command::Classify:
      require(params.sigma2 > 0.0, "classification needs sigma2 > 0");
      break;
    case Command::Var:
      require(t > 0.0, "t must be positive");
      require(!u0.empty(), "at least one u0 is required");
      for (double u : u0) require(u > 0.0 && u < 1.0, "u0 must lie in (0, 1)");
      break;
    case Command::Tails:
      if (explosion) {
        for (double v : grid) require(std::isfinite(v) && v >= 0.0, "times must be non-negative");
      } else {
        require(!k.empty(), "at least one k is required");
        for (double v : k) require(std::isfinite(v) && v >= 0.0, "k must be non-negative");
        if (tail_family == TailFamily::StudentNu) require(tail_nu > 2.0, "tail nu must exceed 2");
      }
      break;
    case Command::Microsim:
      try {
        micro.validate();
      } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
      }
      check_times(grid);
      require(n_paths >= 1, "n-paths must be at least 1");
      require(dt >= 0.0 && std::isfinite(dt), "dt must be non-negative");
      break;
    case Command::Validate:
      break;
  }
}

std::vector<std::string> merge_config(std::vector<std::string> args, std::string_view config_text) {
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::vector<std::string> extra;
  std::istringstream is{std::string(config_text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw usage_error("config line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty() || key.rfind("-", 0) == 0) {
      throw usage_error("config line " + std::to_string(line_no) + ": bad key");
    }
    if (!given(key)) extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace hbm::harness
