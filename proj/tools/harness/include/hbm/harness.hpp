#pragma once

// Command plumbing behind the `hbm` executable: run configuration, tabular
// output (CSV / JSON), the reproducibility sidecar, figure tables and the
// Monte Carlo vs analytic validation suites.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hbm/densities.hpp"
#include "hbm/laplace.hpp"
#include "hbm/microstructure.hpp"
#include "hbm/model.hpp"
#include "hbm/risk.hpp"
#include "hbm/sde_simulation.hpp"

namespace hbm::harness {

std::string_view version() noexcept;

/// Bad options, unreadable or unwritable files. Maps to exit code 2.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Simulate, Density, Moments, Classify, Var, Tails, Microsim, Validate };
enum class OutputFormat { CSV, JSON };
enum class DensityMethod { Closed, Transform };
enum class VarMethod { Gaussian, Hyperbolic, MixtureExperimental };
enum class Suite { Core, Full };

std::string_view to_string(Command command) noexcept;

struct RunConfig {
  Command command = Command::Classify;
  ModelParams params;
  MicrostructureParams micro;

  // time grids
  double t = 1.0;
  std::vector<double> times;  // simulate / microsim / moments; empty means {t}
  double dt = 0.0;            // 0: default for the command
  std::size_t n_paths = 1000;
  std::optional<std::uint64_t> seed;
  Scheme scheme = Scheme::HyperbolicEuler;
  bool summary = false;

  // density
  DensityFamily family = DensityFamily::Nu0;
  DensityMethod method = DensityMethod::Closed;
  InversionOptions inversion;
  double xmin = -5.0;
  double xmax = 5.0;
  std::size_t n = 501;
  bool cdf = false;
  std::string figure_dir;  // non-empty: write the overlay tables instead
  std::vector<double> figure_times = {0.1, 1.0, 5.0};

  // moments
  int order = 2;
  double x0 = 0.0;

  // var
  std::vector<double> u0 = {0.01};
  VarMethod var_method = VarMethod::Hyperbolic;

  // tails
  std::vector<double> k = {25.0};
  TailFamily tail_family = TailFamily::Gaussian;
  double tail_nu = 4.0;
  TailSide tail_side = TailSide::OneSided;
  bool explosion = false;

  // validate
  Suite suite = Suite::Core;

  std::string output_path;  // empty: stdout
  OutputFormat format = OutputFormat::CSV;

  /// Command-specific checks; throws usage_error.
  void validate() const;
};

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// 17 significant digits, so every double round-trips.
std::string format_double(double value);

/// Header row, ',' separator, '\n' line endings.
void write_csv(std::ostream& os, const Table& table);
/// One object per row keyed by column name.
void write_json(std::ostream& os, const Table& table);
/// Single-row table as one JSON object.
void write_json_record(std::ostream& os, const Table& table);

/// Numeric CSV reader for round-trip checks; non-numeric cells are rejected.
Table read_csv(std::istream& is);

/// Passes when statistic <= threshold, or statistic >= threshold for
/// at_least checks.
struct Check {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool at_least = false;
  bool pass = false;

  static Check upper(std::string name, double statistic, double threshold);
  static Check lower(std::string name, double statistic, double threshold);
};

struct ValidationReport {
  std::vector<Check> checks;  // sorted by name
  std::uint64_t seed = 0;
  std::string suite;
  double wall_time = 0.0;  // seconds; not part of the serialized report

  bool pass() const;
};

ValidationReport run_validation(Suite suite, std::uint64_t seed);
/// Deterministic JSON (no timing), stable key names.
std::string report_json(const ValidationReport& report);

struct FigureTable {
  double t = 0.0;
  Table table;  // x, f_hybrid, f_gaussian
};

/// Overlay tables of the hybrid family against the Gaussian N(0, sigma1^2 t).
std::vector<FigureTable> figure_tables(DensityFamily family, const ModelParams& params,
                                       const std::vector<double>& t_list,
                                       const std::vector<double>& x_grid);

/// Writes figure_t<t>.csv (t printed with %g) per horizon into directory; returns the paths.
std::vector<std::string> emit_figure_data(DensityFamily family, const ModelParams& params,
                                          const std::vector<double>& t_list,
                                          const std::vector<double>& x_grid,
                                          const std::string& directory);

std::vector<double> linspace(double a, double b, std::size_t n);

/// Executes the command: writes the output (file or stdout) and the JSON
/// sidecar. Returns 0 on success, 1 when a validation suite fails.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses a flat key=value config text ('#' comments, blank lines allowed)
/// and appends "--key=value" to args for every key not already given there.
std::vector<std::string> merge_config(std::vector<std::string> args, std::string_view config_text);

/// Full command-line entry point: parsing, config merge, run, exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hbm::harness
