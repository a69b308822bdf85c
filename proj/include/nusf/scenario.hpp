#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "nusf/entropy.hpp"
#include "nusf/lindblad.hpp"

namespace nusf::scenario {

enum class OutputFormat { Csv, Json };

struct InitialState {
  enum class Kind { Diagonal, Pure };
  Kind kind = Kind::Pure;
  std::array<double, 4> weights{0, 0, 1, 0};  // a1..a4 when diagonal
  Flavour flavour = Flavour::e;
  Helicity helicity = Helicity::R;

  DensityMatrix4 density_matrix() const;
};

struct ScenarioConfig {
  enum class Mode { Dimensionless, Physical };
  Mode mode = Mode::Dimensionless;
  DimensionlessParams dimensionless{};
  PhysicalParams physical{};
  double tau_max = 20.0;
  double tau_step = 0.01;
  InitialState initial_state{};
  entropy::MeasurementSet measurement_mode = entropy::MeasurementSet::paper();
  bool oracle_check = false;
  OutputFormat output_format = OutputFormat::Csv;

  void validate() const;
  std::vector<double> tau_grid() const;
  /// Effective dimensionless parameters (converted when mode is physical).
  DimensionlessParams effective_params() const;

  /// The embedded reference scenario: omega_v_bar 5, omega_b_bar 1,
  /// beta = pi/4, pure nu_e^R over tau in [0, 20] step 0.01.
  static ScenarioConfig paper_scenario();

  /// Strict JSON parsing: unknown keys are rejected.
  static ScenarioConfig from_json_text(const std::string& text);
  static ScenarioConfig from_json_file(const std::filesystem::path& path);
};

/// Unit reduction of a physical configuration. Frequencies in eV, then
/// divided by 2 w^2; requires equal magnetic moments and a non-zero
/// stochastic field (dimensionless time is undefined otherwise).
struct UnitReduction {
  double omega_nu_ev;    // vacuum frequency, eV
  double mu_b_ev;        // mu_nu * B, eV
  double w_squared_ev;   // W^2 = 2 eta (mu B)^2 L0, eV
  DimensionlessParams params;
};
UnitReduction reduce_units(const PhysicalParams& p);
DimensionlessParams to_dimensionless(const PhysicalParams& p);

/// Raised by run() when a trajectory violates a conservation invariant.
struct NumericalInvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunResult {
  std::vector<double> tau;
  std::vector<DensityMatrix4> trajectory;
  std::vector<entropy::EntropyReport> reports;
  double oracle_max_deviation = 0.0;  // filled when oracle_check is on
  bool oracle_checked = false;
};

RunResult run(const ScenarioConfig& config);

/// One row per tau with the fixed column schema (see csv_header());
/// 12 significant digits, deterministic bytes.
void write_timeseries(const std::vector<entropy::EntropyReport>& reports, std::ostream& os,
                      OutputFormat format);
void write_timeseries(const std::vector<entropy::EntropyReport>& reports,
                      const std::filesystem::path& path, OutputFormat format);
const std::vector<std::string>& csv_columns();

/// fig1.csv .. fig7.csv: the curves of the reference figures.
void figure_datasets(const std::vector<entropy::EntropyReport>& reports,
                     const std::filesystem::path& outdir);

}  // namespace nusf::scenario
