#pragma once

// Single-point pipeline, parallel parameter sweeps, and CSV/manifest output.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twobody/model.hpp"
#include "twobody/particle_schmidt.hpp"
#include "twobody/radial_angular.hpp"
#include "twobody/relative_motion.hpp"
#include "twobody/wavefield.hpp"

namespace twobody {

inline constexpr const char* kCodeVersion = "twobody 1.0.0";

/// Failure inside the pipeline, tagged with the stage that raised it.
class StageError : public Error {
public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

/// Everything computed for one (kappa, sigma).
struct PointAnalysis {
  SystemParams params;
  NumericsConfig cfg;
  RadialSolution solution;
  PairWavefunctionGrid grid;
  ChannelSet channels;
  SchmidtSpectrum spectrum;
  double purity_integral = 0.0;
  WMatrix W;
  RadialAngularDecomposition decomposition;
  ProductError product;
  double r_peak = 0.0;
};

/// solve -> assemble -> particle spectrum -> radial-angular decomposition.
/// Throws StageError naming the failing stage.
PointAnalysis analyze_point(const SystemParams& params, const NumericsConfig& cfg);

/// Any stage failure is solver_failed; failed_stage names the stage.
enum class PointStatus { ok, under_converged, solver_failed };
std::string to_string(PointStatus status);

inline constexpr int kReportedChannels = 9;  // f_0 .. f_8

struct Observables {
  double E_rel = 0.0;
  double K = 0.0;
  double purity = 0.0;
  std::array<double, kReportedChannels> f{};
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double K_r = 0.0;
  double K_phi = 0.0;
  double r_peak = 0.0;
};

struct Diagnostics {
  double completeness_residual = 0.0;
  double tail_mass = 0.0;
  double norm_residual = 0.0;
  double probability_sum = 0.0;
  double gamma_sum = 0.0;
  double purity_integral = 0.0;
  double product_error_spectral = 0.0;
  double product_error_quadrature = 0.0;
  int m_sine_used = 0;
  /// Which checks failed when status is under_converged.
  std::vector<std::string> flags;
};

struct SweepPoint {
  SystemParams params;
  PointStatus status = PointStatus::ok;
  std::string failed_stage;
  std::string message;
  Observables obs;
  Diagnostics diag;
};

/// Tolerances behind the under_converged status.
inline constexpr double kSumRuleTolerance = 1e-6;
inline constexpr double kPurityRouteTolerance = 1e-6;

SweepPoint summarize(const PointAnalysis& analysis);
/// Never throws for numerical failures; they land in status.
SweepPoint run_point(const SystemParams& params, const NumericsConfig& cfg);

struct SweepManifest {
  std::string name;
  std::string code_version = kCodeVersion;
  /// Numerics overrides; each point resolves them against its own sigma.
  std::map<std::string, std::string> overrides;
  std::vector<SystemParams> grid;
  int workers = 1;
  std::vector<PointStatus> statuses;
  double wall_seconds = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  SweepManifest manifest;
};

/// Evaluates every grid point with `workers` threads; results keep input
/// order.
SweepResult run_sweep(const std::vector<SystemParams>& grid,
                      const std::map<std::string, std::string>& overrides, int workers,
                      const std::string& name = "sweep");

std::string manifest_to_json(const SweepManifest& manifest);
SweepManifest manifest_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Tables. Every CSV has one header row; numbers use 12 significant digits.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  /// Array of objects keyed by header; numeric cells stay numbers.
  std::string to_json() const;
};

Table sweep_table(const std::vector<SweepPoint>& points);
Table decomposition_table(const std::vector<SweepPoint>& points);
Table spectrum_rows(const SchmidtSpectrum& spectrum, int max_modes = 10);
Table spectrum_summary(const SchmidtSpectrum& spectrum);
Table profile_table(const RadialSolution& sol);
Table radial_density_table(const PairWavefunctionGrid& grid);
Table angular_density_table(const PairWavefunctionGrid& grid);

void write_file(const std::string& path, const std::string& content);

// ---------------------------------------------------------------------------
// Figure presets.

inline const std::vector<std::string> kFigureNames = {"fig1a", "fig1b", "fig1c",
                                                      "fig1d", "fig2",  "fig3"};

struct FigurePreset {
  std::string name;
  std::vector<SystemParams> grid;
  std::vector<std::string> columns;
};

/// Throws InvalidArgument for unknown names.
FigurePreset figure_preset(const std::string& name);
Table figure_table(const FigurePreset& preset, const std::vector<SweepPoint>& points);

/// Runs the preset and writes out_dir/<name>/<name>.csv and manifest.json.
/// Returns the written paths.
std::vector<std::string> emit_figure(const std::string& name,
                                     const std::map<std::string, std::string>& overrides,
                                     int workers, const std::string& out_dir);

/// Inclusive arithmetic range with the count rounded to the nearest integer.
std::vector<double> linspace_step(double first, double last, double step);

}  // namespace twobody
