#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jcq/bath_kernel.hpp"
#include "jcq/dynamics.hpp"
#include "jcq/noise.hpp"
#include "jcq/simd/batch.hpp"

// Scenario layer: configuration ingestion, the canonical parameter sweeps
// (decoherence D(t) for Ohmic / 1/f / composite baths), critical-alpha_f
// bisection, and deterministic CSV/JSON emission.  This is the only
// user-facing surface; everything below it is a pure library.

namespace jcq::scenario {

enum class Figure { fig1, fig2, fig3 };

// how numeric band edges are converted to energies: ordinary frequencies
// nu (E = h nu) or angular frequencies (E = hbar omega)
enum class BandInterp { ordinary, angular };

enum class SourceSet { ohmic_only, oneoverf_only, composite };

struct TGrid {
  double start = 0.0;
  double stop = 0.02;
  int points = 201;
};

struct FreqBand {
  double lo;
  double hi;
};

// Defaults reproduce the reference setup: E_J = 51.8 ueV, eta = 1e-6,
// Ohmic band 1-50 GHz with the soft cutoff at the top edge, 1/f band
// 1 kHz - 1 GHz with kappa derived from C_g = 1e-18 F, C_J = 1e-16 F.
struct ScenarioConfig {
  double e_j_ueV = 51.8;
  std::vector<double> temperatures_K = {0.03};
  double eta = 1e-6;
  double e_cut_GHz = 50.0;
  std::vector<double> alpha_f_values = {1e-7};
  double kappa_ueV2 = 0.0;  // 0 = derive from the capacitances below
  double C_g_F = 1e-18;
  double C_j_F = 1e-16;
  FreqBand ohmic_band_GHz = {1.0, 50.0};
  FreqBand oneoverf_band_Hz = {1e3, 1e9};
  TGrid t_grid{};
  dynamics::QubitState initial_state = {1.0, 0.0, {0.0, 0.0}};
  SourceSet sources = SourceSet::composite;
  noise::CutoffSign cutoff_sign = noise::CutoffSign::negative;
  BandInterp band_interp = BandInterp::ordinary;
  kernel::QuadratureSpec quadrature{};
};

// per-figure presets: fig1 = Ohmic only over three temperatures; fig2 =
// 1/f only over three alpha_f; fig3 = composite at 30 mK over three
// alpha_f.  Returned configs are ordinary ScenarioConfigs, so callers can
// override any field before running.
ScenarioConfig figure_defaults(Figure which);

// partial configuration, as parsed from a key=value file or CLI flags;
// unset fields leave the base config untouched.  The last three fields are
// runner-level settings that ScenarioConfig does not carry.
struct ConfigOverrides {
  std::optional<double> e_j_ueV;
  std::optional<std::vector<double>> temperatures_K;
  std::optional<double> eta;
  std::optional<double> e_cut_GHz;
  std::optional<std::vector<double>> alpha_f_values;
  std::optional<double> kappa_ueV2;
  std::optional<double> C_g_F;
  std::optional<double> C_j_F;
  std::optional<FreqBand> ohmic_band_GHz;
  std::optional<FreqBand> oneoverf_band_Hz;
  std::optional<TGrid> t_grid;
  std::optional<dynamics::QubitState> initial_state;
  std::optional<SourceSet> sources;
  std::optional<noise::CutoffSign> cutoff_sign;
  std::optional<BandInterp> band_interp;
  std::optional<double> rel_tol;

  std::optional<std::string> out_dir;
  std::optional<double> threshold;
  std::optional<simd::Backend> backend;
};

// flat key=value file ('#' comments, blank lines ignored); unknown keys and
// malformed values raise ConfigError naming the key
ConfigOverrides parse_config_file(const std::filesystem::path& path);

// applies one key=value pair using the config-file grammar; shared by the
// file reader and the CLI flag layer so both accept identical syntax
void apply_key_value(ConfigOverrides& ov, const std::string& key,
                     const std::string& value);

void apply_overrides(ScenarioConfig& cfg, const ConfigOverrides& ov);

// fully resolved parameters for one curve, echoed into every output
struct ResolvedParams {
  double e_j_ueV;
  double temperature_K;
  double eta;
  double alpha_f;
  double kappa_ueV2;
  double e_c_ueV;  // 0 when kappa was given directly
  double e_cut_ueV;
  noise::Band ohmic_band_ueV;
  noise::Band oneoverf_band_ueV;
  SourceSet sources;
  noise::CutoffSign cutoff_sign;
  BandInterp band_interp;
  TGrid t_grid;
  kernel::QuadratureSpec quadrature;
  std::string backend;
};

struct SweepRow {
  double t;
  double tau_ps;
  double b2_ohmic;
  double b2_oneoverf;
  double b2_total;
  double D;
};

struct SweepResult {
  ResolvedParams params;
  std::vector<SweepRow> rows;  // sorted by t ascending
  std::uint64_t evaluations = 0;  // total integrand evaluations
};

// both kernels of every active source at a single time; the C values are
// byproducts of the shared-panel quadrature, so this costs the same as one
// sweep row
struct PointResult {
  double t;
  double tau_ps;
  double b2_ohmic;
  double b2_oneoverf;
  double b2_total;
  double c_ohmic;
  double c_oneoverf;
  double c_total;
  double D;
  std::uint64_t evaluations;
  ResolvedParams params;
};

PointResult run_point(const ScenarioConfig& cfg, double t);

// evaluates one curve using the first temperature and first alpha_f of the
// config; kernel non-convergence is rethrown with the offending (t, source)
SweepResult run_sweep(const ScenarioConfig& cfg);

struct Curve {
  std::string label;
  double param_value;  // the swept parameter (T in K, or alpha_f)
  std::string csv_name;
  SweepResult sweep;
};

struct FigureResult {
  Figure which;
  std::vector<Curve> curves;
};

// runs the curve family of the given figure on top of cfg (typically
// figure_defaults(which) with user overrides applied)
FigureResult run_figure(Figure which, const ScenarioConfig& cfg);

struct CriticalAlphaReport {
  double alpha_star;
  double analytic_estimate;  // small-angle inversion of D(t_op) = threshold
  double d_at_alpha_star;    // re-evaluated through the full quadrature
  double threshold;
  double t_op;
  double reference_alpha_f;  // published estimate kept for comparison
  double d_at_reference;
  int iterations;
  double bracket_lo;
  double bracket_hi;
  ResolvedParams params;
};

// log-space bisection of alpha_f -> D(t_op) over [1e-12, 1e-3] down to 1%
// relative bracket width; throws DomainError if the bracket does not
// straddle the threshold
CriticalAlphaReport critical_alpha_f(double threshold, double t_op,
                                     const ScenarioConfig& cfg);
CriticalAlphaReport critical_alpha_f(const ScenarioConfig& cfg);

// 17-significant-digit, locale-independent formatting used for all numeric
// output (CSV cells and CLI prints)
std::string format_double(double v);

// exact CSV image of a sweep: header
// t,tau_ps,b2_ohmic,b2_oneoverf,b2_total,D then one line per row, LF only
std::string to_csv(const SweepResult& r);

void emit_csv(const SweepResult& r, const std::filesystem::path& file);

struct Emitted {
  std::vector<std::filesystem::path> csv_files;
  std::filesystem::path manifest;
};

// writes one CSV per curve plus manifest.json into out_dir (created if
// missing); returns the paths
Emitted emit_figure(const FigureResult& fr, const std::filesystem::path& out_dir);
Emitted emit_sweep(const SweepResult& r, const std::filesystem::path& out_dir);
std::filesystem::path emit_critical_alpha(const CriticalAlphaReport& rep,
                                          const std::filesystem::path& out_dir);

}  // namespace jcq::scenario
