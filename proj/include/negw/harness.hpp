#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negw/filters.hpp"
#include "negw/signal.hpp"
#include "negw/spectral.hpp"
#include "negw/weights.hpp"

namespace negw::harness {

/// One filter run inside an experiment. Weight parameters and overrides fall
/// back to the experiment-level values when absent; experiment-level overrides
/// are inherited by the guided methods (power, cg_guided) only. The
/// self-guided bilateral filter uses overrides only when it lists its own.
struct FilterSpec {
  std::string label;
  FilterMethod method = FilterMethod::cg_guided;
  std::size_t iterations = 1;
  std::optional<WeightParams> weight_params;
  std::optional<std::vector<NegativeOverride>> overrides;

  friend bool operator==(const FilterSpec&, const FilterSpec&) = default;
};

struct ExperimentConfig {
  std::string name;
  PiecewiseConstantSpec signal_spec;
  NoiseSpec noise;
  WeightParams weight_params;
  std::vector<NegativeOverride> overrides;
  std::vector<FilterSpec> filter_configs;
  std::size_t eigenmode_count = 0;
  std::filesystem::path output_dir;
  std::vector<std::uint64_t> seeds;

  /// Throws ConfigError on an unsafe name, duplicate labels, bad overrides, ...
  void validate() const;

  /// The fully resolved parameters of filter `index`.
  FilterConfig resolve(std::size_t index) const;

  /// `seeds`, or the single noise seed when the list is empty.
  std::vector<std::uint64_t> effective_seeds() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Strict JSON reader: unknown keys and missing required keys are ConfigErrors.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
/// Canonical JSON (sorted keys, two-space indent).
std::string experiment_config_to_json(const ExperimentConfig& cfg, bool include_output_dir = true);

/// 64-bit FNV-1a digest as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// fnv1a_hex of the canonical JSON without output_dir.
std::string config_hash(const ExperimentConfig& cfg);

struct Provenance {
  std::string config_hash;
  std::string generator;
  std::string library_version;
  int config_schema_version = 0;
};

struct FilterOutcome {
  std::optional<Signal> output;
  double psnr = 0.0;
  bool cg_breakdown = false;
  std::string error;  // empty on success

  bool ok() const noexcept { return output.has_value(); }
};

struct SeedRun {
  std::uint64_t seed = 0;
  Signal noisy;
  double noisy_psnr = 0.0;
  std::vector<FilterOutcome> filters;  // parallel to ExperimentConfig::filter_configs
};

struct PsnrSummary {
  std::string label;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t successes = 0;
  std::size_t failures = 0;
};

enum class FigureJob { fig1, fig2, fig3, fig4 };

struct ExperimentResult {
  std::string name;
  ExperimentConfig config;             // denoising experiments
  std::optional<FigureJob> figure;     // figure jobs
  Signal guide;                        // clean signal / figure guide
  std::vector<SeedRun> runs;
  std::vector<PsnrSummary> summary;    // parallel to filter_configs
  std::optional<EigenSystem> eigensystem;
  std::optional<std::size_t> edge_index;
  std::vector<NegativeOverride> figure_overrides;
  Provenance provenance;
};

struct RunOptions {
  int jobs = 1;  // seeds processed concurrently
};

/// Deterministic eigenmode jobs: fig1 = constant guide, fig2 = one large jump,
/// fig3/fig4 = fig2 with the edge weight replaced by -0.05 / -0.2.
ExperimentResult run_figure_job(FigureJob which);

/// The guide signal, weights and overrides behind a figure job.
struct FigureSystem {
  Signal guide;
  WeightParams params;
  std::vector<NegativeOverride> overrides;
  std::optional<std::size_t> edge_index;
  std::size_t modes = 5;
};
FigureSystem figure_system(FigureJob which);

/// For each seed: noisy = clean + noise, then every filter, PSNR against clean.
/// Filter failures are recorded per (seed, filter) without stopping the run.
ExperimentResult run_denoise_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Shipped configurations for the edge-preserving (nonnegative weights) and
/// edge-enhancing (negative edge weights) denoising experiments.
ExperimentConfig fig5_config();
ExperimentConfig fig6_config();

struct PsnrComparisonEntry {
  std::string label;
  double mean_difference = 0.0;  // mean over seeds of psnr(b) - psnr(a)
  std::size_t wins = 0;          // seeds where b beats a
  std::size_t losses = 0;
  std::size_t ties = 0;
  std::vector<double> per_seed_differences;
};

struct PsnrComparison {
  std::vector<PsnrComparisonEntry> entries;  // filters present in both results, in a's order

  const PsnrComparisonEntry* find(std::string_view label) const;
};

/// Compares two denoising results with the same seeds and signal spec.
/// Throws UsageError when they do not match.
PsnrComparison compare_psnr(const ExperimentResult& a, const ExperimentResult& b);

/// signals.csv (denoising only), eigenmodes.csv, plot.svg and manifest.json.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

std::string manifest_json(const ExperimentResult& result);

/// JSON report of compare_psnr.
std::string comparison_json(const PsnrComparison& comparison, const ExperimentResult& a,
                            const ExperimentResult& b);

std::string_view figure_name(FigureJob which);

}  // namespace negw::harness
