#include "negw/harness.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "negw/csv.hpp"
#include "negw/error.hpp"
#include "negw/laplacian.hpp"
#include "negw/version.hpp"
#include "svg.hpp"

namespace negw::harness {

using nlohmann::json;

namespace {

constexpr std::size_t kFigureLength = 100;
constexpr std::size_t kFigureEdge = 50;  // w(50, 51) carries the jump
constexpr double kFigureSigmaR = 0.1;

Provenance make_provenance(std::string hash) {
  return {std::move(hash), std::string(kNoiseGeneratorName), kLibraryVersion, kConfigSchemaVersion};
}

// JSON has no infinity; PSNR of an exact reconstruction is written as "inf".
json real_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

GraphLaplacian guide_laplacian(const Signal& guide, const WeightParams& params,
                               const std::vector<NegativeOverride>& overrides) {
  return build_laplacian(apply_overrides(bilateral_weights(guide, params), overrides));
}

PsnrSummary summarize(const std::string& label, const std::vector<SeedRun>& runs, std::size_t f) {
  PsnrSummary s;
  s.label = label;
  std::vector<double> values;
  for (const auto& run : runs) {
    if (run.filters[f].ok()) {
      values.push_back(run.filters[f].psnr);
    } else {
      ++s.failures;
    }
  }
  s.successes = values.size();
  if (values.empty()) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.stddev = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  long double sum = 0.0L;
  for (double v : values) sum += v;
  s.mean = static_cast<double>(sum / values.size());
  if (std::isinf(s.mean)) {
    const bool all_inf = std::all_of(values.begin(), values.end(), [](double v) { return std::isinf(v); });
    s.stddev = all_inf ? 0.0 : std::numeric_limits<double>::infinity();
    return s;
  }
  if (values.size() > 1) {
    long double ss = 0.0L;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(static_cast<double>(ss / (values.size() - 1)));
  }
  return s;
}

FilterOutcome run_filter(const FilterConfig& fc, const std::optional<GraphLaplacian>& guided,
                         const std::string& guided_error, const Signal& clean, const Signal& noisy) {
  FilterOutcome out;
  try {
    switch (fc.method) {
      case FilterMethod::self_guided_bf:
        out.output = self_guided_bf(noisy, fc.weight_params, fc.iterations, fc.overrides);
        break;
      case FilterMethod::power:
        if (!guided) throw NumericalError(guided_error);
        out.output = power_filter(*guided, noisy, fc.iterations);
        break;
      case FilterMethod::cg_guided: {
        if (!guided) throw NumericalError(guided_error);
        auto cg = cg_guided_filter(*guided, noisy, fc.iterations);
        out.cg_breakdown = cg.breakdown;
        out.output = std::move(cg.output);
        break;
      }
    }
    out.psnr = psnr(clean, *out.output);
  } catch (const std::exception& e) {
    out.output.reset();
    out.error = e.what();
  }
  return out;
}

json overrides_json(const std::vector<NegativeOverride>& overrides) {
  json arr = json::array();
  for (const auto& o : overrides) arr.push_back({{"edge_index", o.edge_index}, {"value", o.value}});
  return arr;
}

}  // namespace

std::string_view figure_name(FigureJob which) {
  switch (which) {
    case FigureJob::fig1: return "fig1";
    case FigureJob::fig2: return "fig2";
    case FigureJob::fig3: return "fig3";
    case FigureJob::fig4: return "fig4";
  }
  return "unknown";
}

FigureSystem figure_system(FigureJob which) {
  WeightParams params;
  params.sigma_d = 0.5;
  params.sigma_r = kFigureSigmaR;
  params.radius = 1;
  params.spatial_term_enabled = false;

  if (which == FigureJob::fig1) {
    return {Signal::constant(kFigureLength, 0.0), params, {}, std::nullopt, 5};
  }
  // One jump of 10 sigma_r, so the bilateral edge weight is exp(-50).
  PiecewiseConstantSpec spec{kFigureLength, {kFigureEdge + 1}, {0.0, 10.0 * kFigureSigmaR}};
  std::vector<NegativeOverride> overrides;
  if (which == FigureJob::fig3) overrides.push_back({kFigureEdge, -0.05});
  if (which == FigureJob::fig4) overrides.push_back({kFigureEdge, -0.2});
  return {generate_piecewise(spec), params, std::move(overrides), kFigureEdge, 5};
}

ExperimentResult run_figure_job(FigureJob which) {
  FigureSystem sys = figure_system(which);
  const GraphLaplacian gl = guide_laplacian(sys.guide, sys.params, sys.overrides);
  EigenSystem es = eig_smallest(gl, sys.modes);

  json description = {{"figure", std::string(figure_name(which))},
                      {"guide", sys.guide.vector()},
                      {"sigma_d", sys.params.sigma_d},
                      {"sigma_r", sys.params.sigma_r},
                      {"spatial_term_enabled", sys.params.spatial_term_enabled},
                      {"overrides", overrides_json(sys.overrides)},
                      {"modes", sys.modes}};
  return ExperimentResult{std::string(figure_name(which)),
                          ExperimentConfig{},
                          which,
                          sys.guide,
                          {},
                          {},
                          std::move(es),
                          sys.edge_index,
                          sys.overrides,
                          make_provenance(fnv1a_hex(description.dump()))};
}

ExperimentResult run_denoise_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const Signal clean = generate_piecewise(cfg.signal_spec);
  const auto seeds = cfg.effective_seeds();
  const std::size_t nf = cfg.filter_configs.size();

  std::vector<FilterConfig> resolved;
  std::vector<std::optional<GraphLaplacian>> guided(nf);
  std::vector<std::string> guided_errors(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    resolved.push_back(cfg.resolve(f));
    if (resolved[f].method == FilterMethod::self_guided_bf) continue;
    try {
      guided[f] = guide_laplacian(clean, resolved[f].weight_params, resolved[f].overrides);
    } catch (const NumericalError& e) {
      guided_errors[f] = e.what();
    }
  }

  std::vector<std::optional<SeedRun>> slots(seeds.size());
  const auto count = static_cast<std::ptrdiff_t>(seeds.size());
  const int jobs = std::max(1, options.jobs);
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    Signal noisy = add_noise(clean, {cfg.noise.sigma, seeds[idx]});
    SeedRun run{seeds[idx], noisy, psnr(clean, noisy), {}};
    for (std::size_t f = 0; f < nf; ++f) {
      run.filters.push_back(run_filter(resolved[f], guided[f], guided_errors[f], clean, noisy));
    }
    slots[idx] = std::move(run);
  }

  std::vector<SeedRun> runs;
  runs.reserve(slots.size());
  for (auto& slot : slots) runs.push_back(std::move(*slot));

  std::vector<PsnrSummary> summary;
  for (std::size_t f = 0; f < nf; ++f) summary.push_back(summarize(cfg.filter_configs[f].label, runs, f));

  std::optional<EigenSystem> es;
  if (cfg.eigenmode_count > 0) {
    es = eig_smallest(guide_laplacian(clean, cfg.weight_params, cfg.overrides), cfg.eigenmode_count);
  }

  return ExperimentResult{cfg.name,
                          cfg,
                          std::nullopt,
                          clean,
                          std::move(runs),
                          std::move(summary),
                          std::move(es),
                          std::nullopt,
                          {},
                          make_provenance(config_hash(cfg))};
}

namespace {

ExperimentConfig denoise_base(std::string name) {
  ExperimentConfig cfg;
  cfg.name = std::move(name);
  // Jumps sit at samples 100, 250, 350; the edges in w(i, i+1) terms are 99, 249, 349.
  cfg.signal_spec = {400, {100, 250, 350}, {0.0, 0.2, 0.08, 0.24}};
  cfg.noise = {0.06, 0};
  cfg.weight_params = {0.5, 0.1, 1, true};
  cfg.eigenmode_count = 5;
  for (std::uint64_t s = 0; s < 20; ++s) cfg.seeds.push_back(s);
  return cfg;
}

std::vector<NegativeOverride> tuned_edge_overrides() {
  return {{99, -2e-3}, {249, -1e-3}, {349, -1e-8}};
}

}  // namespace

ExperimentConfig fig5_config() {
  ExperimentConfig cfg = denoise_base("fig5");
  cfg.filter_configs = {
      {"bf", FilterMethod::self_guided_bf, 100, std::nullopt, std::nullopt},
      {"cg_bf", FilterMethod::cg_guided, 15, std::nullopt, std::nullopt},
  };
  return cfg;
}

ExperimentConfig fig6_config() {
  ExperimentConfig cfg = denoise_base("fig6");
  cfg.overrides = tuned_edge_overrides();
  cfg.filter_configs = {
      {"bf", FilterMethod::self_guided_bf, 100, std::nullopt, std::nullopt},
      {"bf_negative", FilterMethod::self_guided_bf, 100, std::nullopt, tuned_edge_overrides()},
      {"cg_bf", FilterMethod::cg_guided, 15, std::nullopt, std::nullopt},
  };
  return cfg;
}

const PsnrComparisonEntry* PsnrComparison::find(std::string_view label) const {
  for (const auto& e : entries) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

PsnrComparison compare_psnr(const ExperimentResult& a, const ExperimentResult& b) {
  if (a.figure || b.figure) throw UsageError("compare_psnr: figure jobs carry no PSNR data");
  if (a.config.effective_seeds() != b.config.effective_seeds()) {
    throw UsageError("compare_psnr: experiments '" + a.name + "' and '" + b.name + "' use different seeds");
  }
  if (!(a.config.signal_spec == b.config.signal_spec) || a.config.noise.sigma != b.config.noise.sigma) {
    throw UsageError("compare_psnr: experiments '" + a.name + "' and '" + b.name +
                     "' use different signals or noise levels");
  }
  PsnrComparison out;
  for (std::size_t fa = 0; fa < a.config.filter_configs.size(); ++fa) {
    const std::string& label = a.config.filter_configs[fa].label;
    std::size_t fb = b.config.filter_configs.size();
    for (std::size_t j = 0; j < b.config.filter_configs.size(); ++j) {
      if (b.config.filter_configs[j].label == label) fb = j;
    }
    if (fb == b.config.filter_configs.size()) continue;

    PsnrComparisonEntry entry;
    entry.label = label;
    long double sum = 0.0L;
    std::size_t counted = 0;
    for (std::size_t s = 0; s < a.runs.size(); ++s) {
      const auto& oa = a.runs[s].filters[fa];
      const auto& ob = b.runs[s].filters[fb];
      if (!oa.ok() || !ob.ok()) continue;
      const double diff = oa.psnr == ob.psnr ? 0.0 : ob.psnr - oa.psnr;
      entry.per_seed_differences.push_back(diff);
      if (diff > 0) {
        ++entry.wins;
      } else if (diff < 0) {
        ++entry.losses;
      } else {
        ++entry.ties;
      }
      sum += diff;
      ++counted;
    }
    entry.mean_difference =
        counted ? static_cast<double>(sum / counted) : std::numeric_limits<double>::quiet_NaN();
    out.entries.push_back(std::move(entry));
  }
  return out;
}

std::string comparison_json(const PsnrComparison& comparison, const ExperimentResult& a,
                            const ExperimentResult& b) {
  json entries = json::array();
  for (const auto& e : comparison.entries) {
    json diffs = json::array();
    for (double d : e.per_seed_differences) diffs.push_back(real_json(d));
    entries.push_back({{"label", e.label},
                       {"mean_difference_db", real_json(e.mean_difference)},
                       {"wins", e.wins},
                       {"losses", e.losses},
                       {"ties", e.ties},
                       {"per_seed_difference_db", std::move(diffs)}});
  }
  json root = {{"baseline", a.name}, {"candidate", b.name}, {"seeds", a.config.effective_seeds()},
               {"filters", std::move(entries)}};
  return root.dump(2) + "\n";
}

std::string manifest_json(const ExperimentResult& result) {
  json root;
  root["name"] = result.name;
  root["library_version"] = result.provenance.library_version;
  root["config_schema_version"] = result.provenance.config_schema_version;
  root["config_hash"] = result.provenance.config_hash;

  if (result.figure) {
    root["kind"] = "eigenmodes";
    const FigureSystem sys = figure_system(*result.figure);
    root["system"] = {{"n", sys.guide.size()},
                      {"sigma_d", sys.params.sigma_d},
                      {"sigma_r", sys.params.sigma_r},
                      {"radius", sys.params.radius},
                      {"spatial_term_enabled", sys.params.spatial_term_enabled},
                      {"overrides", overrides_json(result.figure_overrides)}};
    if (result.edge_index) root["system"]["edge_index"] = *result.edge_index;
  } else {
    root["kind"] = "denoise";
    root["generator"] = result.provenance.generator;
    root["config"] = json::parse(experiment_config_to_json(result.config, false));
    json filters = json::array();
    for (std::size_t f = 0; f < result.summary.size(); ++f) {
      const auto& s = result.summary[f];
      const FilterConfig fc = result.config.resolve(f);
      json per_seed = json::array();
      json errors = json::array();
      std::size_t breakdowns = 0;
      for (const auto& run : result.runs) {
        const auto& o = run.filters[f];
        per_seed.push_back(o.ok() ? real_json(o.psnr) : json(nullptr));
        if (!o.ok()) errors.push_back({{"seed", run.seed}, {"message", o.error}});
        if (o.cg_breakdown) ++breakdowns;
      }
      filters.push_back({{"label", s.label},
                         {"method", std::string(to_string(fc.method))},
                         {"iterations", fc.iterations},
                         {"overrides", overrides_json(fc.overrides)},
                         {"psnr_mean_db", real_json(s.mean)},
                         {"psnr_stddev_db", real_json(s.stddev)},
                         {"successes", s.successes},
                         {"failures", s.failures},
                         {"cg_breakdowns", breakdowns},
                         {"psnr_per_seed_db", std::move(per_seed)},
                         {"errors", std::move(errors)}});
    }
    json noisy = json::array();
    for (const auto& run : result.runs) noisy.push_back(real_json(run.noisy_psnr));
    root["seeds"] = result.config.effective_seeds();
    root["psnr"] = {{"noisy_per_seed_db", std::move(noisy)}, {"filters", std::move(filters)}};
  }
  if (result.eigensystem) {
    json values = json::array();
    for (double v : result.eigensystem->eigenvalues) values.push_back(real_json(v));
    root["eigenvalues"] = std::move(values);
  }
  return root.dump(2) + "\n";
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  if (result.eigensystem) write_text_file(dir / "eigenmodes.csv", eigensystem_to_csv(*result.eigensystem));

  std::vector<svg::Series> series;
  if (result.figure) {
    const auto& es = *result.eigensystem;
    for (std::size_t m = 0; m < es.size(); ++m) {
      series.push_back({"mode " + std::to_string(m) + " (lambda = " + format_real(es.eigenvalues[m]) + ")",
                        es.eigenvectors[m], false});
    }
  } else if (!result.runs.empty()) {
    const SeedRun& first = result.runs.front();
    std::vector<std::string> headers = {"clean", "noisy"};
    std::vector<std::vector<double>> columns = {result.guide.vector(), first.noisy.vector()};
    series.push_back({"noisy (seed " + std::to_string(first.seed) + ")", first.noisy.vector(), true});
    series.push_back({"clean", result.guide.vector(), false});
    for (std::size_t f = 0; f < first.filters.size(); ++f) {
      if (!first.filters[f].ok()) continue;
      const std::string& label = result.config.filter_configs[f].label;
      headers.push_back(label);
      columns.push_back(first.filters[f].output->vector());
      series.push_back({label, first.filters[f].output->vector(), false});
    }
    write_text_file(dir / "signals.csv", columns_to_csv(headers, columns));
  }
  write_text_file(dir / "plot.svg", svg::line_plot(result.name, series));
  write_text_file(dir / "manifest.json", manifest_json(result));
}

}  // namespace negw::harness
