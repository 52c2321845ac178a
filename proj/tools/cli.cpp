#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "negw/csv.hpp"
#include "negw/error.hpp"
#include "negw/filters.hpp"
#include "negw/harness.hpp"
#include "negw/laplacian.hpp"
#include "negw/spectral.hpp"
#include "negw/version.hpp"

namespace negw::cli {

namespace fs = std::filesystem;

NegativeOverride parse_override(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("override '" + std::string(text) + "' must have the form index:value");
  }
  const std::string_view idx = text.substr(0, colon);
  const std::string_view val = text.substr(colon + 1);
  NegativeOverride o;
  auto r1 = std::from_chars(idx.data(), idx.data() + idx.size(), o.edge_index);
  auto r2 = std::from_chars(val.data(), val.data() + val.size(), o.value);
  if (idx.empty() || val.empty() || r1.ec != std::errc() || r1.ptr != idx.data() + idx.size() ||
      r2.ec != std::errc() || r2.ptr != val.data() + val.size()) {
    throw UsageError("override '" + std::string(text) + "' must have the form index:value");
  }
  if (!std::isfinite(o.value)) throw UsageError("override '" + std::string(text) + "' has a non-finite value");
  return o;
}

std::vector<NegativeOverride> parse_overrides(const std::vector<std::string>& items) {
  std::vector<NegativeOverride> out;
  std::set<std::size_t> seen;
  for (const auto& item : items) {
    out.push_back(parse_override(item));
    if (!seen.insert(out.back().edge_index).second) {
      throw UsageError("override for edge " + std::to_string(out.back().edge_index) + " given twice");
    }
  }
  return out;
}

namespace {

struct WeightFlags {
  double sigma_d = 0.5;
  double sigma_r = 0.1;
  std::size_t radius = 1;
  bool no_spatial = false;
  std::vector<std::string> overrides;

  void attach(CLI::App* app) {
    app->add_option("--sigma-d", sigma_d, "Spatial falloff of the bilateral weights")->capture_default_str();
    app->add_option("--sigma-r", sigma_r, "Intensity falloff of the bilateral weights")->capture_default_str();
    app->add_option("--radius", radius, "Neighbor radius")->capture_default_str();
    app->add_flag("--no-spatial", no_spatial, "Drop the spatial factor of the weights");
    app->add_option("--override", overrides, "Replace edge weight w(i,i+1), as index:value (repeatable)");
  }

  WeightParams params() const { return {sigma_d, sigma_r, radius, !no_spatial}; }
};

void write_harness_result(const harness::ExperimentResult& result, const fs::path& dir, std::ostream& out) {
  harness::write_outputs(result, dir);
  out << "wrote " << result.name << " -> " << dir.string() << "\n";
}

void print_summary(const harness::ExperimentResult& result, std::ostream& out) {
  for (const auto& s : result.summary) {
    out << "  " << s.label << ": mean PSNR " << format_real(s.mean) << " dB, stddev " << format_real(s.stddev)
        << " dB over " << s.successes << " seeds";
    if (s.failures) out << " (" << s.failures << " failed)";
    out << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-Laplacian signal filters with negative edge weights"};
  app.require_subcommand(1);
  const std::string version = std::string("negw ") + kLibraryVersion + " (config schema " +
                              std::to_string(kConfigSchemaVersion) + ")";
  app.set_version_flag("--version", version);

  // filter
  auto* filter = app.add_subcommand("filter", "Filter a signal CSV");
  std::string f_input, f_guide, f_output, f_method = "cg_guided";
  std::size_t f_iterations = 1;
  WeightFlags f_weights;
  filter->add_option("--input", f_input, "Signal to filter (index,value CSV)")->required();
  filter->add_option("--guide", f_guide, "Guide signal for power/cg_guided (defaults to the input)");
  filter->add_option("--method", f_method, "power | self_guided_bf | cg_guided")->capture_default_str();
  filter->add_option("-m,--iterations", f_iterations, "Iteration count")->required();
  filter->add_option("--output", f_output, "Output CSV")->required();
  f_weights.attach(filter);

  // eigenmodes
  auto* eig = app.add_subcommand("eigenmodes", "Low-frequency eigenmodes of a guide Laplacian");
  std::string e_guide, e_output, e_problem = "standard";
  std::size_t e_k = 5;
  WeightFlags e_weights;
  eig->add_option("--guide", e_guide, "Guide signal CSV")->required();
  eig->add_option("-k,--k", e_k, "Number of eigenpairs")->capture_default_str();
  eig->add_option("--problem", e_problem, "standard (L v = lambda v) | generalized (W v = mu D v)")
      ->check(CLI::IsMember({"standard", "generalized"}))
      ->capture_default_str();
  eig->add_option("--output", e_output, "Output CSV")->required();
  e_weights.attach(eig);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a denoising experiment from a JSON config");
  std::string x_config, x_output;
  int x_jobs = 1;
  std::vector<std::uint64_t> x_seeds;
  exp->add_option("--config", x_config, "Experiment JSON")->required();
  exp->add_option("--output-dir", x_output, "Output directory (defaults to the config's output_dir)");
  exp->add_option("--jobs", x_jobs, "Seeds processed concurrently")->capture_default_str();
  exp->add_option("--seed", x_seeds, "Noise seed; replaces the config's seed list (repeatable)");

  // figures
  auto* figs = app.add_subcommand("figures", "Reproduce the eigenmode and denoising figures");
  std::string g_which = "all", g_output = "figures";
  int g_jobs = 1;
  figs->add_option("which", g_which, "1-6 or all")
      ->check(CLI::IsMember({"1", "2", "3", "4", "5", "6", "all"}))
      ->capture_default_str();
  figs->add_option("--output-dir", g_output, "Output directory")->capture_default_str();
  figs->add_option("--jobs", g_jobs, "Seeds processed concurrently")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostream& stream = e.get_exit_code() == 0 ? out : err;
    return app.exit(e, stream, stream) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*filter) {
      const FilterMethod method = [&] {
        try {
          return parse_filter_method(f_method);
        } catch (const ConfigError& e) {
          throw UsageError(e.what());
        }
      }();
      const auto overrides = parse_overrides(f_weights.overrides);
      const WeightParams params = f_weights.params();
      const Signal input = read_signal_csv(f_input);
      Signal result = input;
      if (method == FilterMethod::self_guided_bf) {
        if (!f_guide.empty()) throw UsageError("self_guided_bf uses the input as its own guide; drop --guide");
        result = self_guided_bf(input, params, f_iterations, overrides);
      } else {
        const Signal guide = f_guide.empty() ? input : read_signal_csv(f_guide);
        if (guide.size() != input.size()) throw UsageError("guide and input lengths differ");
        const GraphLaplacian gl = build_laplacian(apply_overrides(bilateral_weights(guide, params), overrides));
        if (method == FilterMethod::power) {
          result = power_filter(gl, input, f_iterations);
        } else {
          auto cg = cg_guided_filter(gl, input, f_iterations);
          if (cg.breakdown) {
            err << "note: CG stopped after " << cg.iterations_completed << " of " << f_iterations
                << " iterations (breakdown)\n";
          }
          result = std::move(cg.output);
        }
      }
      write_signal_csv(f_output, result);
      return kSuccess;
    }

    if (*eig) {
      const auto overrides = parse_overrides(e_weights.overrides);
      const Signal guide = read_signal_csv(e_guide);
      if (e_k < 1 || e_k > guide.size()) {
        throw UsageError("k = " + std::to_string(e_k) + " must lie in [1, " + std::to_string(guide.size()) + "]");
      }
      const GraphLaplacian gl =
          build_laplacian(apply_overrides(bilateral_weights(guide, e_weights.params()), overrides));
      const EigenSystem es = e_problem == "generalized" ? eig_generalized(gl, e_k) : eig_smallest(gl, e_k);
      write_text_file(e_output, eigensystem_to_csv(es));
      return kSuccess;
    }

    if (*exp) {
      harness::ExperimentConfig cfg = harness::load_experiment_config(x_config);
      if (!x_seeds.empty()) cfg.seeds = x_seeds;
      if (!x_output.empty()) cfg.output_dir = x_output;
      if (cfg.output_dir.empty()) throw UsageError("no output directory: pass --output-dir or set output_dir");
      const auto result = harness::run_denoise_experiment(cfg, {x_jobs});
      write_harness_result(result, cfg.output_dir, out);
      print_summary(result, out);
      return kSuccess;
    }

    if (*figs) {
      const fs::path root = g_output;
      const bool all = g_which == "all";
      const harness::FigureJob jobs[] = {harness::FigureJob::fig1, harness::FigureJob::fig2,
                                         harness::FigureJob::fig3, harness::FigureJob::fig4};
      for (std::size_t i = 0; i < 4; ++i) {
        if (all || g_which == std::to_string(i + 1)) {
          const auto result = harness::run_figure_job(jobs[i]);
          write_harness_result(result, root / result.name, out);
        }
      }
      std::optional<harness::ExperimentResult> fig5, fig6;
      if (all || g_which == "5") {
        fig5 = harness::run_denoise_experiment(harness::fig5_config(), {g_jobs});
        write_harness_result(*fig5, root / "fig5", out);
        print_summary(*fig5, out);
      }
      if (all || g_which == "6") {
        fig6 = harness::run_denoise_experiment(harness::fig6_config(), {g_jobs});
        write_harness_result(*fig6, root / "fig6", out);
        print_summary(*fig6, out);
      }
      if (fig5 && fig6) {
        const auto cmp = harness::compare_psnr(*fig5, *fig6);
        write_text_file(root / "psnr_comparison.json", harness::comparison_json(cmp, *fig5, *fig6));
      }
      return kSuccess;
    }

    out << app.help();
    return kSuccess;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace negw::cli
