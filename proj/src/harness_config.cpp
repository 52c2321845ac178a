#include <algorithm>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "negw/csv.hpp"
#include "negw/error.hpp"
#include "negw/harness.hpp"

namespace negw::harness {

using nlohmann::json;

namespace {

bool filesystem_safe(std::string_view s) {
  if (s.empty() || s == "." || s == "..") return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-' || c == '.';
  });
}

void check_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed,
                std::initializer_list<std::string_view> required) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
  for (auto key : required) {
    if (!j.contains(std::string(key))) {
      throw ConfigError("missing key '" + std::string(key) + "' in " + std::string(where));
    }
  }
}

template <typename T>
T get(const json& j, const char* key, std::string_view where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + std::string(where) + ": " + e.what());
  }
}

WeightParams parse_weight_params(const json& j, std::string_view where) {
  check_keys(j, where, {"sigma_d", "sigma_r", "radius", "spatial_term_enabled"}, {"sigma_d", "sigma_r"});
  WeightParams p;
  p.sigma_d = get<double>(j, "sigma_d", where);
  p.sigma_r = get<double>(j, "sigma_r", where);
  if (j.contains("radius")) p.radius = get<std::size_t>(j, "radius", where);
  if (j.contains("spatial_term_enabled")) p.spatial_term_enabled = get<bool>(j, "spatial_term_enabled", where);
  p.validate();
  return p;
}

std::vector<NegativeOverride> parse_overrides(const json& j, std::string_view where) {
  if (!j.is_array()) throw ConfigError(std::string(where) + " must be an array");
  std::vector<NegativeOverride> out;
  for (const auto& item : j) {
    check_keys(item, where, {"edge_index", "value"}, {"edge_index", "value"});
    out.push_back({get<std::size_t>(item, "edge_index", where), get<double>(item, "value", where)});
  }
  return out;
}

json weight_params_json(const WeightParams& p) {
  return {{"sigma_d", p.sigma_d},
          {"sigma_r", p.sigma_r},
          {"radius", p.radius},
          {"spatial_term_enabled", p.spatial_term_enabled}};
}

json overrides_json(const std::vector<NegativeOverride>& overrides) {
  json arr = json::array();
  for (const auto& o : overrides) arr.push_back({{"edge_index", o.edge_index}, {"value", o.value}});
  return arr;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!filesystem_safe(name)) throw ConfigError("experiment name '" + name + "' is not filesystem-safe");
  signal_spec.validate();
  if (!(noise.sigma >= 0.0)) throw ConfigError("noise sigma must be nonnegative");
  weight_params.validate();
  validate_overrides(overrides, signal_spec.n);
  if (filter_configs.empty()) throw ConfigError("experiment '" + name + "' has no filters");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < filter_configs.size(); ++i) {
    const auto& f = filter_configs[i];
    if (!filesystem_safe(f.label)) throw ConfigError("filter label '" + f.label + "' is not filesystem-safe");
    if (f.label == "clean" || f.label == "noisy" || f.label == "index") {
      throw ConfigError("filter label '" + f.label + "' is reserved");
    }
    if (!labels.insert(f.label).second) throw ConfigError("duplicate filter label '" + f.label + "'");
    if (f.iterations < 1) throw ConfigError("filter '" + f.label + "' needs at least one iteration");
    const FilterConfig resolved = resolve(i);
    resolved.weight_params.validate();
    validate_overrides(resolved.overrides, signal_spec.n);
  }
  if (eigenmode_count > signal_spec.n) throw ConfigError("eigenmode_count exceeds the signal length");
}

FilterConfig ExperimentConfig::resolve(std::size_t index) const {
  const FilterSpec& f = filter_configs.at(index);
  FilterConfig out;
  out.method = f.method;
  out.iterations = f.iterations;
  out.weight_params = f.weight_params.value_or(weight_params);
  if (f.overrides) {
    out.overrides = *f.overrides;
  } else if (f.method != FilterMethod::self_guided_bf) {
    out.overrides = overrides;
  }
  return out;
}

std::vector<std::uint64_t> ExperimentConfig::effective_seeds() const {
  return seeds.empty() ? std::vector<std::uint64_t>{noise.seed} : seeds;
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  check_keys(root, "experiment config",
             {"name", "signal_spec", "noise", "weight_params", "overrides", "filter_configs",
              "eigenmode_count", "output_dir", "seeds"},
             {"name", "signal_spec", "noise", "weight_params", "filter_configs"});

  ExperimentConfig cfg;
  cfg.name = get<std::string>(root, "name", "experiment config");

  const json& sig = root.at("signal_spec");
  if (sig.is_object() && sig.contains("constant")) {
    check_keys(sig, "signal_spec", {"n", "constant"}, {"n", "constant"});
    cfg.signal_spec.n = get<std::size_t>(sig, "n", "signal_spec");
    cfg.signal_spec.levels = {get<double>(sig, "constant", "signal_spec")};
  } else {
    check_keys(sig, "signal_spec", {"n", "breakpoints", "levels"}, {"n", "breakpoints", "levels"});
    cfg.signal_spec.n = get<std::size_t>(sig, "n", "signal_spec");
    cfg.signal_spec.breakpoints = get<std::vector<std::size_t>>(sig, "breakpoints", "signal_spec");
    cfg.signal_spec.levels = get<std::vector<double>>(sig, "levels", "signal_spec");
  }

  const json& noise = root.at("noise");
  check_keys(noise, "noise", {"sigma", "seed"}, {"sigma"});
  cfg.noise.sigma = get<double>(noise, "sigma", "noise");
  if (noise.contains("seed")) cfg.noise.seed = get<std::uint64_t>(noise, "seed", "noise");

  cfg.weight_params = parse_weight_params(root.at("weight_params"), "weight_params");
  if (root.contains("overrides")) cfg.overrides = parse_overrides(root.at("overrides"), "overrides");

  const json& filters = root.at("filter_configs");
  if (!filters.is_array()) throw ConfigError("filter_configs must be an array");
  for (const auto& f : filters) {
    check_keys(f, "filter_configs entry", {"label", "method", "iterations", "weight_params", "overrides"},
               {"method", "iterations"});
    FilterSpec spec;
    spec.method = parse_filter_method(get<std::string>(f, "method", "filter_configs entry"));
    spec.label = f.contains("label") ? get<std::string>(f, "label", "filter_configs entry")
                                     : std::string(to_string(spec.method));
    spec.iterations = get<std::size_t>(f, "iterations", "filter_configs entry");
    if (f.contains("weight_params")) spec.weight_params = parse_weight_params(f.at("weight_params"), "filter weight_params");
    if (f.contains("overrides")) spec.overrides = parse_overrides(f.at("overrides"), "filter overrides");
    cfg.filter_configs.push_back(std::move(spec));
  }

  if (root.contains("eigenmode_count")) cfg.eigenmode_count = get<std::size_t>(root, "eigenmode_count", "experiment config");
  if (root.contains("output_dir")) cfg.output_dir = get<std::string>(root, "output_dir", "experiment config");
  if (root.contains("seeds")) cfg.seeds = get<std::vector<std::uint64_t>>(root, "seeds", "experiment config");

  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_text_file(path));
}

std::string experiment_config_to_json(const ExperimentConfig& cfg, bool include_output_dir) {
  json root;
  root["name"] = cfg.name;
  root["signal_spec"] = {{"n", cfg.signal_spec.n},
                         {"breakpoints", cfg.signal_spec.breakpoints},
                         {"levels", cfg.signal_spec.levels}};
  root["noise"] = {{"sigma", cfg.noise.sigma}, {"seed", cfg.noise.seed}};
  root["weight_params"] = weight_params_json(cfg.weight_params);
  root["overrides"] = overrides_json(cfg.overrides);
  json filters = json::array();
  for (const auto& f : cfg.filter_configs) {
    json item = {{"label", f.label}, {"method", std::string(to_string(f.method))}, {"iterations", f.iterations}};
    if (f.weight_params) item["weight_params"] = weight_params_json(*f.weight_params);
    if (f.overrides) item["overrides"] = overrides_json(*f.overrides);
    filters.push_back(std::move(item));
  }
  root["filter_configs"] = std::move(filters);
  root["eigenmode_count"] = cfg.eigenmode_count;
  if (include_output_dir) root["output_dir"] = cfg.output_dir.generic_string();
  root["seeds"] = cfg.seeds;
  return root.dump(2) + "\n";
}

std::string config_hash(const ExperimentConfig& cfg) {
  return fnv1a_hex(experiment_config_to_json(cfg, false));
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace negw::harness
