#include "negw/filters.hpp"

#include <cmath>
#include <string>

#include "negw/error.hpp"
#include "negw/kernels.hpp"

namespace negw {

namespace {

void require_iterations(std::size_t m, const char* who) {
  if (m < 1) throw UsageError(std::string(who) + ": iteration count must be at least 1");
}

void require_length(const GraphLaplacian& gl, const Signal& x, const char* who) {
  if (gl.size() != x.size()) {
    throw UsageError(std::string(who) + ": signal length " + std::to_string(x.size()) +
                     " does not match Laplacian size " + std::to_string(gl.size()));
  }
}

void require_finite(std::span<const double> v, const char* who, std::size_t iteration) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw NumericalError(std::string(who) + ": non-finite value at iteration " + std::to_string(iteration));
    }
  }
}

}  // namespace

std::string_view to_string(FilterMethod method) {
  switch (method) {
    case FilterMethod::power: return "power";
    case FilterMethod::self_guided_bf: return "self_guided_bf";
    case FilterMethod::cg_guided: return "cg_guided";
  }
  return "unknown";
}

FilterMethod parse_filter_method(std::string_view name) {
  if (name == "power") return FilterMethod::power;
  if (name == "self_guided_bf") return FilterMethod::self_guided_bf;
  if (name == "cg_guided") return FilterMethod::cg_guided;
  throw ConfigError("unknown filter method '" + std::string(name) +
                    "' (expected power, self_guided_bf or cg_guided)");
}

Signal power_filter(const GraphLaplacian& gl, const Signal& x0, std::size_t m) {
  require_iterations(m, "power_filter");
  require_length(gl, x0, "power_filter");
  std::vector<double> x = x0.vector();
  std::vector<double> next(x.size());
  for (std::size_t k = 0; k < m; ++k) {
    kernels::parallel::filter_apply(gl.weights(), gl.degrees(), x, next);
    require_finite(next, "power_filter", k + 1);
    x.swap(next);
  }
  return Signal(std::move(x));
}

Signal self_guided_bf(const Signal& x0, const WeightParams& params, std::size_t m,
                      const OverrideRule& overrides) {
  require_iterations(m, "self_guided_bf");
  params.validate();
  Signal x = x0;
  for (std::size_t k = 0; k < m; ++k) {
    WeightMatrix w = bilateral_weights(x, params);
    if (overrides) w = apply_overrides(w, overrides(k, x));
    try {
      const GraphLaplacian gl = build_laplacian(std::move(w));
      std::vector<double> next(x.size());
      kernels::parallel::filter_apply(gl.weights(), gl.degrees(), x.values(), next);
      require_finite(next, "self_guided_bf", k + 1);
      x = Signal(std::move(next));
    } catch (const DegenerateGraphError& e) {
      throw NumericalError("self_guided_bf iteration " + std::to_string(k) + ": " + e.what());
    }
  }
  return x;
}

Signal self_guided_bf(const Signal& x0, const WeightParams& params, std::size_t m,
                      std::span<const NegativeOverride> overrides) {
  if (overrides.empty()) return self_guided_bf(x0, params, m, OverrideRule{});
  validate_overrides(overrides, x0.size());
  std::vector<NegativeOverride> fixed(overrides.begin(), overrides.end());
  return self_guided_bf(x0, params, m,
                        [fixed](std::size_t, const Signal&) { return fixed; });
}

CgResult cg_guided_filter(const GraphLaplacian& gl, const Signal& x0, std::size_t m) {
  require_iterations(m, "cg_guided_filter");
  require_length(gl, x0, "cg_guided_filter");
  const std::size_t n = x0.size();
  const auto d = gl.degrees();
  const WeightMatrix& w = gl.weights();

  std::vector<double> x = x0.vector();
  std::vector<double> r(n), s(n), p(n), q(n);
  kernels::parallel::laplacian_apply(w, x, r);
  for (double& ri : r) ri = -ri;

  CgResult result{x0, 0, false};
  result.initial_residual_norm = std::sqrt(kernels::dot(r, r));
  double sr_prev = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] / d[i];
    const double sr = kernels::dot(s, r);
    if (std::abs(sr) <= kCgBreakdownTolerance) {
      result.breakdown = true;
      break;
    }
    if (k == 0) {
      p = s;
    } else {
      const double beta = sr / sr_prev;
      for (std::size_t i = 0; i < n; ++i) p[i] = s[i] + beta * p[i];
    }
    kernels::parallel::laplacian_apply(w, p, q);
    const double pq = kernels::dot(p, q);
    if (std::abs(pq) <= kCgBreakdownTolerance) {
      result.breakdown = true;
      break;
    }
    const double alpha = sr / pq;
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * q[i];
    require_finite(x, "cg_guided_filter", k + 1);
    sr_prev = sr;
    result.iterations_completed = k + 1;
  }
  result.residual_norm = std::sqrt(kernels::dot(r, r));
  result.output = Signal(std::move(x));
  return result;
}

}  // namespace negw
