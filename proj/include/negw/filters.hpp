#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "negw/laplacian.hpp"
#include "negw/signal.hpp"
#include "negw/weights.hpp"

namespace negw {

enum class FilterMethod { power, self_guided_bf, cg_guided };

std::string_view to_string(FilterMethod method);
/// Accepts "power", "self_guided_bf", "cg_guided". Throws ConfigError otherwise.
FilterMethod parse_filter_method(std::string_view name);

struct FilterConfig {
  FilterMethod method = FilterMethod::cg_guided;
  std::size_t iterations = 1;
  WeightParams weight_params;
  std::vector<NegativeOverride> overrides;

  friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

/// x_m = (D^{-1} W)^m x0, by m successive operator applications.
Signal power_filter(const GraphLaplacian& gl, const Signal& x0, std::size_t m);

/// Overrides to apply when rebuilding the weights at `iteration` from the current iterate.
using OverrideRule =
    std::function<std::vector<NegativeOverride>(std::size_t iteration, const Signal& current)>;

/// x_{k+1} = D_{x_k}^{-1} W_{x_k} x_k with the weights rebuilt from the current
/// iterate on every step.
Signal self_guided_bf(const Signal& x0, const WeightParams& params, std::size_t m,
                      const OverrideRule& overrides = {});

/// Same, with a fixed list of overrides reapplied after every rebuild.
Signal self_guided_bf(const Signal& x0, const WeightParams& params, std::size_t m,
                      std::span<const NegativeOverride> overrides);

/// |s.r| or |p.q| at or below this value stops the CG guided filter.
inline constexpr double kCgBreakdownTolerance = 1e-300;

struct CgResult {
  Signal output;
  std::size_t iterations_completed = 0;
  bool breakdown = false;
  /// Euclidean norms of the recurrence residual r_0 and r at exit.
  double initial_residual_norm = 0.0;
  double residual_norm = 0.0;
};

/// Conjugate gradient guided filter with the diagonal preconditioner D:
///
///   r_0 = -L x_0
///   for k = 0..m-1:
///     s_k = D^{-1} r_k
///     p_k = s_k                          (k = 0)
///     p_k = s_k + beta_k p_{k-1},  beta_k = (s_k, r_k) / (s_{k-1}, r_{k-1})
///     q_k = L p_k
///     alpha_k = (s_k, r_k) / (p_k, q_k)
///     x_{k+1} = x_k + alpha_k p_k
///     r_{k+1} = r_k - alpha_k q_k
///
/// L may be indefinite when the weights contain negative entries. If (s_k, r_k)
/// or (p_k, q_k) falls to kCgBreakdownTolerance the current iterate is
/// returned with `breakdown` set.
CgResult cg_guided_filter(const GraphLaplacian& gl, const Signal& x0, std::size_t m);

}  // namespace negw
