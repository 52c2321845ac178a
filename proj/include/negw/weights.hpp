#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "negw/signal.hpp"

namespace negw {

struct WeightParams {
  double sigma_d = 0.5;
  double sigma_r = 0.1;
  std::size_t radius = 1;
  bool spatial_term_enabled = true;

  void validate() const;

  friend bool operator==(const WeightParams&, const WeightParams&) = default;
};

/// Replaces w(i, i+1) and w(i+1, i) with `value`.
struct NegativeOverride {
  std::size_t edge_index = 0;
  double value = 0.0;

  friend bool operator==(const NegativeOverride&, const NegativeOverride&) = default;
};

/// Symmetric banded matrix of pairwise weights. Only the upper band is stored,
/// so w(i, j) == w(j, i) holds exactly.
class WeightMatrix {
 public:
  /// bands[k][i] = w(i, i + k) for k = 0..radius; bands[k] has n - k entries.
  WeightMatrix(std::size_t n, std::vector<std::vector<double>> bands);

  /// n x n matrix with only the main diagonal filled.
  static WeightMatrix diagonal(std::vector<double> diag);

  std::size_t size() const noexcept { return n_; }
  std::size_t radius() const noexcept { return bands_.size() - 1; }

  /// Zero outside the band.
  double operator()(std::size_t i, std::size_t j) const noexcept;

  std::span<const double> band(std::size_t k) const noexcept { return bands_[k]; }
  const std::vector<std::vector<double>>& bands() const noexcept { return bands_; }

  void set(std::size_t i, std::size_t j, double value);

  /// max_i sum_j |w(i, j)|
  double norm_inf() const;

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::vector<double>> bands_;
};

/// Bilateral weights from a guide signal: for |i - j| <= radius
///   w(i, j) = S(i, j) * exp(-(guide[i] - guide[j])^2 / (2 sigma_r^2)),
/// with S(i, j) = exp(-(i - j)^2 / (2 sigma_d^2)) when the spatial term is enabled
/// and 1 otherwise. Grid positions are the integer sample indices.
WeightMatrix bilateral_weights(const Signal& guide, const WeightParams& params);

/// Copy of `w` with each listed edge replaced. Throws ConfigError on a
/// duplicate or out-of-range edge index.
WeightMatrix apply_overrides(const WeightMatrix& w, std::span<const NegativeOverride> overrides);

/// Throws ConfigError if any edge index is out of range for size n or repeated.
void validate_overrides(std::span<const NegativeOverride> overrides, std::size_t n);

/// `i,j,w` triplets, upper triangle plus diagonal.
std::string weights_to_csv(const WeightMatrix& w);

}  // namespace negw
