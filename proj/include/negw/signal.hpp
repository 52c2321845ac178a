#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace negw {

/// A finite real-valued 1D sequence on a uniform grid. Holds at least two
/// samples, none of them NaN or Inf.
class Signal {
 public:
  explicit Signal(std::vector<double> values);

  static Signal constant(std::size_t n, double value);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> values_;
};

struct PiecewiseConstantSpec {
  std::size_t n = 0;
  std::vector<std::size_t> breakpoints;  // first index of each new segment
  std::vector<double> levels;            // one per segment

  /// Throws ConfigError if the breakpoints are not strictly increasing
  /// interior indices or the level count does not match.
  void validate() const;

  friend bool operator==(const PiecewiseConstantSpec&, const PiecewiseConstantSpec&) = default;
};

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

/// Name of the pseudo-random generator behind add_noise, recorded in experiment metadata.
inline constexpr std::string_view kNoiseGeneratorName =
    "std::mt19937_64 + std::normal_distribution<double>";

Signal generate_piecewise(const PiecewiseConstantSpec& spec);

/// clean + e with e ~ N(0, sigma^2) i.i.d., drawn from a generator seeded with noise.seed.
Signal add_noise(const Signal& clean, const NoiseSpec& noise);

/// 10 log10(R^2 / MSE) with R the dynamic range of `reference`.
/// Returns +infinity when the signals are identical.
double psnr(const Signal& reference, const Signal& test);

}  // namespace negw
