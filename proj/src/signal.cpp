#include "negw/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "negw/error.hpp"

namespace negw {

Signal::Signal(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw ConfigError("signal needs at least 2 samples, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NumericalError("signal sample " + std::to_string(i) + " is not finite");
    }
  }
}

Signal Signal::constant(std::size_t n, double value) {
  return Signal(std::vector<double>(n, value));
}

void PiecewiseConstantSpec::validate() const {
  if (n < 2) throw ConfigError("piecewise signal length must be at least 2");
  if (levels.size() != breakpoints.size() + 1) {
    throw ConfigError("piecewise signal needs " + std::to_string(breakpoints.size() + 1) +
                      " levels, got " + std::to_string(levels.size()));
  }
  std::size_t previous = 0;
  for (std::size_t b : breakpoints) {
    if (b <= previous || b >= n) {
      throw ConfigError("breakpoint " + std::to_string(b) +
                        " must be strictly increasing and inside (0, n)");
    }
    previous = b;
  }
  for (double level : levels) {
    if (!std::isfinite(level)) throw ConfigError("piecewise level is not finite");
  }
}

Signal generate_piecewise(const PiecewiseConstantSpec& spec) {
  spec.validate();
  std::vector<double> values(spec.n);
  std::size_t segment = 0;
  for (std::size_t i = 0; i < spec.n; ++i) {
    while (segment < spec.breakpoints.size() && i >= spec.breakpoints[segment]) ++segment;
    values[i] = spec.levels[segment];
  }
  return Signal(std::move(values));
}

Signal add_noise(const Signal& clean, const NoiseSpec& noise) {
  if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma)) {
    throw ConfigError("noise sigma must be finite and nonnegative");
  }
  std::vector<double> values = clean.vector();
  if (noise.sigma == 0.0) return Signal(std::move(values));
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, noise.sigma);
  for (double& v : values) v += gauss(rng);
  return Signal(std::move(values));
}

double psnr(const Signal& reference, const Signal& test) {
  if (reference.size() != test.size()) {
    throw UsageError("psnr: length mismatch (" + std::to_string(reference.size()) + " vs " +
                     std::to_string(test.size()) + ")");
  }
  auto [lo, hi] = std::minmax_element(reference.values().begin(), reference.values().end());
  const double range = *hi - *lo;
  long double sum = 0.0L;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const long double e = static_cast<long double>(reference[i]) - test[i];
    sum += e * e;
  }
  if (sum == 0.0L) return std::numeric_limits<double>::infinity();
  if (range == 0.0) throw ConfigError("psnr: reference signal has zero dynamic range");
  const double mse = static_cast<double>(sum / reference.size());
  return 10.0 * std::log10(range * range / mse);
}

}  // namespace negw
