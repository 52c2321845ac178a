#include "negw/weights.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "negw/csv.hpp"
#include "negw/error.hpp"
#include "negw/kernels.hpp"

namespace negw {

void WeightParams::validate() const {
  if (!(sigma_d > 0.0) || !std::isfinite(sigma_d)) throw ConfigError("sigma_d must be positive");
  if (!(sigma_r > 0.0) || !std::isfinite(sigma_r)) throw ConfigError("sigma_r must be positive");
  if (radius < 1) throw ConfigError("radius must be at least 1");
}

WeightMatrix::WeightMatrix(std::size_t n, std::vector<std::vector<double>> bands)
    : n_(n), bands_(std::move(bands)) {
  if (bands_.empty()) throw UsageError("weight matrix needs at least the main diagonal");
  if (bands_.size() > n_) throw UsageError("weight matrix bandwidth exceeds its dimension");
  for (std::size_t k = 0; k < bands_.size(); ++k) {
    if (bands_[k].size() != n_ - k) {
      throw UsageError("weight band " + std::to_string(k) + " must have " +
                       std::to_string(n_ - k) + " entries");
    }
  }
}

WeightMatrix WeightMatrix::diagonal(std::vector<double> diag) {
  const std::size_t n = diag.size();
  return WeightMatrix(n, {std::move(diag)});
}

double WeightMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  const std::size_t lo = std::min(i, j);
  const std::size_t k = std::max(i, j) - lo;
  return k < bands_.size() ? bands_[k][lo] : 0.0;
}

void WeightMatrix::set(std::size_t i, std::size_t j, double value) {
  const std::size_t lo = std::min(i, j);
  const std::size_t k = std::max(i, j) - lo;
  if (std::max(i, j) >= n_ || k >= bands_.size()) {
    throw UsageError("weight entry (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") is outside the band");
  }
  bands_[k][lo] = value;
}

double WeightMatrix::norm_inf() const {
  const std::size_t r = radius();
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    const std::size_t j0 = i >= r ? i - r : 0;
    const std::size_t j1 = std::min(n_ - 1, i + r);
    for (std::size_t j = j0; j <= j1; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

WeightMatrix bilateral_weights(const Signal& guide, const WeightParams& params) {
  params.validate();
  const std::size_t n = guide.size();
  const std::size_t r = std::min(params.radius, n - 1);
  std::vector<std::vector<double>> bands(r + 1);
  for (std::size_t k = 0; k <= r; ++k) bands[k].resize(n - k);
  kernels::parallel::bilateral_fill(guide.values(), params, bands);
  return WeightMatrix(n, std::move(bands));
}

void validate_overrides(std::span<const NegativeOverride> overrides, std::size_t n) {
  std::set<std::size_t> seen;
  for (const auto& o : overrides) {
    if (o.edge_index + 1 >= n) {
      throw ConfigError("override edge index " + std::to_string(o.edge_index) +
                        " out of range for a signal of length " + std::to_string(n));
    }
    if (!seen.insert(o.edge_index).second) {
      throw ConfigError("duplicate override for edge " + std::to_string(o.edge_index));
    }
    if (!std::isfinite(o.value)) throw ConfigError("override value is not finite");
  }
}

WeightMatrix apply_overrides(const WeightMatrix& w, std::span<const NegativeOverride> overrides) {
  validate_overrides(overrides, w.size());
  WeightMatrix out = w;
  if (!overrides.empty() && out.radius() < 1) {
    throw ConfigError("overrides need a weight matrix with nearest-neighbor entries");
  }
  for (const auto& o : overrides) out.set(o.edge_index, o.edge_index + 1, o.value);
  return out;
}

std::string weights_to_csv(const WeightMatrix& w) {
  std::string out = "i,j,w\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t k = 0; k <= w.radius() && i + k < w.size(); ++k) {
      out += std::to_string(i) + ',' + std::to_string(i + k) + ',' + format_real(w.band(k)[i]) + '\n';
    }
  }
  return out;
}

}  // namespace negw
