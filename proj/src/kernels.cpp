#include "negw/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace negw::kernels {

double dot(std::span<const double> a, std::span<const double> b) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) sum += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(sum);
}

namespace {

// Row kernels shared by both variants.

inline double row_sum(const WeightMatrix& w, std::size_t i) {
  const std::size_t n = w.size();
  const std::size_t r = w.radius();
  double s = 0.0;
  for (std::size_t k = std::min(r, i); k >= 1; --k) s += w.band(k)[i - k];
  s += w.band(0)[i];
  for (std::size_t k = 1; k <= r && i + k < n; ++k) s += w.band(k)[i];
  return s;
}

inline double laplacian_row(const WeightMatrix& w, std::span<const double> v, std::size_t i) {
  const std::size_t n = w.size();
  const std::size_t r = w.radius();
  double s = 0.0;
  for (std::size_t k = std::min(r, i); k >= 1; --k) s += w.band(k)[i - k] * (v[i] - v[i - k]);
  for (std::size_t k = 1; k <= r && i + k < n; ++k) s += w.band(k)[i] * (v[i] - v[i + k]);
  return s;
}

inline double bilateral_entry(std::span<const double> guide, const WeightParams& p, std::size_t i,
                              std::size_t k) {
  const double dy = guide[i] - guide[i + k];
  double w = std::exp(-(dy * dy) / (2.0 * p.sigma_r * p.sigma_r));
  if (p.spatial_term_enabled) {
    const double dp = static_cast<double>(k);
    w *= std::exp(-(dp * dp) / (2.0 * p.sigma_d * p.sigma_d));
  }
  return w;
}

}  // namespace

namespace serial {

void row_sums(const WeightMatrix& w, std::span<double> d) {
  for (std::size_t i = 0; i < w.size(); ++i) d[i] = row_sum(w, i);
}

void laplacian_apply(const WeightMatrix& w, std::span<const double> v, std::span<double> out) {
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = laplacian_row(w, v, i);
}

void filter_apply(const WeightMatrix& w, std::span<const double> d, std::span<const double> v,
                  std::span<double> out) {
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = v[i] - laplacian_row(w, v, i) / d[i];
}

void bilateral_fill(std::span<const double> guide, const WeightParams& params,
                    std::span<std::vector<double>> bands) {
  for (std::size_t k = 0; k < bands.size(); ++k) {
    for (std::size_t i = 0; i < bands[k].size(); ++i) bands[k][i] = bilateral_entry(guide, params, i, k);
  }
}

}  // namespace serial

namespace parallel {

void row_sums(const WeightMatrix& w, std::span<double> d) {
  const auto n = static_cast<std::ptrdiff_t>(w.size());
#pragma omp parallel for schedule(static) if (w.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) d[i] = row_sum(w, static_cast<std::size_t>(i));
}

void laplacian_apply(const WeightMatrix& w, std::span<const double> v, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(w.size());
#pragma omp parallel for schedule(static) if (w.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = laplacian_row(w, v, static_cast<std::size_t>(i));
}

void filter_apply(const WeightMatrix& w, std::span<const double> d, std::span<const double> v,
                  std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(w.size());
#pragma omp parallel for schedule(static) if (w.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto row = static_cast<std::size_t>(i);
    out[row] = v[row] - laplacian_row(w, v, row) / d[row];
  }
}

void bilateral_fill(std::span<const double> guide, const WeightParams& params,
                    std::span<std::vector<double>> bands) {
  for (std::size_t k = 0; k < bands.size(); ++k) {
    auto& band = bands[k];
    const auto len = static_cast<std::ptrdiff_t>(band.size());
#pragma omp parallel for schedule(static) if (band.size() >= kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < len; ++i) {
      band[static_cast<std::size_t>(i)] = bilateral_entry(guide, params, static_cast<std::size_t>(i), k);
    }
  }
}

}  // namespace parallel

}  // namespace negw::kernels
