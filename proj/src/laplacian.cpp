#include "negw/laplacian.hpp"

#include <algorithm>
#include <cmath>

#include "negw/csv.hpp"
#include "negw/error.hpp"
#include "negw/kernels.hpp"

namespace negw {

double GraphLaplacian::laplacian_entry(std::size_t i, std::size_t j) const noexcept {
  return i == j ? d_[i] - w_(i, i) : -w_(i, j);
}

double GraphLaplacian::laplacian_norm_inf() const {
  const std::size_t n = size();
  const std::size_t r = w_.radius();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    const std::size_t j0 = i >= r ? i - r : 0;
    const std::size_t j1 = std::min(n - 1, i + r);
    for (std::size_t j = j0; j <= j1; ++j) row += std::abs(laplacian_entry(i, j));
    best = std::max(best, row);
  }
  return best;
}

bool GraphLaplacian::has_negative_weights() const noexcept {
  for (const auto& band : w_.bands()) {
    if (std::any_of(band.begin(), band.end(), [](double x) { return x < 0.0; })) return true;
  }
  return false;
}

GraphLaplacian build_laplacian(WeightMatrix w) {
  std::vector<double> d(w.size());
  kernels::parallel::row_sums(w, d);
  double dmax = 0.0;
  for (double x : d) dmax = std::max(dmax, std::abs(x));
  const double tol = std::max(kRowSumTolerance * dmax, kRowSumAbsoluteFloor);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(std::abs(d[i]) > tol)) throw DegenerateGraphError(i, d[i]);
  }
  return GraphLaplacian(std::move(w), std::move(d));
}

std::vector<double> apply_L(const GraphLaplacian& gl, std::span<const double> v) {
  if (v.size() != gl.size()) {
    throw UsageError("apply_L: vector length " + std::to_string(v.size()) + " does not match " +
                     std::to_string(gl.size()));
  }
  std::vector<double> out(v.size());
  kernels::parallel::laplacian_apply(gl.weights(), v, out);
  return out;
}

std::vector<double> apply_filter_operator(const GraphLaplacian& gl, std::span<const double> v) {
  if (v.size() != gl.size()) {
    throw UsageError("apply_filter_operator: vector length " + std::to_string(v.size()) +
                     " does not match " + std::to_string(gl.size()));
  }
  std::vector<double> out(v.size());
  kernels::parallel::filter_apply(gl.weights(), gl.degrees(), v, out);
  return out;
}

std::string laplacian_to_csv(const GraphLaplacian& gl) {
  const auto& w = gl.weights();
  std::string out = "i,j,w,d\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t k = 0; k <= w.radius() && i + k < w.size(); ++k) {
      out += std::to_string(i) + ',' + std::to_string(i + k) + ',' + format_real(w.band(k)[i]) +
             ',' + format_real(gl.degrees()[i]) + '\n';
    }
  }
  return out;
}

}  // namespace negw
