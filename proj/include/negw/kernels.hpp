#pragma once

// Inner loops over the banded weight structure. Every kernel exists twice:
// `serial` is the reference implementation and `parallel` distributes rows
// over OpenMP threads. Each output entry is computed by the same expression
// in both, so results are bitwise identical regardless of thread count.

#include <cstddef>
#include <span>

#include "negw/signal.hpp"
#include "negw/weights.hpp"

namespace negw::kernels {

/// Row count below which the parallel kernels stay on one thread.
inline constexpr std::size_t kParallelThreshold = 4096;

/// Dot product accumulated in long double, left to right.
double dot(std::span<const double> a, std::span<const double> b);

namespace serial {

/// d[i] = sum_j w(i, j), summed over j in increasing order.
void row_sums(const WeightMatrix& w, std::span<double> d);

/// out = (D - W) v, evaluated as sum_{j != i} w(i, j) (v[i] - v[j]) so that
/// constant vectors map to exactly zero.
void laplacian_apply(const WeightMatrix& w, std::span<const double> v, std::span<double> out);

/// out = D^{-1} W v, evaluated as v - D^{-1} (D - W) v.
void filter_apply(const WeightMatrix& w, std::span<const double> d, std::span<const double> v,
                  std::span<double> out);

/// Fills the bands of a bilateral weight matrix (see bilateral_weights).
void bilateral_fill(std::span<const double> guide, const WeightParams& params,
                    std::span<std::vector<double>> bands);

}  // namespace serial

namespace parallel {

void row_sums(const WeightMatrix& w, std::span<double> d);
void laplacian_apply(const WeightMatrix& w, std::span<const double> v, std::span<double> out);
void filter_apply(const WeightMatrix& w, std::span<const double> d, std::span<const double> v,
                  std::span<double> out);
void bilateral_fill(std::span<const double> guide, const WeightParams& params,
                    std::span<std::vector<double>> bands);

}  // namespace parallel

}  // namespace negw::kernels
