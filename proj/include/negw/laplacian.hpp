#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "negw/weights.hpp"

namespace negw {

/// The pair (D, L = D - W) built from a symmetric weight matrix. L itself is
/// never stored; it is applied through the band structure of W.
class GraphLaplacian {
 public:
  const WeightMatrix& weights() const noexcept { return w_; }
  std::span<const double> degrees() const noexcept { return d_; }
  std::size_t size() const noexcept { return w_.size(); }

  /// Entry (i, j) of L.
  double laplacian_entry(std::size_t i, std::size_t j) const noexcept;

  /// max_i sum_j |L(i, j)|
  double laplacian_norm_inf() const;

  bool has_negative_weights() const noexcept;

 private:
  GraphLaplacian(WeightMatrix w, std::vector<double> d) : w_(std::move(w)), d_(std::move(d)) {}
  friend GraphLaplacian build_laplacian(WeightMatrix w);

  WeightMatrix w_;
  std::vector<double> d_;
};

/// Relative floor for |d[i]|: rows with |d[i]| <= kRowSumTolerance * max|d| are degenerate.
inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kRowSumAbsoluteFloor = 1e-300;

/// Computes the row sums of W. Throws DegenerateGraphError naming the first
/// row whose sum is numerically zero. Negative row sums are accepted.
GraphLaplacian build_laplacian(WeightMatrix w);

/// (D - W) v. Throws UsageError on a length mismatch.
std::vector<double> apply_L(const GraphLaplacian& gl, std::span<const double> v);

/// D^{-1} W v. Throws UsageError on a length mismatch.
std::vector<double> apply_filter_operator(const GraphLaplacian& gl, std::span<const double> v);

/// `i,j,w,d` rows: the weight triplets with d[i] appended.
std::string laplacian_to_csv(const GraphLaplacian& gl);

}  // namespace negw
