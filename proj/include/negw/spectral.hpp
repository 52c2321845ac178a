#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "negw/laplacian.hpp"

namespace negw {

enum class EigenScaling { euclidean_orthonormal, d_orthonormal };
enum class EigenProblem { standard_laplacian, generalized_wd };

struct EigenSystem {
  /// Ascending for the standard problem; descending |mu| for the generalized one.
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  EigenScaling scaling = EigenScaling::euclidean_orthonormal;
  EigenProblem problem = EigenProblem::standard_laplacian;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

/// Largest problem handled by the dense solver.
inline constexpr std::size_t kMaxEigenProblemSize = 2000;

/// Post-solve bounds, relative to the infinity norm of L (or W).
inline constexpr double kEigenResidualTolerance = 1e-10;
inline constexpr double kEigenOrthonormalityTolerance = 1e-10;

/// k smallest eigenpairs of L, unit length, each vector's first
/// non-negligible component positive.
EigenSystem eig_smallest(const GraphLaplacian& gl, std::size_t k);

/// k pairs of W v = mu D v with the largest |mu|, scaled so v_i^T D v_j = delta_ij.
/// Requires every d[i] > 0; otherwise throws UnsupportedConfigurationError.
EigenSystem eig_generalized(const GraphLaplacian& gl, std::size_t k);

/// u_m[i] = cos(pi m (i + 1/2) / n), m = 0..k-1, unit-normalized.
std::vector<std::vector<double>> dct_reference_modes(std::size_t n, std::size_t k);

/// 2 - 2 cos(pi m / n): eigenvalue of the constant-guide Laplacian for DCT mode m.
double dct_eigenvalue(std::size_t n, std::size_t m);

struct FlatnessProfile {
  double left_slope_max = 0.0;
  double right_slope_max = 0.0;
};

/// Largest |v[j+1] - v[j]| over the `margin` differences just left of the
/// edge (j = e-margin..e-1) and just right of it (j = e+1..e+margin). The edge
/// difference v[e+1] - v[e] itself is excluded.
FlatnessProfile flatness_profile(std::span<const double> v, std::size_t edge_index,
                                 std::size_t margin);

/// |v[e+1] - v[e]|
double across_edge_jump(std::span<const double> v, std::size_t edge_index);

/// Participation ratio (sum v^2)^2 / (n sum v^4), in (0, 1]. Smaller means
/// more localized.
double localization_width(std::span<const double> v);

/// Columns `mode_index,eigenvalue,component_0..component_{n-1}`.
std::string eigensystem_to_csv(const EigenSystem& es);

}  // namespace negw
