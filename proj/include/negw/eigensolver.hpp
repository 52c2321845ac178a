#pragma once

// Dense symmetric eigensolver: Householder reduction to tridiagonal form
// followed by the implicit QL iteration with Wilkinson shifts.

#include <cstddef>
#include <vector>

namespace negw::eigen {

struct SymmetricEigenResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k], unit length
};

/// Eigen-decomposition of the symmetric tridiagonal matrix with main
/// diagonal `diag` and sub/super diagonal `off` (off.size() == diag.size() - 1).
SymmetricEigenResult tridiagonal(std::vector<double> diag, std::vector<double> off);

/// Eigen-decomposition of a dense symmetric matrix stored row-major.
/// Only the lower triangle is read.
SymmetricEigenResult dense_symmetric(std::vector<double> a, std::size_t n);

}  // namespace negw::eigen
