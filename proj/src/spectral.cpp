#include "negw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "negw/csv.hpp"
#include "negw/eigensolver.hpp"
#include "negw/error.hpp"
#include "negw/kernels.hpp"

namespace negw {

namespace {

void check_request(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw UsageError("requested " + std::to_string(k) + " eigenpairs of a " + std::to_string(n) +
                     "-dimensional problem");
  }
  if (n > kMaxEigenProblemSize) {
    throw UsageError("dense eigensolver limited to n <= " + std::to_string(kMaxEigenProblemSize));
  }
}

// Flip v so its first component that is not negligible is positive.
void fix_sign(std::vector<double>& v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-10 * vmax) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

std::vector<double> weights_times(const WeightMatrix& w, std::span<const double> v) {
  const std::size_t n = w.size();
  const std::size_t r = w.radius();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const std::size_t j0 = i >= r ? i - r : 0;
    const std::size_t j1 = std::min(n - 1, i + r);
    for (std::size_t j = j0; j <= j1; ++j) s += w(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

// Symmetric matrix given entry-wise, solved by the tridiagonal path when the
// bandwidth is one and by the dense path otherwise.
template <typename Entry>
eigen::SymmetricEigenResult solve_banded(std::size_t n, std::size_t radius, Entry entry) {
  if (radius <= 1) {
    std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) diag[i] = entry(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i) off[i] = radius == 0 ? 0.0 : entry(i, i + 1);
    return eigen::tridiagonal(std::move(diag), std::move(off));
  }
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i >= radius ? i - radius : 0; j <= std::min(n - 1, i + radius); ++j) {
      a[i * n + j] = entry(i, j);
    }
  }
  return eigen::dense_symmetric(std::move(a), n);
}

void check_orthonormal(const EigenSystem& es, std::span<const double> metric) {
  for (std::size_t a = 0; a < es.size(); ++a) {
    for (std::size_t b = a; b < es.size(); ++b) {
      long double s = 0.0L;
      const auto& u = es.eigenvectors[a];
      const auto& v = es.eigenvectors[b];
      for (std::size_t i = 0; i < u.size(); ++i) {
        s += static_cast<long double>(u[i]) * v[i] * (metric.empty() ? 1.0 : metric[i]);
      }
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(static_cast<double>(s) - expected) > kEigenOrthonormalityTolerance) {
        throw NumericalError("eigenvectors " + std::to_string(a) + " and " + std::to_string(b) +
                             " violate orthonormality (inner product " +
                             std::to_string(static_cast<double>(s)) + ")");
      }
    }
  }
}

}  // namespace

EigenSystem eig_smallest(const GraphLaplacian& gl, std::size_t k) {
  const std::size_t n = gl.size();
  check_request(n, k);
  auto solved = solve_banded(n, gl.weights().radius(),
                             [&](std::size_t i, std::size_t j) { return gl.laplacian_entry(i, j); });

  EigenSystem es;
  es.scaling = EigenScaling::euclidean_orthonormal;
  es.problem = EigenProblem::standard_laplacian;
  const double norm = std::max(gl.laplacian_norm_inf(), std::numeric_limits<double>::min());
  for (std::size_t m = 0; m < k; ++m) {
    auto v = std::move(solved.vectors[m]);
    fix_sign(v);
    const double lambda = solved.values[m];
    const auto lv = apply_L(gl, v);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(lv[i] - lambda * v[i]));
    if (residual > kEigenResidualTolerance * norm) {
      throw NumericalError("eigenpair " + std::to_string(m) + " residual " + std::to_string(residual) +
                           " exceeds tolerance");
    }
    es.eigenvalues.push_back(lambda);
    es.eigenvectors.push_back(std::move(v));
  }
  check_orthonormal(es, {});
  return es;
}

EigenSystem eig_generalized(const GraphLaplacian& gl, std::size_t k) {
  const std::size_t n = gl.size();
  check_request(n, k);
  const auto d = gl.degrees();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(d[i] > 0.0)) {
      throw UnsupportedConfigurationError(
          "generalized eigenproblem needs positive row sums; d[" + std::to_string(i) +
          "] = " + std::to_string(d[i]) + " (use the standard Laplacian problem instead)");
    }
  }
  std::vector<double> inv_sqrt_d(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt_d[i] = 1.0 / std::sqrt(d[i]);
  const auto& w = gl.weights();
  auto solved = solve_banded(n, w.radius(), [&](std::size_t i, std::size_t j) {
    return w(i, j) * inv_sqrt_d[i] * inv_sqrt_d[j];
  });

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(solved.values[a]);
    const double mb = std::abs(solved.values[b]);
    if (ma != mb) return ma > mb;
    return solved.values[a] > solved.values[b];
  });

  EigenSystem es;
  es.scaling = EigenScaling::d_orthonormal;
  es.problem = EigenProblem::generalized_wd;
  const double norm = std::max(w.norm_inf(), std::numeric_limits<double>::min());
  for (std::size_t m = 0; m < k; ++m) {
    const std::size_t idx = order[m];
    const double mu = solved.values[idx];
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = solved.vectors[idx][i] * inv_sqrt_d[i];
    fix_sign(v);
    const auto wv = weights_times(w, v);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(wv[i] - mu * d[i] * v[i]));
    if (residual > kEigenResidualTolerance * norm) {
      throw NumericalError("generalized eigenpair " + std::to_string(m) + " residual " +
                           std::to_string(residual) + " exceeds tolerance");
    }
    es.eigenvalues.push_back(mu);
    es.eigenvectors.push_back(std::move(v));
  }
  check_orthonormal(es, d);
  return es;
}

double dct_eigenvalue(std::size_t n, std::size_t m) {
  return 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
}

std::vector<std::vector<double>> dct_reference_modes(std::size_t n, std::size_t k) {
  if (n < 1 || k > n) throw UsageError("dct_reference_modes: need 1 <= k <= n");
  std::vector<std::vector<double>> modes;
  modes.reserve(k);
  for (std::size_t m = 0; m < k; ++m) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = std::cos(std::numbers::pi * static_cast<double>(m) * (static_cast<double>(i) + 0.5) /
                      static_cast<double>(n));
    }
    const double norm = std::sqrt(kernels::dot(u, u));
    for (double& x : u) x /= norm;
    modes.push_back(std::move(u));
  }
  return modes;
}

FlatnessProfile flatness_profile(std::span<const double> v, std::size_t edge_index, std::size_t margin) {
  if (margin < 1) throw UsageError("flatness_profile: margin must be at least 1");
  if (edge_index < margin || edge_index + margin + 1 >= v.size()) {
    throw UsageError("flatness_profile: window of " + std::to_string(margin) + " around edge " +
                     std::to_string(edge_index) + " leaves a vector of length " +
                     std::to_string(v.size()));
  }
  FlatnessProfile out;
  for (std::size_t j = edge_index - margin; j < edge_index; ++j) {
    out.left_slope_max = std::max(out.left_slope_max, std::abs(v[j + 1] - v[j]));
  }
  for (std::size_t j = edge_index + 1; j <= edge_index + margin; ++j) {
    out.right_slope_max = std::max(out.right_slope_max, std::abs(v[j + 1] - v[j]));
  }
  return out;
}

double across_edge_jump(std::span<const double> v, std::size_t edge_index) {
  if (edge_index + 1 >= v.size()) throw UsageError("across_edge_jump: edge index out of range");
  return std::abs(v[edge_index + 1] - v[edge_index]);
}

double localization_width(std::span<const double> v) {
  long double s2 = 0.0L, s4 = 0.0L;
  for (double x : v) {
    const long double x2 = static_cast<long double>(x) * x;
    s2 += x2;
    s4 += x2 * x2;
  }
  if (v.empty() || s2 == 0.0L) throw UsageError("localization_width: zero vector");
  return static_cast<double>(s2 * s2 / (static_cast<long double>(v.size()) * s4));
}

std::string eigensystem_to_csv(const EigenSystem& es) {
  const std::size_t n = es.eigenvectors.empty() ? 0 : es.eigenvectors.front().size();
  std::string out = "mode_index,eigenvalue";
  for (std::size_t i = 0; i < n; ++i) out += ",component_" + std::to_string(i);
  out += '\n';
  for (std::size_t m = 0; m < es.size(); ++m) {
    out += std::to_string(m) + ',' + format_real(es.eigenvalues[m]);
    for (double x : es.eigenvectors[m]) out += ',' + format_real(x);
    out += '\n';
  }
  return out;
}

}  // namespace negw
