#include <catch2/catch_amalgamated.hpp>

#include <omp.h>

#include <random>

#include "negw/kernels.hpp"
#include "oracles.hpp"

using namespace negw;

namespace {

WeightMatrix random_banded(std::size_t n, std::size_t radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.2, 1.0);
  std::vector<std::vector<double>> bands(radius + 1);
  for (std::size_t k = 0; k <= radius; ++k) {
    bands[k].resize(n - k);
    for (double& x : bands[k]) x = k == 0 ? 1.0 : u(rng);
  }
  return WeightMatrix(n, std::move(bands));
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference bitwise", "[kernels]") {
  omp_set_num_threads(4);
  std::mt19937_64 rng(3);
  for (std::size_t n : {7u, 100u, 2 * static_cast<unsigned>(kernels::kParallelThreshold) + 13u}) {
    for (std::size_t radius : {1u, 3u}) {
      const WeightMatrix w = random_banded(n, radius, rng);
      const auto v = oracle::random_vector(n, rng);

      std::vector<double> ds(n), dp(n);
      kernels::serial::row_sums(w, ds);
      kernels::parallel::row_sums(w, dp);
      CHECK(ds == dp);

      std::vector<double> ls(n), lp(n);
      kernels::serial::laplacian_apply(w, v, ls);
      kernels::parallel::laplacian_apply(w, v, lp);
      CHECK(ls == lp);

      std::vector<double> fs(n), fp(n);
      kernels::serial::filter_apply(w, ds, v, fs);
      kernels::parallel::filter_apply(w, ds, v, fp);
      CHECK(fs == fp);

      const WeightParams params{0.5, 0.1, radius, true};
      std::vector<std::vector<double>> bs(radius + 1), bp(radius + 1);
      for (std::size_t k = 0; k <= radius; ++k) {
        bs[k].resize(n - k);
        bp[k].resize(n - k);
      }
      kernels::serial::bilateral_fill(v, params, bs);
      kernels::parallel::bilateral_fill(v, params, bp);
      CHECK(bs == bp);
    }
  }
}

TEST_CASE("serial kernels agree with dense products", "[kernels]") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 25;
    const WeightMatrix w = random_banded(n, 1 + rng() % 3 % (n - 1 > 0 ? n - 1 : 1), rng);
    const auto v = oracle::random_vector(n, rng);
    const Eigen::MatrixXd W = oracle::dense_weights(w);
    const Eigen::VectorXd d = oracle::row_sums(W);
    const Eigen::VectorXd lv = oracle::dense_laplacian(w) * oracle::to_eigen(v);
    const Eigen::VectorXd fv = d.cwiseInverse().asDiagonal() * (W * oracle::to_eigen(v));

    std::vector<double> ds(n), ls(n), fs(n);
    kernels::serial::row_sums(w, ds);
    kernels::serial::laplacian_apply(w, v, ls);
    kernels::serial::filter_apply(w, ds, v, fs);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ei = static_cast<Eigen::Index>(i);
      CHECK(std::abs(ds[i] - d(ei)) <= 1e-14 * (1.0 + std::abs(d(ei))));
      CHECK(std::abs(ls[i] - lv(ei)) <= 1e-13);
      CHECK(std::abs(fs[i] - fv(ei)) <= 1e-12 * (1.0 + std::abs(fv(ei))));
    }
  }
}

TEST_CASE("dot accumulates left to right in extended precision", "[kernels]") {
  const std::vector<double> a = {1e16, 1.0, -1e16};
  const std::vector<double> b = {1.0, 1.0, 1.0};
  CHECK(kernels::dot(a, b) == 1.0);
}
