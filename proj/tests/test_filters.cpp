#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "negw/error.hpp"
#include "negw/filters.hpp"
#include "negw/harness.hpp"
#include "negw/kernels.hpp"
#include "oracles.hpp"

using namespace negw;

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double norm2(std::span<const double> v) { return std::sqrt(kernels::dot(v, v)); }

std::vector<double> residual(const GraphLaplacian& gl, const Signal& x) {
  auto r = apply_L(gl, x.values());
  for (double& v : r) v = -v;
  return r;
}

WeightParams range_only() { return {0.5, 0.1, 1, false}; }

}  // namespace

TEST_CASE("filter method names round-trip", "[filters]") {
  for (auto m : {FilterMethod::power, FilterMethod::self_guided_bf, FilterMethod::cg_guided}) {
    CHECK(parse_filter_method(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_filter_method("cg"), ConfigError);
}

TEST_CASE("all filters preserve constants exactly", "[filters][property]") {
  const Signal c = Signal::constant(64, 0.37);
  const GraphLaplacian gl = build_laplacian(bilateral_weights(c, {}));
  CHECK(power_filter(gl, c, 25) == c);
  CHECK(self_guided_bf(c, {}, 25) == c);
  const CgResult cg = cg_guided_filter(gl, c, 10);
  CHECK(cg.output == c);
  CHECK(cg.breakdown);
  CHECK(cg.iterations_completed == 0);
}

TEST_CASE("filters reject bad iteration counts and lengths", "[filters]") {
  const Signal x({0.0, 1.0, 0.5});
  const GraphLaplacian gl = build_laplacian(bilateral_weights(x, {}));
  CHECK_THROWS_AS(power_filter(gl, x, 0), UsageError);
  CHECK_THROWS_AS(self_guided_bf(x, {}, 0), UsageError);
  CHECK_THROWS_AS(cg_guided_filter(gl, x, 0), UsageError);
  const Signal longer({0.0, 1.0, 0.5, 0.2});
  CHECK_THROWS_AS(power_filter(gl, longer, 1), UsageError);
  CHECK_THROWS_AS(cg_guided_filter(gl, longer, 1), UsageError);
}

TEST_CASE("one step of each filter", "[filters]") {
  std::mt19937_64 rng(21);
  const Signal x(oracle::random_vector(40, rng));
  const WeightParams params{0.7, 0.4, 1, true};
  const GraphLaplacian gl = build_laplacian(bilateral_weights(x, params));

  const Eigen::MatrixXd W = oracle::dense_weights(gl.weights());
  const Eigen::VectorXd expected = (W * oracle::to_eigen(x.vector())).cwiseQuotient(oracle::row_sums(W));
  CHECK(max_abs_diff(power_filter(gl, x, 1).values(), oracle::to_std(expected)) <= 1e-14);

  // A self-guided step from x uses exactly the guided operator built from x.
  CHECK(self_guided_bf(x, params, 1) == power_filter(gl, x, 1));
}

TEST_CASE("CG first step on a 3-point graph", "[filters]") {
  // Frozen from exact rational arithmetic: alpha_0 = 20685/14227.
  const GraphLaplacian gl = build_laplacian(WeightMatrix(3, {{1.0, 1.0, 1.0}, {0.5, 0.25}}));
  const CgResult r = cg_guided_filter(gl, Signal({1.0, 0.0, 2.0}), 1);
  CHECK(r.iterations_completed == 1);
  CHECK_FALSE(r.breakdown);
  CHECK(max_abs_diff(r.output.values(),
                     std::vector<double>{0.5153581218809307, 0.8308146482041189, 1.4184297462571167}) <= 1e-15);
}

TEST_CASE("power filter matches the generalized spectral expansion", "[filters][property]") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 29;
    const std::size_t m = 1 + rng() % 20;
    const WeightMatrix w = oracle::random_tridiagonal(n, rng);
    const GraphLaplacian gl = build_laplacian(w);
    const Signal x0(oracle::random_vector(n, rng));

    const Eigen::MatrixXd W = oracle::dense_weights(w);
    const Eigen::VectorXd d = oracle::row_sums(W);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(W, Eigen::MatrixXd(d.asDiagonal()));
    const Eigen::VectorXd x = oracle::to_eigen(x0.vector());
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j) {
      const Eigen::VectorXd v = ges.eigenvectors().col(j);
      expected += std::pow(ges.eigenvalues()(j), static_cast<double>(m)) * v.dot(d.cwiseProduct(x)) * v;
    }
    CHECK(max_abs_diff(power_filter(gl, x0, m).values(), oracle::to_std(expected)) <= 1e-8);
  }
}

TEST_CASE("power filter is linear", "[filters][property]") {
  std::mt19937_64 rng(23);
  const std::size_t n = 50;
  const GraphLaplacian gl = build_laplacian(oracle::random_tridiagonal(n, rng));
  const auto a = oracle::random_vector(n, rng);
  const auto b = oracle::random_vector(n, rng);
  std::vector<double> combo(n);
  for (std::size_t i = 0; i < n; ++i) combo[i] = 2.5 * a[i] - 0.75 * b[i];
  const auto fa = power_filter(gl, Signal(a), 7).vector();
  const auto fb = power_filter(gl, Signal(b), 7).vector();
  const auto fc = power_filter(gl, Signal(combo), 7).vector();
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(fc[i] - (2.5 * fa[i] - 0.75 * fb[i])) <= 1e-12);
}

namespace {

void check_against_pcg(std::mt19937_64& rng, double weight_floor, bool full_length) {
  const std::size_t n = 3 + rng() % 28;
  const WeightMatrix w = oracle::random_tridiagonal(n, rng, weight_floor);
  const GraphLaplacian gl = build_laplacian(w);
  const Signal x0(oracle::random_vector(n, rng));
  const Eigen::MatrixXd L = oracle::dense_laplacian(w);
  const Eigen::VectorXd x = oracle::to_eigen(x0.vector());
  const Eigen::VectorXd d = oracle::row_sums(oracle::dense_weights(w));
  const int steps = static_cast<int>(full_length ? n : std::min<std::size_t>(n - 1, 8));
  const auto deltas = oracle::pcg_iterates(L, d, -L * x, steps);
  for (int k = 0; k < steps; ++k) {
    const CgResult r = cg_guided_filter(gl, x0, static_cast<std::size_t>(k + 1));
    CHECK(max_abs_diff(r.output.values(), oracle::to_std(x + deltas[static_cast<std::size_t>(k)])) <= 1e-10);
  }
}

}  // namespace

TEST_CASE("CG matches textbook PCG on the correction", "[filters][property]") {
  std::mt19937_64 rng(24);
  SECTION("first steps, wide weight range") {
    for (int trial = 0; trial < 30; ++trial) check_against_pcg(rng, 0.05, false);
  }
  // Run to m = n only where rounding cannot decouple the two recurrences.
  SECTION("all n steps, weights in [0.5, 1]") {
    for (int trial = 0; trial < 30; ++trial) check_against_pcg(rng, 0.5, true);
  }
}

TEST_CASE("CG run to n steps drives the recurrence residual down", "[filters]") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 28;
    const GraphLaplacian gl = build_laplacian(oracle::random_tridiagonal(n, rng, 0.5));
    const Signal x0(oracle::random_vector(n, rng));
    const CgResult r = cg_guided_filter(gl, x0, n);
    CHECK(r.initial_residual_norm == Catch::Approx(norm2(residual(gl, x0))).epsilon(1e-14));
    CHECK(r.residual_norm <= 1e-8 * r.initial_residual_norm);
  }
}

TEST_CASE("CG residuals are D^-1 orthogonal", "[filters][property]") {
  std::mt19937_64 rng(26);
  const std::size_t n = 30;
  const GraphLaplacian gl = build_laplacian(oracle::random_tridiagonal(n, rng));
  const Signal x0(oracle::random_vector(n, rng));
  std::vector<std::vector<double>> res{residual(gl, x0)};
  for (std::size_t k = 1; k <= 5; ++k) res.push_back(residual(gl, cg_guided_filter(gl, x0, k).output));
  const auto d = gl.degrees();
  for (std::size_t a = 0; a < res.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      long double ip = 0.0L;
      for (std::size_t i = 0; i < n; ++i) ip += static_cast<long double>(res[a][i]) * res[b][i] / d[i];
      CHECK(std::abs(static_cast<double>(ip)) <= 1e-10 * norm2(res[a]) * norm2(res[b]));
    }
  }
}

TEST_CASE("CG commutes with scaling and offsets", "[filters][property]") {
  std::mt19937_64 rng(27);
  const std::size_t n = 40;
  const GraphLaplacian gl = build_laplacian(oracle::random_tridiagonal(n, rng));
  const auto x = oracle::random_vector(n, rng);
  std::vector<double> shifted(n), scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    shifted[i] = x[i] + 3.0;
    scaled[i] = -4.0 * x[i];
  }
  const auto base = cg_guided_filter(gl, Signal(x), 6).output.vector();
  const auto s = cg_guided_filter(gl, Signal(shifted), 6).output.vector();
  const auto c = cg_guided_filter(gl, Signal(scaled), 6).output.vector();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(s[i] - (base[i] + 3.0)) <= 1e-12);
    CHECK(std::abs(c[i] - (-4.0 * base[i])) <= 1e-12);
  }
}

TEST_CASE("CG is not additive in x0", "[filters]") {
  // The step lengths depend on x0, so only scaling and offsets commute.
  std::mt19937_64 rng(28);
  const std::size_t n = 20;
  const GraphLaplacian gl = build_laplacian(oracle::random_tridiagonal(n, rng));
  const auto a = oracle::random_vector(n, rng);
  const auto b = oracle::random_vector(n, rng);
  std::vector<double> sum(n);
  for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
  const auto fa = cg_guided_filter(gl, Signal(a), 3).output.vector();
  const auto fb = cg_guided_filter(gl, Signal(b), 3).output.vector();
  const auto fs = cg_guided_filter(gl, Signal(sum), 3).output.vector();
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(fs[i] - fa[i] - fb[i]));
  CHECK(gap > 1e-6);
}

TEST_CASE("CG with negative weights stays finite", "[filters]") {
  const auto cfg = harness::fig6_config();
  const Signal clean = generate_piecewise(cfg.signal_spec);
  const Signal noisy = add_noise(clean, cfg.noise);
  const GraphLaplacian gl =
      build_laplacian(apply_overrides(bilateral_weights(clean, cfg.weight_params), cfg.overrides));
  REQUIRE(gl.has_negative_weights());
  const CgResult r = cg_guided_filter(gl, noisy, 15);
  CHECK(r.iterations_completed == 15);
  for (double v : r.output.values()) CHECK(std::isfinite(v));
}

TEST_CASE("non-finite intermediates raise NumericalError", "[filters]") {
  // Near-cancelling row sums make D^-1 large; the first step overflows.
  const GraphLaplacian gl = build_laplacian(WeightMatrix(2, {{1.0, 1.0}, {-0.999}}));
  CHECK_THROWS_AS(power_filter(gl, Signal({1e308, -1e308}), 1), NumericalError);
  CHECK_THROWS_AS(cg_guided_filter(gl, Signal({1e308, -1e308}), 1), NumericalError);
}

TEST_CASE("self-guided BF reduces noise on flat segments", "[filters]") {
  const auto cfg = harness::fig5_config();
  const Signal clean = generate_piecewise(cfg.signal_spec);
  const Signal noisy = add_noise(clean, cfg.noise);
  const Signal out = self_guided_bf(noisy, cfg.weight_params, 100);
  auto segment_var = [](std::span<const double> v, std::size_t lo, std::size_t hi) {
    double mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mean += v[i];
    mean /= static_cast<double>(hi - lo);
    double var = 0.0;
    for (std::size_t i = lo; i < hi; ++i) var += (v[i] - mean) * (v[i] - mean);
    return var / static_cast<double>(hi - lo);
  };
  // Interiors of the four constant pieces, away from the breakpoints.
  for (auto [lo, hi] : {std::pair<std::size_t, std::size_t>{10, 90}, {110, 240}, {260, 340}, {360, 390}}) {
    CHECK(segment_var(out.values(), lo, hi) < segment_var(noisy.values(), lo, hi));
  }
  CHECK(psnr(clean, out) > psnr(clean, noisy));
}

TEST_CASE("self-guided BF reapplies overrides on every rebuild", "[filters]") {
  const Signal x({0.0, 0.05, 0.1, 0.9, 1.0, 0.95});
  const std::vector<NegativeOverride> ov{{2, -0.01}};
  std::size_t calls = 0;
  const Signal ruled = self_guided_bf(x, range_only(), 4, [&](std::size_t k, const Signal&) {
    CHECK(k == calls);
    ++calls;
    return ov;
  });
  CHECK(calls == 4);
  CHECK(ruled == self_guided_bf(x, range_only(), 4, std::span<const NegativeOverride>(ov)));
  CHECK_FALSE(ruled == self_guided_bf(x, range_only(), 4));
  const std::vector<NegativeOverride> bad{{5, -1.0}};
  CHECK_THROWS_AS(self_guided_bf(x, range_only(), 1, std::span<const NegativeOverride>(bad)), ConfigError);
}

TEST_CASE("self-guided BF reports degenerate rebuilds as numerical errors", "[filters]") {
  const Signal x({0.0, 0.0, 0.0});
  const std::vector<NegativeOverride> ov{{0, -1.0}};  // row 0 sums to zero
  CHECK_THROWS_AS(self_guided_bf(x, {0.5, 0.1, 1, false}, 1, std::span<const NegativeOverride>(ov)),
                  NumericalError);
}
