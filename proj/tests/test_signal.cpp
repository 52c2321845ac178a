#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <algorithm>
#include <numeric>
#include <random>

#include "negw/csv.hpp"
#include "negw/error.hpp"
#include "negw/signal.hpp"

using namespace negw;
using Catch::Approx;

TEST_CASE("Signal rejects short and non-finite input", "[signal]") {
  CHECK_THROWS_AS(Signal(std::vector<double>{1.0}), ConfigError);
  CHECK_THROWS_AS(Signal(std::vector<double>{0.0, std::nan("")}), NumericalError);
  CHECK_THROWS_AS(Signal(std::vector<double>{0.0, std::numeric_limits<double>::infinity()}), NumericalError);
}

TEST_CASE("generate_piecewise fills segments", "[signal]") {
  CHECK(generate_piecewise({4, {2}, {0, 1}}).vector() == std::vector<double>{0, 0, 1, 1});
  CHECK(generate_piecewise({3, {}, {5}}).vector() == std::vector<double>{5, 5, 5});

  const Signal s = generate_piecewise({400, {100, 250, 350}, {0.0, 1.0, 0.4, 1.2}});
  REQUIRE(s.size() == 400);
  std::vector<std::size_t> jumps;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] != s[i - 1]) jumps.push_back(i);
  }
  CHECK(jumps == std::vector<std::size_t>{100, 250, 350});
}

TEST_CASE("generate_piecewise rejects invalid specs", "[signal]") {
  CHECK_THROWS_AS(generate_piecewise({4, {2, 2}, {0, 1, 2}}), ConfigError);
  CHECK_THROWS_AS(generate_piecewise({4, {3, 2}, {0, 1, 2}}), ConfigError);
  CHECK_THROWS_AS(generate_piecewise({4, {0}, {0, 1}}), ConfigError);
  CHECK_THROWS_AS(generate_piecewise({4, {4}, {0, 1}}), ConfigError);
  CHECK_THROWS_AS(generate_piecewise({4, {2}, {0}}), ConfigError);
}

TEST_CASE("piecewise jump count equals breakpoint count", "[signal][property]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    std::vector<std::size_t> bps;
    for (std::size_t i = 1; i < n; ++i) {
      if (rng() % 5 == 0) bps.push_back(i);
    }
    std::vector<double> levels(bps.size() + 1);
    for (std::size_t k = 0; k < levels.size(); ++k) levels[k] = static_cast<double>(k % 2 == 0 ? k : k + 10);
    const Signal s = generate_piecewise({n, bps, levels});
    std::size_t changes = 0;
    for (std::size_t i = 1; i < n; ++i) changes += s[i] != s[i - 1];
    CHECK(changes == bps.size());
  }
}

TEST_CASE("add_noise is deterministic and unbiased", "[signal]") {
  const Signal clean = generate_piecewise({400, {100, 250, 350}, {0.0, 1.0, 0.4, 1.2}});

  CHECK(add_noise(clean, {0.0, 3}) == clean);

  const Signal a = add_noise(clean, {0.3, 42});
  const Signal b = add_noise(clean, {0.3, 42});
  CHECK(a == b);
  CHECK_FALSE(add_noise(clean, {0.3, 43}) == a);

  double mean = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) mean += a[i] - clean[i];
  mean /= static_cast<double>(clean.size());
  CHECK(std::abs(mean) <= 4.0 * 0.3 / std::sqrt(400.0));

  CHECK_THROWS_AS(add_noise(clean, {-1.0, 0}), ConfigError);
}

TEST_CASE("psnr formula and edge cases", "[signal]") {
  const Signal ref({0.0, 1.0});
  CHECK(psnr(ref, ref) == std::numeric_limits<double>::infinity());
  CHECK(psnr(ref, Signal({0.0, 0.0})) == Approx(3.0102999566398116).epsilon(1e-14));
  CHECK(psnr(Signal({0.0, 2.0}), Signal({0.0, 0.0})) == Approx(psnr(ref, Signal({0.0, 0.0}))).epsilon(1e-14));
  CHECK_THROWS_AS(psnr(Signal({1.0, 1.0}), Signal({1.0, 2.0})), ConfigError);
  CHECK_THROWS_AS(psnr(ref, Signal({0.0, 1.0, 2.0})), UsageError);
}

TEST_CASE("psnr depends only on |offset| and range", "[signal][property]") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(20);
    for (double& v : x) v = g(rng);
    const double c = 0.1 + std::abs(g(rng));
    std::vector<double> up = x, down = x;
    for (double& v : up) v += c;
    for (double& v : down) v -= c;
    const Signal sx(x);
    const double expected = 10.0 * std::log10(std::pow(*std::max_element(x.begin(), x.end()) -
                                                           *std::min_element(x.begin(), x.end()), 2) /
                                              (c * c));
    CHECK(psnr(sx, Signal(up)) == Approx(expected).epsilon(1e-12));
    CHECK(psnr(sx, Signal(down)) == Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("signal CSV round trip and diagnostics", "[signal][csv]") {
  const Signal s({0.1, -2.5e-7, 1.0 / 3.0});
  const std::string text = signal_to_csv(s);
  CHECK(text.rfind("index,value\n0,", 0) == 0);
  CHECK(parse_signal_csv(text) == s);

  try {
    parse_signal_csv("index,value\n0,1\n1,abc\n");
    FAIL("expected a CSV error");
  } catch (const CsvFormatError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_signal_csv("i,v\n0,1\n1,2\n"), CsvFormatError);
  CHECK_THROWS_AS(parse_signal_csv("index,value\n0,1\n2,2\n"), CsvFormatError);
  CHECK_THROWS_AS(parse_signal_csv("index,value\n0,1\n"), CsvFormatError);
  CHECK(parse_signal_csv("index,value\r\n0,1\r\n1,2\r\n").vector() == std::vector<double>{1, 2});
}
