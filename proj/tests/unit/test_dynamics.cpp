#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "fibwalk/dynamics.hpp"
#include "fibwalk/error.hpp"
#include "oracles.hpp"

using namespace fibwalk;

namespace {

constexpr double kPi = std::numbers::pi;

// C averaged over t = 1..T from dense powers of U, both basis coins.
double dense_mcd_average(const WalkConfig& config, std::size_t steps) {
  const ComplexMatrix u = build_unitary(config);
  const std::size_t n = config.n_sites();
  const std::size_t c = center_site(n);
  double total = 0.0;
  for (std::size_t coin = 0; coin < 2; ++coin) {
    Eigen::VectorXcd start = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(2 * n));
    start(static_cast<Eigen::Index>(2 * c + coin)) = 1.0;
    const auto psi = test::dense_evolution(u, start, steps);
    for (std::size_t t = 1; t <= steps; ++t) {
      double sum = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        const double d = static_cast<double>(x) - static_cast<double>(c);
        sum += d * (std::norm(psi[t](static_cast<Eigen::Index>(2 * x))) -
                    std::norm(psi[t](static_cast<Eigen::Index>(2 * x + 1))));
      }
      total += 2.0 * sum;
    }
  }
  return total / (2.0 * static_cast<double>(steps));
}

}  // namespace

TEST_CASE("evolve with zero steps returns the initial state") {
  const auto config = make_walk_config(16, CoinAngles{0.3, 1.1});
  const auto start = WalkerState::localized(16, 8, 1.0, 0.0);
  const auto states = evolve(config, start, 0);
  REQUIRE(states.size() == 1);
  CHECK(states[0].to_vector() == start.to_vector());
}

TEST_CASE("identity coin moves a right-mover ballistically") {
  const auto config = make_walk_config(20, CoinAngles{0.0, 0.0});
  const auto states = evolve(config, WalkerState::localized(20, 10, 0.0, 1.0), 3);
  REQUIRE(states.size() == 4);
  CHECK(std::abs(states[3].right(13)) == doctest::Approx(1.0));
  CHECK(states[3].norm() == doctest::Approx(1.0));
}

TEST_CASE("norm drift stays below 1e-10") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto config = test::random_config(rng, 60, i % 2 == 0);
    double drift = 0.0;
    for (const auto& s : evolve(config, test::random_state(rng, 60), 300)) {
      drift = std::max(drift, std::abs(s.norm() - 1.0));
    }
    CHECK(drift < 1e-10);
  }
}

TEST_CASE("mcd_instant direct formula") {
  CHECK(mcd_instant(WalkerState::localized(9, 4, 1.0, 0.0)) == 0.0);
  CHECK(mcd_instant(WalkerState::localized(9, 4, 0.0, 1.0)) == 0.0);

  std::vector<Complex> amps(18, 0.0);
  amps[2 * 5] = 1.0;  // (origin + 1, L)
  CHECK(mcd_instant(WalkerState(amps, 4)) == 2.0);

  std::vector<Complex> spread(18, 0.0);
  for (std::size_t x : {3u, 5u}) {
    spread[2 * x] = 0.5;
    spread[2 * x + 1] = 0.5;
  }
  CHECK(mcd_instant(WalkerState(spread, 4)) == 0.0);
}

TEST_CASE("ballistic walk averages to exactly -(T+1)") {
  for (std::size_t n : {64u, 65u, 101u}) {
    for (std::size_t steps : {1u, 5u, 20u}) {
      const auto avg = mcd_time_average(make_walk_config(n, CoinAngles{0.0, 0.0}), steps);
      CHECK(std::abs(avg.value + static_cast<double>(steps + 1)) < 1e-12);
      CHECK(avg.window == steps);
      CHECK(avg.n_sites == n);
    }
  }
  const auto series = mcd_series(make_walk_config(64, CoinAngles{0.0, 0.0}), 10);
  for (std::size_t t = 0; t <= 10; ++t) CHECK(series.values[t] == -2.0 * static_cast<double>(t));
}

TEST_CASE("MCD plateau at (pi/2, 0)") {
  const auto config = make_walk_config(987, CoinAngles{kPi / 2, 0.0});
  const double long_run = mcd_time_average(config, 400).value;
  const double short_run = mcd_time_average(config, 200).value;
  CHECK(long_run >= -1.2);
  CHECK(long_run <= -0.8);
  CHECK(std::abs(long_run - short_run) < 0.1);
}

TEST_CASE("T = 1 matches the dense oracle") {
  const auto config = make_walk_config(21, CoinAngles{kPi / 2, kPi / 2});
  CHECK(std::abs(mcd_time_average(config, 1).value - dense_mcd_average(config, 1)) < 1e-12);
}

TEST_CASE("dense oracle agreement on random walks") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> sites(8, 21);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = sites(rng);
    const auto config = test::random_config(rng, n, i % 2 == 0,
                                            i % 3 == 0 ? Timeframe::Symmetrized : Timeframe::Plain);
    const auto start = test::random_state(rng, n);
    const auto fast = evolve(config, start, 30);
    const auto slow = test::dense_evolution(build_unitary(config), start.to_vector(), 30);
    double worst = 0.0;
    for (std::size_t t = 0; t <= 30; ++t) {
      worst = std::max(worst, (fast[t].to_vector() - slow[t]).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);

    const std::size_t steps = (n - 1) / 2;
    if (steps >= 1 && 2 * steps < n) {
      CHECK(std::abs(mcd_time_average(config, steps).value - dense_mcd_average(config, steps)) <
            1e-10);
    }
  }
}

TEST_CASE("light cone keeps the walls dark") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 40 + static_cast<std::size_t>(i);
    const auto config = test::random_config(rng, n);
    const std::size_t steps = n / 2 - 2;  // T < N/2 - 1
    for (const double l : {0.0, 1.0}) {
      const auto states =
          evolve(config, WalkerState::localized(n, center_site(n), l, 1.0 - l), steps);
      double edge = 0.0;
      for (const auto& s : states) {
        edge = std::max(edge, std::norm(s.left(0)) + std::norm(s.right(0)) +
                                  std::norm(s.left(n - 1)) + std::norm(s.right(n - 1)));
      }
      CHECK(edge < 1e-12);
    }
  }
}

TEST_CASE("pure coin policy and Cesaro averaging") {
  const auto config = make_walk_config(64, CoinAngles{0.0, 0.0});
  const auto left = mcd_series(config, 6, CoinPolicy::pure(1.0, 0.0));
  const auto right = mcd_series(config, 6, CoinPolicy::pure(0.0, 1.0));
  for (std::size_t t = 0; t <= 6; ++t) {
    CHECK(left.values[t] == -2.0 * static_cast<double>(t));
    CHECK(right.values[t] == -2.0 * static_cast<double>(t));
  }
  // running means of -2t are -(t+1); their mean over t = 1..T is -(T+3)/2
  const auto cesaro = mcd_time_average(config, 9, {}, Averaging::Cesaro);
  CHECK(cesaro.value == doctest::Approx(-6.0).epsilon(1e-14));
}

TEST_CASE("identical inputs give bitwise-identical series") {
  const auto config = make_walk_config(233, CoinAngles{1.1, -0.4});
  const auto a = mcd_series(config, 100);
  const auto b = mcd_series(config, 100);
  REQUIRE(a.values.size() == b.values.size());
  CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0);
}

TEST_CASE("time-average preconditions") {
  const auto config = make_walk_config(64, CoinAngles{0.0, 0.0});
  CHECK_THROWS_AS(mcd_time_average(config, 32), BoundaryContaminationError);
  CHECK_THROWS_AS(mcd_time_average(config, 40), BoundaryContaminationError);
  CHECK_THROWS_AS(mcd_time_average(config, 0), BoundsError);
  CHECK_THROWS_AS(mcd_time_average(make_walk_config(7, CoinAngles{}), 2), BoundsError);
  CHECK_NOTHROW(mcd_time_average(config, 31));
}
