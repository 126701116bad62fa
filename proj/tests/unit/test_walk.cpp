#include <doctest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "fibwalk/error.hpp"
#include "fibwalk/walk.hpp"
#include "oracles.hpp"

using namespace fibwalk;

namespace {

WalkConfig identity_coin_walk(std::size_t n) { return make_walk_config(n, CoinAngles{0.0, 0.0}); }

}  // namespace

TEST_CASE("two-site identity-coin walk is a single 4-cycle") {
  const ComplexMatrix u = build_unitary(identity_coin_walk(2));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  // basis (0,L)=0, (0,R)=1, (1,L)=2, (1,R)=3; expected(to, from)
  expected(1, 0) = 1.0;  // (0,L) -> (0,R)
  expected(3, 1) = 1.0;  // (0,R) -> (1,R)
  expected(2, 3) = 1.0;  // (1,R) -> (1,L)
  expected(0, 2) = 1.0;  // (1,L) -> (0,L)
  CHECK((u - expected).cwiseAbs().maxCoeff() == 0.0);

  // eigenvalues of a 4-cycle: the fourth roots of unity
  const auto energies = test::general_quasienergies(u);
  const std::vector<double> expected_e{-std::numbers::pi / 2, 0.0, std::numbers::pi / 2,
                                       std::numbers::pi};
  CHECK(test::circular_multiset_distance(energies, expected_e) < 1e-12);
}

TEST_CASE("build_unitary is unitary for random configurations") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> sites(2, 34);
  for (int i = 0; i < 50; ++i) {
    for (Timeframe tf : {Timeframe::Plain, Timeframe::Symmetrized}) {
      const auto config = test::random_config(rng, sites(rng), i % 2 == 0, tf);
      CHECK(unitarity_defect(build_unitary(config)) < 1e-10);
    }
  }
}

TEST_CASE("real phases give a real matrix") {
  std::mt19937_64 rng(5);
  const auto config = test::random_config(rng, 13, true);
  CHECK(build_unitary(config).imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("plain and symmetrized timeframes share a spectrum") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> sites(2, 34);
  for (int i = 0; i < 20; ++i) {
    auto config = test::random_config(rng, sites(rng), i % 2 == 0);
    const auto plain = test::general_quasienergies(build_unitary(config));
    config.timeframe = Timeframe::Symmetrized;
    const auto sym = test::general_quasienergies(build_unitary(config));
    CHECK(test::circular_multiset_distance(plain, sym) < 1e-8);
  }
}

TEST_CASE("chiral relation holds in the symmetrized timeframe") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> sites(2, 34);
  for (int i = 0; i < 30; ++i) {
    const auto config = test::random_config(rng, sites(rng), true, Timeframe::Symmetrized);
    const ComplexMatrix u = build_unitary(config);
    const ComplexMatrix g = chiral_operator(config.n_sites());
    CHECK((g * u * g - u.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("plain timeframe obeys the shifted chiral relation Gamma (SC) Gamma = (CS)^dag") {
  std::mt19937_64 rng(32);
  const auto config = test::random_config(rng, 21, true);
  const ComplexMatrix g = chiral_operator(21);
  const ComplexMatrix cs = build_coin(config) * build_shift(config);
  CHECK((g * build_unitary(config) * g - cs.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("apply_step: identity coin moves right-movers and reflects at the wall") {
  const auto config = identity_coin_walk(10);
  const auto moved = apply_step(WalkerState::localized(10, 4, 0.0, 1.0), config);
  CHECK(std::abs(moved.right(5)) == doctest::Approx(1.0));
  CHECK(moved.norm() == doctest::Approx(1.0));

  const auto reflected = apply_step(WalkerState::localized(10, 0, 1.0, 0.0), config);
  CHECK(reflected.right(0) == Complex(1.0, 0.0));
  CHECK(std::abs(reflected.left(0)) == 0.0);

  auto phased = config;
  phased.boundary_phase_right = Complex(0.0, 1.0);
  const auto right_wall = apply_step(WalkerState::localized(10, 9, 0.0, 1.0), phased);
  CHECK(right_wall.left(9) == Complex(0.0, 1.0));
}

TEST_CASE("apply_step matches the dense matrix product") {
  std::mt19937_64 rng(4);
  for (Timeframe tf : {Timeframe::Plain, Timeframe::Symmetrized}) {
    for (int i = 0; i < 10; ++i) {
      const auto config = test::random_config(rng, 8, i % 2 == 0, tf);
      const auto state = test::random_state(rng, 8);
      const Eigen::VectorXcd dense = build_unitary(config) * state.to_vector();
      const auto next = apply_step(state, config);
      CHECK((next.to_vector() - dense).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(next.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("chiral operator") {
  const ComplexMatrix one = chiral_operator(1);
  CHECK(one(0, 1) == Complex(1.0));
  CHECK(one(1, 0) == Complex(1.0));
  CHECK(one(0, 0) == Complex(0.0));
  const ComplexMatrix g = chiral_operator(5);
  CHECK((g * g - ComplexMatrix::Identity(10, 10)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937_64 rng(8);
  const auto state = test::random_state(rng, 5);
  const Eigen::VectorXcd swapped = g * state.to_vector();
  for (std::size_t x = 0; x < 5; ++x) {
    CHECK(swapped(2 * x) == state.right(x));
    CHECK(swapped(2 * x + 1) == state.left(x));
  }
}

TEST_CASE("walk validation errors") {
  CHECK_THROWS_AS(make_walk_config(1, {}), BoundsError);
  WalkConfig single;
  single.word = FibonacciWord::from_string("A");
  CHECK_THROWS_AS(build_unitary(single), BoundsError);

  auto bad_phase = identity_coin_walk(4);
  bad_phase.boundary_phase_left = Complex(1.1, 0.0);
  CHECK_THROWS_AS(build_unitary(bad_phase), ValidationError);

  CHECK_THROWS_AS(apply_step(WalkerState(5, 0), identity_coin_walk(4)), ShapeError);
  CHECK_THROWS_AS(chiral_operator(0), BoundsError);
}

TEST_CASE("matrix CSV export lists non-zero entries") {
  std::ostringstream out;
  write_matrix_csv(out, build_unitary(identity_coin_walk(2)));
  CHECK(out.str() == "row,col,re,im\n0,2,1,0\n1,0,1,0\n2,3,1,0\n3,1,1,0\n");
}
