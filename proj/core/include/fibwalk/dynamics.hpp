#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fibwalk/walk.hpp"

namespace fibwalk {

/// How the center-site walker's coin is prepared.
struct CoinPolicy {
  enum class Kind { BasisAverage, Pure };
  Kind kind = Kind::BasisAverage;
  Complex left{1.0, 0.0};  // used when kind == Pure
  Complex right{0.0, 0.0};

  static CoinPolicy basis_average() { return {}; }
  static CoinPolicy pure(Complex left, Complex right) { return {Kind::Pure, left, right}; }
};

enum class Averaging {
  Arithmetic,  // mean of C(t) over t = 1..T
  Cesaro       // mean over t of the running means
};

struct McdSeries {
  std::vector<double> values;  // C(t), t = 0..T
  WalkConfig config;
  CoinPolicy policy;
};

struct McdAverage {
  double value = 0.0;
  std::size_t window = 0;
  std::size_t n_sites = 0;
};

/// Center site used for dynamics: floor(N/2).
std::size_t center_site(std::size_t n_sites);

/// T+1 states, the initial one first.
std::vector<WalkerState> evolve(const WalkConfig& config, const WalkerState& initial,
                                std::size_t steps);

/// 2 sum_x (x - origin)(|L_x|^2 - |R_x|^2)
double mcd_instant(const WalkerState& state);

/// C(t) for a single initial state.
std::vector<double> mcd_trajectory(const WalkConfig& config, const WalkerState& initial,
                                   std::size_t steps);

/// C(t) from the center site under the coin policy (BasisAverage averages the
/// |L> and |R> runs).
McdSeries mcd_series(const WalkConfig& config, std::size_t steps, const CoinPolicy& policy = {});

/// Long-time average of C(t). Requires n_sites >= 8, 1 <= T < n_sites/2.
McdAverage mcd_time_average(const WalkConfig& config, std::size_t steps,
                            const CoinPolicy& policy = {},
                            Averaging averaging = Averaging::Arithmetic);

}  // namespace fibwalk
