#include "fibwalk/dynamics.hpp"

#include <fmt/format.h>

#include <cmath>

#include "fibwalk/error.hpp"

namespace fibwalk {
namespace {

std::vector<WalkerState> initial_states(const WalkConfig& config, const CoinPolicy& policy) {
  const std::size_t n = config.n_sites();
  const std::size_t center = center_site(n);
  if (policy.kind == CoinPolicy::Kind::BasisAverage) {
    return {WalkerState::localized(n, center, 1.0, 0.0),
            WalkerState::localized(n, center, 0.0, 1.0)};
  }
  return {WalkerState::localized(n, center, policy.left, policy.right)};
}

}  // namespace

std::size_t center_site(std::size_t n_sites) { return n_sites / 2; }

std::vector<WalkerState> evolve(const WalkConfig& config, const WalkerState& initial,
                                std::size_t steps) {
  Stepper stepper(config);
  if (initial.n_sites() != config.n_sites()) {
    throw ShapeError(fmt::format("state has {} sites, walk has {}", initial.n_sites(),
                                 config.n_sites()));
  }
  std::vector<WalkerState> states;
  states.reserve(steps + 1);
  states.push_back(initial);
  WalkerState current = initial;
  for (std::size_t t = 0; t < steps; ++t) {
    stepper.step(current);
    states.push_back(current);
  }
  return states;
}

double mcd_instant(const WalkerState& state) {
  const auto origin = static_cast<double>(state.origin());
  double sum = 0.0;
  for (std::size_t x = 0; x < state.n_sites(); ++x) {
    const double chirality = std::norm(state.left(x)) - std::norm(state.right(x));
    sum += (static_cast<double>(x) - origin) * chirality;
  }
  return 2.0 * sum;
}

std::vector<double> mcd_trajectory(const WalkConfig& config, const WalkerState& initial,
                                   std::size_t steps) {
  Stepper stepper(config);
  if (initial.n_sites() != config.n_sites()) {
    throw ShapeError(fmt::format("state has {} sites, walk has {}", initial.n_sites(),
                                 config.n_sites()));
  }
  std::vector<double> values;
  values.reserve(steps + 1);
  WalkerState current = initial;
  values.push_back(mcd_instant(current));
  for (std::size_t t = 0; t < steps; ++t) {
    stepper.step(current);
    values.push_back(mcd_instant(current));
  }
  return values;
}

McdSeries mcd_series(const WalkConfig& config, std::size_t steps, const CoinPolicy& policy) {
  config.validate();
  const auto starts = initial_states(config, policy);
  McdSeries series{std::vector<double>(steps + 1, 0.0), config, policy};
  for (const auto& start : starts) {
    const auto run = mcd_trajectory(config, start, steps);
    for (std::size_t t = 0; t <= steps; ++t) series.values[t] += run[t];
  }
  const double runs = static_cast<double>(starts.size());
  for (double& v : series.values) v /= runs;
  return series;
}

McdAverage mcd_time_average(const WalkConfig& config, std::size_t steps, const CoinPolicy& policy,
                            Averaging averaging) {
  const std::size_t n = config.n_sites();
  if (n < 8) throw BoundsError(fmt::format("MCD average needs at least 8 sites, got {}", n));
  if (steps < 1) throw BoundsError("MCD time window must be at least 1 step");
  if (2 * steps >= n) {
    throw BoundaryContaminationError(fmt::format(
        "time window T={} must satisfy T < N/2 (N={}) to avoid boundary reflections", steps, n));
  }
  const McdSeries series = mcd_series(config, steps, policy);
  double total = 0.0;
  if (averaging == Averaging::Arithmetic) {
    for (std::size_t t = 1; t <= steps; ++t) total += series.values[t];
  } else {
    double running = 0.0;
    for (std::size_t t = 1; t <= steps; ++t) {
      running += series.values[t];
      total += running / static_cast<double>(t);
    }
  }
  return McdAverage{total / static_cast<double>(steps), steps, n};
}

}  // namespace fibwalk
