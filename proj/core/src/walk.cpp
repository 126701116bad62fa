#include "fibwalk/walk.hpp"

#include <Eigen/Sparse>
#include <fmt/format.h>

#include <cmath>
#include <ostream>

#include "fibwalk/error.hpp"

namespace fibwalk {
namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

constexpr double kPhaseModulusTolerance = 1e-12;

Eigen::Index left_index(std::size_t x) { return static_cast<Eigen::Index>(2 * x); }
Eigen::Index right_index(std::size_t x) { return static_cast<Eigen::Index>(2 * x + 1); }

SparseMatrix sparse_coin(const WalkConfig& config, double scale) {
  const auto angles = config.angles();
  const auto dim = static_cast<Eigen::Index>(config.dimension());
  std::vector<Triplet> entries;
  entries.reserve(4 * angles.size());
  for (std::size_t x = 0; x < angles.size(); ++x) {
    const double c = std::cos(scale * angles[x]);
    const double s = std::sin(scale * angles[x]);
    // R(theta) = [[c, s], [-s, c]] on (L, R)
    entries.emplace_back(left_index(x), left_index(x), c);
    entries.emplace_back(left_index(x), right_index(x), s);
    entries.emplace_back(right_index(x), left_index(x), -s);
    entries.emplace_back(right_index(x), right_index(x), c);
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

SparseMatrix sparse_shift(const WalkConfig& config) {
  const std::size_t n = config.n_sites();
  const auto dim = static_cast<Eigen::Index>(config.dimension());
  std::vector<Triplet> entries;
  entries.reserve(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (x > 0) {
      entries.emplace_back(left_index(x - 1), left_index(x), 1.0);
    } else {
      entries.emplace_back(right_index(0), left_index(0), config.boundary_phase_left);
    }
    if (x + 1 < n) {
      entries.emplace_back(right_index(x + 1), right_index(x), 1.0);
    } else {
      entries.emplace_back(left_index(n - 1), right_index(n - 1), config.boundary_phase_right);
    }
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

}  // namespace

void WalkConfig::validate() const {
  if (word.size() < 2) {
    throw BoundsError(fmt::format("walk needs at least 2 sites, got {}", word.size()));
  }
  if (!std::isfinite(coins.theta_a) || !std::isfinite(coins.theta_b)) {
    throw ValidationError("coin angles must be finite");
  }
  for (const Complex& phase : {boundary_phase_left, boundary_phase_right}) {
    if (std::abs(std::abs(phase) - 1.0) > kPhaseModulusTolerance) {
      throw ValidationError(fmt::format("boundary phase ({}, {}) does not have unit modulus",
                                        phase.real(), phase.imag()));
    }
  }
}

WalkConfig make_walk_config(std::size_t n_sites, CoinAngles coins, const Termination& termination) {
  if (n_sites < 2) throw BoundsError(fmt::format("walk needs at least 2 sites, got {}", n_sites));
  WalkConfig config;
  config.word = apply_termination(standard_word(n_sites), termination);
  config.coins = coins;
  return config;
}

WalkerState::WalkerState(std::size_t n_sites, std::size_t origin)
    : amplitudes_(2 * n_sites), origin_(origin) {
  if (origin >= n_sites) throw BoundsError("walker origin outside the lattice");
}

WalkerState::WalkerState(std::vector<Complex> amplitudes, std::size_t origin)
    : amplitudes_(std::move(amplitudes)), origin_(origin) {
  if (amplitudes_.size() % 2 != 0) throw ShapeError("amplitude vector must have even length");
  if (origin_ >= n_sites()) throw BoundsError("walker origin outside the lattice");
}

WalkerState WalkerState::localized(std::size_t n_sites, std::size_t site, Complex left,
                                   Complex right) {
  const double norm = std::sqrt(std::norm(left) + std::norm(right));
  if (!(norm > 0.0)) throw ValidationError("coin spinor must be non-zero");
  WalkerState state(n_sites, site);
  state.left(site) = left / norm;
  state.right(site) = right / norm;
  return state;
}

double WalkerState::norm() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

Eigen::VectorXcd WalkerState::to_vector() const {
  return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(),
                                            static_cast<Eigen::Index>(amplitudes_.size()));
}

ComplexMatrix build_coin(const WalkConfig& config, double scale) {
  return ComplexMatrix(sparse_coin(config, scale));
}

ComplexMatrix build_shift(const WalkConfig& config) { return ComplexMatrix(sparse_shift(config)); }

ComplexMatrix build_unitary(const WalkConfig& config) {
  config.validate();
  const SparseMatrix shift = sparse_shift(config);
  if (config.timeframe == Timeframe::Plain) {
    const SparseMatrix coin = sparse_coin(config, 1.0);
    return ComplexMatrix(SparseMatrix(shift * coin));
  }
  const SparseMatrix half = sparse_coin(config, 0.5);
  return ComplexMatrix(SparseMatrix(half * shift * half));
}

ComplexMatrix chiral_operator(std::size_t n_sites) {
  if (n_sites < 1) throw BoundsError("chiral operator needs at least one site");
  const auto dim = static_cast<Eigen::Index>(2 * n_sites);
  ComplexMatrix gamma = ComplexMatrix::Zero(dim, dim);
  for (std::size_t x = 0; x < n_sites; ++x) {
    gamma(left_index(x), right_index(x)) = 1.0;
    gamma(right_index(x), left_index(x)) = 1.0;
  }
  return gamma;
}

Stepper::Stepper(const WalkConfig& config)
    : timeframe_(config.timeframe),
      phase_left_(config.boundary_phase_left),
      phase_right_(config.boundary_phase_right) {
  config.validate();
  const auto angles = config.angles();
  cos_full_.resize(angles.size());
  sin_full_.resize(angles.size());
  cos_half_.resize(angles.size());
  sin_half_.resize(angles.size());
  for (std::size_t x = 0; x < angles.size(); ++x) {
    cos_full_[x] = std::cos(angles[x]);
    sin_full_[x] = std::sin(angles[x]);
    cos_half_[x] = std::cos(0.5 * angles[x]);
    sin_half_[x] = std::sin(0.5 * angles[x]);
  }
  scratch_.resize(2 * angles.size());
}

void Stepper::rotate(std::span<Complex> amps, const std::vector<double>& c,
                     const std::vector<double>& s) const {
  for (std::size_t x = 0; x < c.size(); ++x) {
    const Complex l = amps[2 * x];
    const Complex r = amps[2 * x + 1];
    amps[2 * x] = c[x] * l + s[x] * r;
    amps[2 * x + 1] = -s[x] * l + c[x] * r;
  }
}

void Stepper::shift(std::span<const Complex> in, std::span<Complex> out) const {
  const std::size_t n = cos_full_.size();
  for (std::size_t x = 0; x + 1 < n; ++x) {
    out[2 * x] = in[2 * (x + 1)];              // L moves left
    out[2 * (x + 1) + 1] = in[2 * x + 1];      // R moves right
  }
  out[1] = phase_left_ * in[0];                          // |0,L> -> |0,R>
  out[2 * (n - 1)] = phase_right_ * in[2 * (n - 1) + 1];  // |N-1,R> -> |N-1,L>
}

void Stepper::step(WalkerState& state) {
  if (state.n_sites() != n_sites()) {
    throw ShapeError(fmt::format("state has {} sites, walk has {}", state.n_sites(), n_sites()));
  }
  auto amps = state.amplitudes();
  if (timeframe_ == Timeframe::Plain) {
    rotate(amps, cos_full_, sin_full_);
    shift(amps, scratch_);
  } else {
    rotate(amps, cos_half_, sin_half_);
    shift(amps, scratch_);
    rotate(scratch_, cos_half_, sin_half_);
  }
  std::copy(scratch_.begin(), scratch_.end(), amps.begin());
}

WalkerState apply_step(const WalkerState& state, const WalkConfig& config) {
  if (state.n_sites() != config.n_sites()) {
    throw ShapeError(
        fmt::format("state has {} sites, walk has {}", state.n_sites(), config.n_sites()));
  }
  Stepper stepper(config);
  WalkerState next = state;
  stepper.step(next);
  return next;
}

double unitarity_defect(const ComplexMatrix& u) {
  const ComplexMatrix defect = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

void write_matrix_csv(std::ostream& out, const ComplexMatrix& m) {
  out << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex v = m(i, j);
      if (v == Complex{}) continue;
      out << fmt::format("{},{},{:.17g},{:.17g}\n", i, j, v.real(), v.imag());
    }
  }
}

}  // namespace fibwalk
