#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "fibwalk/sequence.hpp"

namespace fibwalk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Timeframe {
  Plain,       // U = S C
  Symmetrized  // U = C^{1/2} S C^{1/2}
};

/// Parameters of a finite walk on |word| sites with reflective ends.
///
/// The left wall maps |0,L> to phase_left |0,R>; the right wall maps
/// |N-1,R> to phase_right |N-1,L>. Both phases must have unit modulus.
struct WalkConfig {
  FibonacciWord word;
  CoinAngles coins;
  Complex boundary_phase_left{1.0, 0.0};
  Complex boundary_phase_right{1.0, 0.0};
  Timeframe timeframe = Timeframe::Plain;

  std::size_t n_sites() const { return word.size(); }
  std::size_t dimension() const { return 2 * word.size(); }
  std::vector<double> angles() const { return angles_for(word, coins); }

  /// Throws BoundsError for fewer than two sites and ValidationError for
  /// non-unit boundary phases or non-finite angles.
  void validate() const;
};

/// Standard Fibonacci word of n_sites letters with the given termination.
WalkConfig make_walk_config(std::size_t n_sites, CoinAngles coins,
                            const Termination& termination = StandardTermination{});

/// Spinor amplitudes over the lattice, interleaved as (L_0, R_0, L_1, R_1, ...).
class WalkerState {
 public:
  WalkerState() = default;
  WalkerState(std::size_t n_sites, std::size_t origin);
  WalkerState(std::vector<Complex> amplitudes, std::size_t origin);

  /// Walker on one site with coin spinor (left, right); the spinor is normalized.
  static WalkerState localized(std::size_t n_sites, std::size_t site, Complex left, Complex right);

  std::size_t n_sites() const { return amplitudes_.size() / 2; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::size_t origin() const { return origin_; }

  Complex& left(std::size_t x) { return amplitudes_[2 * x]; }
  Complex& right(std::size_t x) { return amplitudes_[2 * x + 1]; }
  Complex left(std::size_t x) const { return amplitudes_[2 * x]; }
  Complex right(std::size_t x) const { return amplitudes_[2 * x + 1]; }

  std::span<Complex> amplitudes() { return amplitudes_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  double norm() const;
  Eigen::VectorXcd to_vector() const;

  bool operator==(const WalkerState&) const = default;

 private:
  std::vector<Complex> amplitudes_;
  std::size_t origin_ = 0;
};

/// Dense 2N x 2N step operator in the basis (0,L), (0,R), (1,L), ...
ComplexMatrix build_unitary(const WalkConfig& config);

/// Dense coin operator with per-site rotation by scale * theta_x.
ComplexMatrix build_coin(const WalkConfig& config, double scale = 1.0);

/// Dense shift operator including the reflective walls.
ComplexMatrix build_shift(const WalkConfig& config);

/// Block-diagonal sigma_x over n_sites.
ComplexMatrix chiral_operator(std::size_t n_sites);

/// One step of the walk, matrix-free and linear in n_sites.
WalkerState apply_step(const WalkerState& state, const WalkConfig& config);

/// Precomputed matrix-free stepper; reuses its scratch buffer across steps.
class Stepper {
 public:
  explicit Stepper(const WalkConfig& config);

  /// Advances state in place by one step.
  void step(WalkerState& state);

  std::size_t n_sites() const { return cos_full_.size(); }

 private:
  void rotate(std::span<Complex> amps, const std::vector<double>& c,
              const std::vector<double>& s) const;
  void shift(std::span<const Complex> in, std::span<Complex> out) const;

  Timeframe timeframe_;
  Complex phase_left_;
  Complex phase_right_;
  std::vector<double> cos_full_, sin_full_;
  std::vector<double> cos_half_, sin_half_;
  std::vector<Complex> scratch_;
};

/// max |(U^dag U - I)_{ij}|
double unitarity_defect(const ComplexMatrix& u);

/// Writes the non-zero entries as CSV rows "row,col,re,im" with a header.
void write_matrix_csv(std::ostream& out, const ComplexMatrix& m);

}  // namespace fibwalk
