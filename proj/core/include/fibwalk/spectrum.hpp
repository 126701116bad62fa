#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "fibwalk/walk.hpp"

namespace fibwalk {

/// Largest lattice accepted by the dense solver.
inline constexpr std::size_t kMaxDenseSites = 5000;

/// Default number of boundary sites on each side: max(5, N/50).
std::size_t default_edge_sites(std::size_t n_sites);

struct SpectrumOptions {
  /// Sites counted on each end for boundary_weights; 0 selects default_edge_sites.
  std::size_t edge_sites = 0;
  /// Eigenvalues of (U+U^dag)/2 chained closer than this are resolved jointly
  /// inside the cluster's invariant subspace.
  double cluster_tolerance = 1e-6;
};

/// All 2N eigenpairs U psi = exp(-iE) psi, sorted by E in (-pi, pi].
struct QuasienergySpectrum {
  std::vector<double> energies;
  Eigen::MatrixXcd states;  // column k belongs to energies[k]
  std::vector<double> boundary_weights;
  std::vector<double> residuals;  // ||U psi - lambda psi||
  std::size_t edge_sites = 0;
  WalkConfig config;

  std::size_t size() const { return energies.size(); }
  double max_residual() const;
};

struct Gap {
  double lower = 0.0;  // in (-pi, pi]
  double upper = 0.0;  // lower + width; may exceed pi when the arc wraps
  double width = 0.0;
  double ids = 0.0;

  double midpoint() const;  // mapped to (-pi, pi]
  /// True when energy lies strictly inside the arc (mod 2 pi).
  bool contains(double energy) const;
};

struct GapOptions {
  double min_width = 0.02;
  /// States whose boundary weight is at least this are treated as in-gap modes
  /// and do not bound a gap. Use a value above 1 to count every state.
  double edge_weight_cutoff = 0.6;
};

enum class Pinning { Zero, Pi, Unpinned };
enum class Side { Left, Right, Both };

struct EdgeMode {
  std::size_t state_index = 0;
  double energy = 0.0;
  Pinning pinning = Pinning::Unpinned;
  Side side = Side::Both;
  double boundary_weight = 0.0;
};

struct EdgeOptions {
  std::size_t edge_sites = 0;  // 0 selects default_edge_sites
  double weight_threshold = 0.6;
  double pin_tolerance = 1e-3;
};

struct GapLabel {
  int p = 0;
  int q = 0;
  double error = 0.0;  // |ids - (p + q / tau)|
};

QuasienergySpectrum quasienergies(const WalkConfig& config, const SpectrumOptions& options = {});

/// Probability on the m leftmost plus m rightmost sites of one eigenvector.
double boundary_weight(const Eigen::Ref<const Eigen::VectorXcd>& state, std::size_t edge_sites);

std::vector<Gap> find_gaps(const QuasienergySpectrum& spectrum, const GapOptions& options = {});

/// Gap detection on a bare energy list (all states count).
std::vector<Gap> find_gaps(std::vector<double> energies, double min_width);

std::vector<EdgeMode> classify_edge_modes(const QuasienergySpectrum& spectrum,
                                          const std::vector<Gap>& gaps,
                                          const EdgeOptions& options = {});

/// Best (p, q) with |q| <= q_max such that p + q/tau in [0, 1] matches ids
/// within tolerance. Ties prefer the smaller |q|, then positive q.
std::optional<GapLabel> gap_label(double ids, int q_max = 5, double tolerance = 1e-3);
std::vector<std::optional<GapLabel>> gap_labels(const std::vector<Gap>& gaps, int q_max = 5,
                                                double tolerance = 1e-3);

std::string_view to_string(Pinning pinning);
std::string_view to_string(Side side);

}  // namespace fibwalk
