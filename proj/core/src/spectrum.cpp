#include "fibwalk/spectrum.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fibwalk/error.hpp"

namespace fibwalk {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// -arg(lambda) folded into (-pi, pi].
double quasienergy_of(Complex lambda) {
  double e = -std::arg(lambda);
  if (e <= -kPi) e += kTwoPi;
  return e;
}

std::string describe(const WalkConfig& config) {
  return fmt::format("N={} theta_a={:.17g} theta_b={:.17g} timeframe={}", config.n_sites(),
                     config.coins.theta_a, config.coins.theta_b,
                     config.timeframe == Timeframe::Plain ? "plain" : "symmetrized");
}

std::vector<Gap> gaps_between(std::vector<double> bounding, const std::vector<double>& all,
                              double min_width) {
  if (!(min_width > 0.0)) throw ValidationError("gap min_width must be positive");
  std::vector<Gap> gaps;
  if (bounding.empty()) return gaps;
  std::sort(bounding.begin(), bounding.end());
  const std::size_t n = bounding.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? bounding[i + 1] : bounding[0] + kTwoPi;
    const double width = next - bounding[i];
    if (width <= min_width) continue;
    Gap gap{bounding[i], next, width, 0.0};
    const double mid = gap.midpoint();
    const auto below = std::count_if(all.begin(), all.end(), [&](double e) { return e < mid; });
    gap.ids = all.empty() ? 0.0 : static_cast<double>(below) / static_cast<double>(all.size());
    gaps.push_back(gap);
  }
  std::sort(gaps.begin(), gaps.end(),
            [](const Gap& a, const Gap& b) { return a.midpoint() < b.midpoint(); });
  return gaps;
}

}  // namespace

std::size_t default_edge_sites(std::size_t n_sites) { return std::max<std::size_t>(5, n_sites / 50); }

double QuasienergySpectrum::max_residual() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

double Gap::midpoint() const {
  double mid = lower + 0.5 * width;
  if (mid > kPi) mid -= kTwoPi;
  return mid;
}

bool Gap::contains(double energy) const {
  double d = std::fmod(energy - lower, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d > 0.0 && d < width;
}

double boundary_weight(const Eigen::Ref<const Eigen::VectorXcd>& state, std::size_t edge_sites) {
  const auto dim = state.size();
  const auto n_sites = static_cast<std::size_t>(dim / 2);
  if (2 * edge_sites >= n_sites) return state.squaredNorm();
  const auto m = static_cast<Eigen::Index>(2 * edge_sites);
  return state.head(m).squaredNorm() + state.tail(m).squaredNorm();
}

QuasienergySpectrum quasienergies(const WalkConfig& config, const SpectrumOptions& options) {
  config.validate();
  if (config.n_sites() > kMaxDenseSites) {
    throw BoundsError(fmt::format("dense spectrum limited to {} sites, got {}", kMaxDenseSites,
                                  config.n_sites()));
  }
  const ComplexMatrix u = build_unitary(config);
  const auto dim = u.rows();

  // (U + U^dag)/2 has eigenvalues cos E and commutes with U.
  const ComplexMatrix real_part = 0.5 * (u + u.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(real_part);
  if (solver.info() != Eigen::Success) {
    throw SolverError("Hermitian eigensolver did not converge for " + describe(config));
  }
  ComplexMatrix vectors = solver.eigenvectors();
  const Eigen::VectorXd cosines = solver.eigenvalues();

  // Within a cluster of nearly equal cos E the Hermitian eigenvectors mix states
  // whose eigenvalues exp(-iE) can still be far apart (E vs -E). The block of U
  // restricted to the cluster is normal, so its complex Schur vectors are its
  // eigenvectors; they separate the states by |lambda_i - lambda_j| directly.
  Eigen::Index start = 0;
  while (start < dim) {
    Eigen::Index stop = start + 1;
    while (stop < dim && cosines(stop) - cosines(stop - 1) <= options.cluster_tolerance) ++stop;
    const Eigen::Index width = stop - start;
    if (width > 1) {
      const ComplexMatrix basis = vectors.middleCols(start, width);
      const ComplexMatrix compressed = basis.adjoint() * u * basis;
      Eigen::ComplexSchur<ComplexMatrix> schur(compressed);
      if (schur.info() != Eigen::Success) {
        throw SolverError("cluster Schur decomposition did not converge for " + describe(config));
      }
      vectors.middleCols(start, width) = basis * schur.matrixU();
    }
    start = stop;
  }

  const ComplexMatrix image = u * vectors;
  std::vector<double> energies(static_cast<std::size_t>(dim));
  std::vector<double> residuals(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex lambda = vectors.col(k).dot(image.col(k));  // psi^dag U psi
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
      throw SolverError("non-finite eigenvalue for " + describe(config));
    }
    energies[static_cast<std::size_t>(k)] = quasienergy_of(lambda);
    residuals[static_cast<std::size_t>(k)] = (image.col(k) - lambda * vectors.col(k)).norm();
  }

  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });

  QuasienergySpectrum out;
  out.config = config;
  out.edge_sites = options.edge_sites > 0 ? options.edge_sites : default_edge_sites(config.n_sites());
  out.states.resize(dim, dim);
  out.energies.resize(order.size());
  out.residuals.resize(order.size());
  out.boundary_weights.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto src = static_cast<Eigen::Index>(order[k]);
    out.states.col(static_cast<Eigen::Index>(k)) = vectors.col(src);
    out.energies[k] = energies[order[k]];
    out.residuals[k] = residuals[order[k]];
    out.boundary_weights[k] = boundary_weight(vectors.col(src), out.edge_sites);
  }
  return out;
}

std::vector<Gap> find_gaps(const QuasienergySpectrum& spectrum, const GapOptions& options) {
  std::vector<double> bulk;
  bulk.reserve(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double w = k < spectrum.boundary_weights.size() ? spectrum.boundary_weights[k] : 0.0;
    if (w < options.edge_weight_cutoff) bulk.push_back(spectrum.energies[k]);
  }
  return gaps_between(std::move(bulk), spectrum.energies, options.min_width);
}

std::vector<Gap> find_gaps(std::vector<double> energies, double min_width) {
  const std::vector<double> all = energies;
  return gaps_between(std::move(energies), all, min_width);
}

std::vector<EdgeMode> classify_edge_modes(const QuasienergySpectrum& spectrum,
                                          const std::vector<Gap>& gaps,
                                          const EdgeOptions& options) {
  if (!(options.weight_threshold > 0.0 && options.weight_threshold < 1.0)) {
    throw ValidationError("edge weight threshold must lie in (0, 1)");
  }
  const std::size_t n_sites = static_cast<std::size_t>(spectrum.states.rows() / 2);
  const std::size_t m = options.edge_sites > 0 ? options.edge_sites : default_edge_sites(n_sites);
  const auto block = static_cast<Eigen::Index>(2 * std::min(m, n_sites));

  std::vector<EdgeMode> modes;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double energy = spectrum.energies[k];
    const bool in_gap =
        std::any_of(gaps.begin(), gaps.end(), [&](const Gap& g) { return g.contains(energy); });
    if (!in_gap) continue;
    const auto column = spectrum.states.col(static_cast<Eigen::Index>(k));
    const double weight = boundary_weight(column, m);
    if (weight < options.weight_threshold) continue;

    const double left = column.head(block).squaredNorm();
    const double right = column.tail(block).squaredNorm();
    Side side = Side::Both;
    if (right < 0.1 * weight) {
      side = Side::Left;
    } else if (left < 0.1 * weight) {
      side = Side::Right;
    }
    Pinning pinning = Pinning::Unpinned;
    if (std::abs(energy) <= options.pin_tolerance) {
      pinning = Pinning::Zero;
    } else if (std::abs(kPi - std::abs(energy)) <= options.pin_tolerance) {
      pinning = Pinning::Pi;
    }
    modes.push_back(EdgeMode{k, energy, pinning, side, weight});
  }
  return modes;
}

std::optional<GapLabel> gap_label(double ids, int q_max, double tolerance) {
  if (q_max < 1) throw ValidationError("gap label q_max must be >= 1");
  std::optional<GapLabel> best;
  for (int mag = 0; mag <= q_max; ++mag) {
    for (int q : {mag, -mag}) {
      if (mag == 0 && q < 0) continue;
      const double shift = q * kInverseGoldenRatio;
      const int p = static_cast<int>(std::lround(ids - shift));
      const double value = p + shift;
      if (value < -1e-12 || value > 1.0 + 1e-12) continue;
      const double err = std::abs(ids - value);
      if (!best || err < best->error) best = GapLabel{p, q, err};
    }
  }
  if (best && best->error <= tolerance) return best;
  return std::nullopt;
}

std::vector<std::optional<GapLabel>> gap_labels(const std::vector<Gap>& gaps, int q_max,
                                                double tolerance) {
  std::vector<std::optional<GapLabel>> labels;
  labels.reserve(gaps.size());
  for (const Gap& g : gaps) labels.push_back(gap_label(g.ids, q_max, tolerance));
  return labels;
}

std::string_view to_string(Pinning pinning) {
  switch (pinning) {
    case Pinning::Zero: return "zero";
    case Pinning::Pi: return "pi";
    case Pinning::Unpinned: return "unpinned";
  }
  return "unpinned";
}

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Both: return "both";
  }
  return "both";
}

}  // namespace fibwalk
