#include "fibwalk/sweep.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <thread>

#include "fibwalk/error.hpp"
#include "parallel.hpp"

namespace fibwalk {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SchurParams schur_params_for(const FibonacciWord& word, const CoinAngles& coins,
                             const SchurSweepOptions& options) {
  SchurParams params = make_schur_params(word, coins);
  params.steps_per_site = options.steps_per_site;
  params.samples = options.samples;
  params.min_modulus = options.min_modulus;
  params.max_refine_depth = options.max_refine_depth;
  params.contour_radius = options.contour_radius;
  params.rate_tolerance = options.rate_tolerance;
  return params;
}

FibonacciWord boundary_word(const Termination& termination, std::size_t cutoff) {
  return apply_termination(standard_word(cutoff), termination);
}

Cell winding_cell(const FibonacciWord& word, const CoinAngles& coins,
                  const SchurSweepOptions& options) {
  Cell cell{coins.theta_a, coins.theta_b, kNaN, CellStatus::Error, {}};
  try {
    const WindingResult r = winding_number(schur_params_for(word, coins, options));
    cell.value = r.winding;
    cell.status = r.ambiguous ? CellStatus::Ambiguous : CellStatus::Ok;
  } catch (const Error& e) {
    cell.message = e.what();
  }
  return cell;
}

}  // namespace

void GridSpec::validate() const {
  if (resolution < 2) throw ValidationError(fmt::format("grid resolution must be >= 2, got {}", resolution));
  for (double v : {theta_a.lo, theta_a.hi, theta_b.lo, theta_b.hi}) {
    if (!std::isfinite(v)) throw ValidationError("grid ranges must be finite");
  }
}

double GridSpec::theta_a_at(std::size_t i) const {
  const double step = (theta_a.hi - theta_a.lo) / static_cast<double>(resolution);
  return theta_a.lo + (static_cast<double>(i) + 0.5) * step;
}

double GridSpec::theta_b_at(std::size_t j) const {
  const double step = (theta_b.hi - theta_b.lo) / static_cast<double>(resolution);
  return theta_b.lo + (static_cast<double>(j) + 0.5) * step;
}

CoinAngles GridSpec::cell_angles(std::size_t index) const {
  return CoinAngles{theta_a_at(index / resolution), theta_b_at(index % resolution)};
}

std::string PhaseDiagram::termination_column() const {
  if (kind == DiagramKind::McdAverage) return "none";
  std::string out;
  for (std::size_t i = 0; i < terminations.size(); ++i) {
    if (i > 0) out += '+';
    out += termination_label(terminations[i]);
  }
  return out;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Cell> evaluate_cells(std::size_t count, std::size_t workers,
                                 const std::function<Cell(std::size_t)>& fn) {
  return detail::parallel_index_map<Cell>(count, resolve_workers(workers), fn);
}

PhaseDiagram sweep_mcd(const GridSpec& grid, const McdSweepOptions& options) {
  grid.validate();
  if (2 * options.steps >= options.n_sites) {
    throw BoundaryContaminationError(fmt::format(
        "time window T={} must satisfy T < N/2 (N={})", options.steps, options.n_sites));
  }
  const FibonacciWord word = standard_word(options.n_sites);
  PhaseDiagram diagram;
  diagram.grid = grid;
  diagram.kind = DiagramKind::McdAverage;
  diagram.options = options;
  diagram.cells = evaluate_cells(grid.cell_count(), options.workers, [&](std::size_t index) {
    const CoinAngles coins = grid.cell_angles(index);
    Cell cell{coins.theta_a, coins.theta_b, kNaN, CellStatus::Error, {}};
    try {
      WalkConfig config;
      config.word = word;
      config.coins = coins;
      const McdAverage avg =
          mcd_time_average(config, options.steps, options.policy, options.averaging);
      cell.value = avg.value;
      cell.status = std::isfinite(avg.value) ? CellStatus::Ok : CellStatus::Error;
    } catch (const Error& e) {
      cell.message = e.what();
    }
    return cell;
  });
  return diagram;
}

WindingResult winding_at(const CoinAngles& coins, const Termination& termination,
                         const SchurSweepOptions& options) {
  return winding_number(schur_params_for(boundary_word(termination, options.cutoff), coins, options));
}

PhaseDiagram sweep_winding(const GridSpec& grid, const Termination& termination,
                           const SchurSweepOptions& options) {
  grid.validate();
  const FibonacciWord word = boundary_word(termination, options.cutoff);
  PhaseDiagram diagram;
  diagram.grid = grid;
  diagram.kind = DiagramKind::Winding;
  diagram.terminations = {termination};
  diagram.options = options;
  diagram.cells = evaluate_cells(grid.cell_count(), options.workers, [&](std::size_t index) {
    return winding_cell(word, grid.cell_angles(index), options);
  });
  return diagram;
}

PhaseDiagram sweep_winding_average(const GridSpec& grid, const std::vector<Termination>& ensemble,
                                   const SchurSweepOptions& options) {
  grid.validate();
  if (ensemble.empty()) throw ValidationError("termination ensemble must not be empty");
  std::vector<FibonacciWord> words;
  words.reserve(ensemble.size());
  for (const auto& term : ensemble) words.push_back(boundary_word(term, options.cutoff));

  PhaseDiagram diagram;
  diagram.grid = grid;
  diagram.kind = DiagramKind::WindingAverage;
  diagram.terminations = ensemble;
  diagram.options = options;
  diagram.cells = evaluate_cells(grid.cell_count(), options.workers, [&](std::size_t index) {
    const CoinAngles coins = grid.cell_angles(index);
    Cell cell{coins.theta_a, coins.theta_b, kNaN, CellStatus::Ok, {}};
    double sum = 0.0;
    std::size_t ok = 0;
    for (std::size_t m = 0; m < words.size(); ++m) {
      const Cell member = winding_cell(words[m], coins, options);
      if (member.status == CellStatus::Ok) {
        sum += member.value;
        ++ok;
      } else {
        cell.status = CellStatus::Ambiguous;
        if (cell.message.empty() && !member.message.empty()) {
          cell.message = termination_label(ensemble[m]) + ": " + member.message;
        }
      }
    }
    if (ok > 0) cell.value = sum / static_cast<double>(ok);
    return cell;
  });
  return diagram;
}

std::vector<SpectrumRow> scan_spectrum(const std::vector<double>& theta_a_values, double theta_b,
                                       const SpectrumScanOptions& options) {
  const auto slices = detail::parallel_index_map<std::vector<SpectrumRow>>(
      theta_a_values.size(), resolve_workers(options.workers), [&](std::size_t i) {
        const CoinAngles coins{theta_a_values[i], theta_b};
        WalkConfig config = make_walk_config(options.n_sites, coins, options.termination);
        config.boundary_phase_left = options.boundary_phase_left;
        config.boundary_phase_right = options.boundary_phase_right;
        config.timeframe = options.timeframe;
        const QuasienergySpectrum spec = quasienergies(config);
        const auto gaps = find_gaps(spec, options.gaps);
        const auto modes = classify_edge_modes(spec, gaps, options.edges);
        std::vector<SpectrumRow> rows(spec.size());
        for (std::size_t k = 0; k < spec.size(); ++k) {
          rows[k] = SpectrumRow{coins.theta_a, coins.theta_b, spec.energies[k],
                                spec.boundary_weights[k], "bulk"};
        }
        for (const EdgeMode& mode : modes) {
          rows[mode.state_index].pinning = std::string(to_string(mode.pinning));
          rows[mode.state_index].boundary_weight = mode.boundary_weight;
        }
        return rows;
      });
  std::vector<SpectrumRow> out;
  for (const auto& slice : slices) out.insert(out.end(), slice.begin(), slice.end());
  return out;
}

std::string_view to_string(CellStatus status) {
  switch (status) {
    case CellStatus::Ok: return "ok";
    case CellStatus::Ambiguous: return "ambiguous";
    case CellStatus::Error: return "error";
  }
  return "error";
}

std::string_view to_string(DiagramKind kind) {
  switch (kind) {
    case DiagramKind::McdAverage: return "mcd_average";
    case DiagramKind::Winding: return "winding";
    case DiagramKind::WindingAverage: return "winding_average";
  }
  return "winding";
}

}  // namespace fibwalk
