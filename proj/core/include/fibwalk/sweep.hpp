#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fibwalk/dynamics.hpp"
#include "fibwalk/schur.hpp"
#include "fibwalk/spectrum.hpp"

namespace fibwalk {

struct AngleRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Cell-centered grid over the (theta_a, theta_b) plane. Cell index is
/// row-major with theta_b varying fastest.
struct GridSpec {
  AngleRange theta_a{-3.14159265358979323846, 3.14159265358979323846};
  AngleRange theta_b{-3.14159265358979323846, 3.14159265358979323846};
  std::size_t resolution = 21;

  void validate() const;
  std::size_t cell_count() const { return resolution * resolution; }
  double theta_a_at(std::size_t i) const;
  double theta_b_at(std::size_t j) const;
  CoinAngles cell_angles(std::size_t index) const;
};

enum class CellStatus { Ok, Ambiguous, Error };
enum class DiagramKind { McdAverage, Winding, WindingAverage };

struct Cell {
  double theta_a = 0.0;
  double theta_b = 0.0;
  double value = 0.0;
  CellStatus status = CellStatus::Ok;
  std::string message;  // failure reason for Error cells
};

struct McdSweepOptions {
  std::size_t n_sites = 987;
  std::size_t steps = 400;
  CoinPolicy policy;
  Averaging averaging = Averaging::Arithmetic;
  double presentation_clamp = -12.0;  // metadata only; values are stored raw
  std::size_t workers = 0;            // 0 = hardware concurrency
};

struct SchurSweepOptions {
  std::size_t cutoff = kDefaultSchurCutoff;
  int steps_per_site = 2;
  std::size_t samples = kSweepContourSamples;
  double min_modulus = 1e-8;
  int max_refine_depth = 20;
  double contour_radius = 1.0;
  double rate_tolerance = 0.03;
  std::size_t workers = 0;
};

struct PhaseDiagram {
  GridSpec grid;
  DiagramKind kind = DiagramKind::McdAverage;
  std::vector<Termination> terminations;  // one for Winding, the ensemble for WindingAverage
  std::vector<Cell> cells;
  std::variant<McdSweepOptions, SchurSweepOptions> options;

  std::string termination_column() const;
};

/// Evaluates fn(index) for index in [0, count) on `workers` threads and returns
/// the results in index order. Exceptions escaping fn are rethrown.
std::vector<Cell> evaluate_cells(std::size_t count, std::size_t workers,
                                 const std::function<Cell(std::size_t)>& fn);

std::size_t resolve_workers(std::size_t requested);

PhaseDiagram sweep_mcd(const GridSpec& grid, const McdSweepOptions& options = {});

PhaseDiagram sweep_winding(const GridSpec& grid, const Termination& termination,
                           const SchurSweepOptions& options = {});

PhaseDiagram sweep_winding_average(const GridSpec& grid,
                                   const std::vector<Termination>& ensemble = default_ensemble(),
                                   const SchurSweepOptions& options = {});

/// Winding of the boundary Schur function for one parameter point.
WindingResult winding_at(const CoinAngles& coins, const Termination& termination,
                         const SchurSweepOptions& options);

/// Per-eigenstate spectrum data for a line of theta_a values at fixed theta_b.
struct SpectrumRow {
  double theta_a = 0.0;
  double theta_b = 0.0;
  double energy = 0.0;
  double boundary_weight = 0.0;
  std::string pinning;  // zero, pi, unpinned, or bulk
};

struct SpectrumScanOptions {
  std::size_t n_sites = 233;
  Termination termination = StandardTermination{};
  Complex boundary_phase_left{1.0, 0.0};
  Complex boundary_phase_right{1.0, 0.0};
  Timeframe timeframe = Timeframe::Plain;
  GapOptions gaps;
  EdgeOptions edges;
  std::size_t workers = 0;
};

std::vector<SpectrumRow> scan_spectrum(const std::vector<double>& theta_a_values, double theta_b,
                                       const SpectrumScanOptions& options);

std::string_view to_string(CellStatus status);
std::string_view to_string(DiagramKind kind);

}  // namespace fibwalk
