// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "fibwalk/fibwalk.hpp"
#include "oracles.hpp"

using namespace fibwalk;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 = no runtime bound
  std::function<Verdict()> check;
};

Verdict unitarity_and_spectra() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> sites(8, 89);
  double unitarity = 0.0, residual = 0.0, negation = 0.0;
  for (int i = 0; i < 50; ++i) {
    const WalkConfig config = test::random_config(rng, sites(rng), true);
    unitarity = std::max(unitarity, unitarity_defect(build_unitary(config)));
    const QuasienergySpectrum spec = quasienergies(config);
    residual = std::max(residual, spec.max_residual());
    std::vector<double> mirrored;
    for (double e : spec.energies) mirrored.push_back(-e);
    negation = std::max(negation, test::circular_multiset_distance(spec.energies, mirrored));
  }
  return {unitarity < 1e-10 && residual < 1e-8 && negation < 1e-8,
          fmt::format("max|U^dag U - I|={:.2e} max residual={:.2e} negation gap={:.2e}", unitarity,
                      residual, negation)};
}

Verdict edge_modes() {
  const QuasienergySpectrum spec = quasienergies(make_walk_config(233, CoinAngles{kPi / 2, 0.0}));
  double best_zero = 0.0, best_pi = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double e = spec.energies[k];
    const double w = spec.boundary_weights[k];
    if (std::abs(e) < 0.05) best_zero = std::max(best_zero, w);
    if (std::abs(kPi - std::abs(e)) < 0.05) best_pi = std::max(best_pi, w);
  }
  return {best_zero >= 0.6 && best_pi >= 0.6,
          fmt::format("max boundary weight near 0: {:.4f}, near pi: {:.4f}", best_zero, best_pi)};
}

Verdict winding_quartet() {
  SchurSweepOptions opts;
  opts.samples = 2048;
  const CoinAngles point{kPi / 2, 0.0};
  const char* labels[] = {"ABA", "AAB", "BAA", "BAB"};
  const int expected[] = {2, 4, 0, 0};
  bool ok = true;
  int sum = 0;
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    const WindingResult r = winding_at(point, parse_termination(labels[i]), opts);
    ok = ok && !r.ambiguous && r.winding == expected[i];
    sum += r.winding;
    detail += fmt::format("{}={} ", labels[i], r.winding);
  }
  const double mean = sweep_winding_average(GridSpec{{kPi / 2 - 0.03, kPi / 2 + 0.03}, {-0.03, 0.03}, 3},
                                            default_ensemble(), opts)
                          .cells[4]
                          .value;
  opts.steps_per_site = 1;
  const WindingResult literal = winding_at(point, StandardTermination{}, opts);
  ok = ok && sum == 6 && mean == 1.5 && literal.winding == 1 && !literal.ambiguous;
  return {ok, detail + fmt::format("<W>={} s=1 standard W={}", mean, literal.winding)};
}

Verdict masking() {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> length(0, 232);
  std::uniform_real_distribution<double> gamma(-1.0, 1.0);
  double worst = 0.0;
  int nonzero = 0;
  for (int i = 0; i < 100; ++i) {
    SchurParams p;
    p.gammas = {1.0};
    for (std::size_t k = length(rng); k > 0; --k) p.gammas.push_back(gamma(rng));
    p.steps_per_site = 1 + i % 2;
    p.samples = 64;
    for (const auto& pt : schur_trace(p)) worst = std::max(worst, std::abs(pt.f - 1.0));
    const WindingResult r = winding_number(p);
    nonzero += r.winding != 0 || r.ambiguous;
  }
  return {worst < 1e-12 && nonzero == 0,
          fmt::format("max|f-1|={:.2e} non-zero windings={}", worst, nonzero)};
}

Verdict oracle_equivalence() {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<std::size_t> length(1, 12);
  std::uniform_real_distribution<double> gamma(-0.95, 0.95);
  int compared = 0, mismatched = 0, skipped = 0;
  for (int i = 0; i < 200; ++i) {
    SchurParams p;
    for (std::size_t k = length(rng); k > 0; --k) p.gammas.push_back(gamma(rng));
    p.steps_per_site = 1 + i % 2;
    int oracle = 0;
    try {
      oracle = winding_oracle(p.gammas, p.steps_per_site);
    } catch (const IndeterminateError&) {
      ++skipped;
      continue;
    }
    ++compared;
    mismatched += winding_number(p).winding != oracle;
  }
  return {mismatched == 0 && compared > 0,
          fmt::format("compared={} mismatched={} indeterminate={}", compared, mismatched, skipped)};
}

Verdict mcd_plateau() {
  const WalkConfig config = make_walk_config(987, CoinAngles{kPi / 2, 0.0});
  const double t400 = mcd_time_average(config, 400).value;
  const double t200 = mcd_time_average(config, 200).value;
  return {t400 >= -1.2 && t400 <= -0.8 && std::abs(t400 - t200) < 0.1,
          fmt::format("T=400: {:.6f}  T=200: {:.6f}", t400, t200)};
}

Verdict ballistic() {
  const double v = mcd_time_average(make_walk_config(64, CoinAngles{0.0, 0.0}), 20).value;
  return {std::abs(v + 21.0) < 1e-12, fmt::format("mcd_avg={} expected -21", format_real(v))};
}

Verdict butterfly() {
  const GridSpec grid{{-kPi, kPi}, {-kPi, kPi}, 21};
  McdSweepOptions mcd;
  mcd.n_sites = 377;
  mcd.steps = 150;
  const PhaseDiagram c = sweep_mcd(grid, mcd);
  const PhaseDiagram w = sweep_winding_average(grid);
  int plateau = 0, agree = 0;
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    if (c.cells[i].status != CellStatus::Ok || std::abs(c.cells[i].value + 1.0) >= 0.2) continue;
    ++plateau;
    agree += w.cells[i].status == CellStatus::Ok && w.cells[i].value >= 1.0;
  }
  const double fraction = plateau > 0 ? static_cast<double>(agree) / plateau : 0.0;
  return {plateau > 0 && fraction >= 0.8,
          fmt::format("{}/{} MCD-plateau cells have Ok <W> >= 1 ({:.1f}%)", agree, plateau,
                      100.0 * fraction)};
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path() /
                   fmt::format("fibwalk_acceptance_{}", ::getpid());
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs;
  int failures = 0;
  for (const char* workers : {"1", "1", "8", "8"}) {
    const auto path = dir / fmt::format("map{}.csv", outputs.size());
    std::ostringstream out, err;
    failures += cli::run({"winding-map", "--resolution", "11", "--workers", workers, "--output",
                          path.string()},
                         out, err) != 0;
    std::ifstream in(path, std::ios::binary);
    outputs.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::filesystem::remove_all(dir);
  const bool same = std::all_of(outputs.begin(), outputs.end(),
                                [&](const std::string& s) { return s == outputs.front(); });
  return {failures == 0 && same && !outputs.front().empty(),
          fmt::format("4 runs (1,1,8,8 workers), {} bytes each, identical={}",
                      outputs.front().size(), same)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "unitarity and spectral sanity", 30, unitarity_and_spectra},
      {2, "0 and pi edge modes coexist at N=233", 10, edge_modes},
      {3, "winding quartet 2/4/0/0, mean 1.5, literal s=1 gives 1", 1, winding_quartet},
      {4, "masking pins f at 1", 0, masking},
      {5, "phase unwrapping equals the root-count oracle", 0, oracle_equivalence},
      {6, "MCD plateau near -1 at N=987", 60, mcd_plateau},
      {7, "ballistic MCD equals -(T+1)", 0, ballistic},
      {8, "MCD plateau cells carry <W> >= 1", 900, butterfly},
      {9, "winding-map CSV independent of worker count", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, fmt::format("threw: {}", e.what())};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds == 0 || seconds < c.budget_seconds;
    const bool pass = v.pass && in_time;
    failed += !pass;
    std::cout << fmt::format("{} [{}] {} ({:.2f}s{}) {}\n", pass ? "PASS" : "FAIL", c.id, c.name,
                             seconds,
                             c.budget_seconds > 0 ? fmt::format(", budget {:.0f}s", c.budget_seconds)
                                                  : "",
                             v.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
