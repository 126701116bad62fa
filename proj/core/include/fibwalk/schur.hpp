#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "fibwalk/sequence.hpp"

namespace fibwalk {

/// Inputs of the backward Schur recursion
///   f_n(z) = (gamma_n + z^s f_{n+1}) / (1 + gamma_n z^s f_{n+1}),  f_cutoff = 0,
/// and of the contour used to count the winding of f_0.
struct SchurParams {
  std::vector<double> gammas;   // boundary site first
  std::size_t cutoff = 0;       // 0 means gammas.size()
  int steps_per_site = 2;       // s
  std::size_t samples = 2048;   // initial contour points M
  double min_modulus = 1e-8;    // epsilon_f
  int max_refine_depth = 20;
  // Contour |z| = r. Values below 1 count only zeros of f_0 inside radius r and
  // skip the near-circle zero/pole pairs that no finite sampling resolves.
  double contour_radius = 1.0;
  // Extra bisection when the phase increment of a segment differs from the
  // trapezoid estimate of the analytic phase rate by more than this (radians).
  // 0 keeps only the jump and small-modulus tests.
  double rate_tolerance = 0.03;

  std::size_t effective_cutoff() const { return cutoff == 0 ? gammas.size() : cutoff; }
  void validate() const;
};

/// Sweep-time contour resolution.
inline constexpr std::size_t kSweepContourSamples = 512;
inline constexpr std::size_t kDefaultSchurCutoff = 233;

SchurParams make_schur_params(const FibonacciWord& word, const CoinAngles& coins);

struct WindingResult {
  int winding = 0;
  double raw_phase_sum = 0.0;  // in turns, before rounding
  double min_abs_f = 0.0;
  int refine_depth_used = 0;
  bool ambiguous = false;
};

std::complex<double> schur_eval(const SchurParams& params, std::complex<double> z);

/// Winding of f_0 around the origin along |z| = 1.
WindingResult winding_number(const SchurParams& params);

struct ContourOptions {
  std::size_t samples = 2048;
  double min_modulus = 1e-8;
  int max_refine_depth = 20;
  double rate_tolerance = 0.03;
};

/// A contour value and, when known, d arg f / d phi there (NaN otherwise).
struct ContourSample {
  std::complex<double> value;
  double phase_rate = 0.0;
};

/// Phase-unwrapping winding counter for any function of the contour angle phi.
/// Intervals whose phase increment exceeds pi/2, touch |f| < min_modulus, or
/// disagree with the phase rate are bisected up to max_refine_depth times.
WindingResult contour_winding(const std::function<ContourSample(double)>& f,
                              const ContourOptions& options);
WindingResult contour_winding(const std::function<std::complex<double>(double)>& f,
                              const ContourOptions& options);

/// Argument-principle count for short sequences: zeros minus poles of f_0
/// inside the unit disk, from the explicit rational form of f_0. Requires
/// length <= 16 and |gamma| < 1.
int winding_oracle(const std::vector<double>& gammas, int steps_per_site);

/// Numerator and denominator coefficients (ascending powers of z) of f_0.
std::pair<std::vector<double>, std::vector<double>> schur_rational(const std::vector<double>& gammas,
                                                                   int steps_per_site);

/// (f_0(+1), f_0(-1)).
std::pair<std::complex<double>, std::complex<double>> symmetry_point_values(
    const SchurParams& params);

struct TracePoint {
  double phi = 0.0;
  std::complex<double> f;
};

/// f_0 sampled at z = r exp(i phi_k), phi_k = 2 pi k / M, k = 0..M-1.
std::vector<TracePoint> schur_trace(const SchurParams& params);

}  // namespace fibwalk
