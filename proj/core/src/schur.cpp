#include "fibwalk/schur.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fibwalk/error.hpp"

namespace fibwalk {
namespace {

using cplx = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPoleThreshold = 1e-14;

[[noreturn]] void throw_pole(std::size_t n, cplx z) {
  throw PoleOnContourError(fmt::format("Schur recursion pole at site {} (z = {:.17g}{:+.17g}i)", n,
                                       z.real(), z.imag()));
}

cplx eval_unchecked(const std::vector<double>& gammas, std::size_t cutoff, int s, cplx z) {
  const cplx zs = (s == 2) ? z * z : z;
  cplx f{0.0, 0.0};
  for (std::size_t n = cutoff; n-- > 0;) {
    const double g = gammas[n];
    // |gamma| = 1 makes the Mobius map constant; skip the removable 0/0.
    if (g == 1.0 || g == -1.0) {
      f = g;
      continue;
    }
    const cplx w = zs * f;
    const cplx den = 1.0 + g * w;
    if (std::abs(den) < kPoleThreshold) throw_pole(n, z);
    f = (g + w) / den;
  }
  return f;
}

// f_0 together with d arg f_0 / d phi = Re(z f_0' / f_0) along z = r exp(i phi).
ContourSample eval_with_rate(const std::vector<double>& gammas, std::size_t cutoff, int s, cplx z) {
  const cplx zs = (s == 2) ? z * z : z;
  const cplx dzs = (s == 2) ? 2.0 * z : cplx{1.0, 0.0};
  cplx f{0.0, 0.0};
  cplx df{0.0, 0.0};
  for (std::size_t n = cutoff; n-- > 0;) {
    const double g = gammas[n];
    if (g == 1.0 || g == -1.0) {
      f = g;
      df = 0.0;
      continue;
    }
    const cplx w = zs * f;
    const cplx dw = dzs * f + zs * df;
    const cplx den = 1.0 + g * w;
    if (std::abs(den) < kPoleThreshold) throw_pole(n, z);
    f = (g + w) / den;
    df = (1.0 - g * g) / (den * den) * dw;
  }
  return {f, std::real(z * df / f)};
}

struct ContourWalk {
  const std::function<ContourSample(double)>& f;
  const ContourOptions& options;
  double min_abs = std::numeric_limits<double>::infinity();
  int depth_used = 0;
  bool exhausted = false;

  ContourSample sample(double phi) {
    const ContourSample v = f(phi);
    min_abs = std::min(min_abs, std::abs(v.value));
    return v;
  }

  bool needs_refinement(const ContourSample& fa, const ContourSample& fb, double width,
                        double increment) const {
    if (std::abs(increment) > 0.5 * std::numbers::pi || std::abs(fa.value) < options.min_modulus ||
        std::abs(fb.value) < options.min_modulus) {
      return true;
    }
    // A zero hugging the contour turns the phase by ~2 pi between two samples
    // without a visible jump; the endpoint rates still disagree with the chord.
    if (options.rate_tolerance > 0.0 && std::isfinite(fa.phase_rate) &&
        std::isfinite(fb.phase_rate)) {
      const double trapezoid = 0.5 * (fa.phase_rate + fb.phase_rate) * width;
      return std::abs(increment - trapezoid) > options.rate_tolerance;
    }
    return false;
  }

  // Phase increment of f from a to b, refined by bisection.
  double segment(double a, double b, const ContourSample& fa, const ContourSample& fb, int depth) {
    const double increment = std::arg(fb.value * std::conj(fa.value));
    if (!needs_refinement(fa, fb, b - a, increment)) return increment;
    if (depth >= options.max_refine_depth) {
      exhausted = true;
      return increment;
    }
    depth_used = std::max(depth_used, depth + 1);
    const double mid = 0.5 * (a + b);
    const ContourSample fm = sample(mid);
    return segment(a, mid, fa, fm, depth + 1) + segment(mid, b, fm, fb, depth + 1);
  }
};

}  // namespace

void SchurParams::validate() const {
  if (gammas.empty()) throw BoundsError("Schur recursion needs at least one reflection amplitude");
  if (cutoff > gammas.size()) {
    throw BoundsError(fmt::format("Schur cutoff {} exceeds sequence length {}", cutoff, gammas.size()));
  }
  if (steps_per_site != 1 && steps_per_site != 2) {
    throw ValidationError(fmt::format("steps_per_site must be 1 or 2, got {}", steps_per_site));
  }
  if (samples < 16) throw ValidationError(fmt::format("contour needs >= 16 samples, got {}", samples));
  if (!(min_modulus > 0.0)) throw ValidationError("min_modulus must be positive");
  if (max_refine_depth < 0) throw ValidationError("max_refine_depth must be non-negative");
  if (!(rate_tolerance >= 0.0)) throw ValidationError("rate_tolerance must be non-negative");
  if (!(contour_radius > 0.0 && contour_radius <= 1.0)) {
    throw ValidationError(fmt::format("contour radius {} outside (0, 1]", contour_radius));
  }
  for (double g : gammas) {
    if (!(std::abs(g) <= 1.0 + 1e-12)) {
      throw ValidationError(fmt::format("reflection amplitude {} outside [-1, 1]", g));
    }
  }
}

SchurParams make_schur_params(const FibonacciWord& word, const CoinAngles& coins) {
  SchurParams params;
  params.gammas = reflection_amplitudes(angles_for(word, coins));
  return params;
}

cplx schur_eval(const SchurParams& params, cplx z) {
  params.validate();
  if (std::abs(z) > 1.0 + 1e-12) {
    throw ValidationError(fmt::format("Schur argument |z| = {} outside the closed unit disk", std::abs(z)));
  }
  return eval_unchecked(params.gammas, params.effective_cutoff(), params.steps_per_site, z);
}

WindingResult contour_winding(const std::function<ContourSample(double)>& f,
                              const ContourOptions& options) {
  if (options.samples < 2) throw ValidationError("contour needs at least two samples");
  ContourWalk walk{f, options};
  const std::size_t m = options.samples;
  std::vector<ContourSample> values(m);
  double max_abs = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    values[k] = walk.sample(kTwoPi * static_cast<double>(k) / static_cast<double>(m));
    max_abs = std::max(max_abs, std::abs(values[k].value));
  }
  if (max_abs < options.min_modulus) {
    throw NoReflectionError(fmt::format(
        "Schur function vanishes on the contour (max |f| = {:.3g}); winding undefined", max_abs));
  }
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
    const double b = kTwoPi * static_cast<double>(k + 1) / static_cast<double>(m);
    total += walk.segment(a, b, values[k], values[(k + 1) % m], 0);
  }
  WindingResult result;
  result.raw_phase_sum = total / kTwoPi;
  result.winding = static_cast<int>(std::lround(result.raw_phase_sum));
  result.min_abs_f = walk.min_abs;
  result.refine_depth_used = walk.depth_used;
  result.ambiguous = std::abs(result.raw_phase_sum - result.winding) > 0.01 || walk.exhausted ||
                     walk.min_abs < options.min_modulus;
  return result;
}

WindingResult contour_winding(const std::function<cplx(double)>& f, const ContourOptions& options) {
  const std::function<ContourSample(double)> sampled = [&](double phi) {
    return ContourSample{f(phi), std::numeric_limits<double>::quiet_NaN()};
  };
  return contour_winding(sampled, options);
}

WindingResult winding_number(const SchurParams& params) {
  params.validate();
  const std::size_t cutoff = params.effective_cutoff();
  const int s = params.steps_per_site;
  const std::function<ContourSample(double)> f = [&](double phi) {
    return eval_with_rate(params.gammas, cutoff, s, std::polar(params.contour_radius, phi));
  };
  return contour_winding(f, ContourOptions{params.samples, params.min_modulus,
                                           params.max_refine_depth, params.rate_tolerance});
}

std::pair<cplx, cplx> symmetry_point_values(const SchurParams& params) {
  return {schur_eval(params, cplx{1.0, 0.0}), schur_eval(params, cplx{-1.0, 0.0})};
}

std::vector<TracePoint> schur_trace(const SchurParams& params) {
  params.validate();
  const std::size_t cutoff = params.effective_cutoff();
  std::vector<TracePoint> trace(params.samples);
  for (std::size_t k = 0; k < params.samples; ++k) {
    const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(params.samples);
    trace[k] = TracePoint{phi, eval_unchecked(params.gammas, cutoff, params.steps_per_site,
                                              std::polar(params.contour_radius, phi))};
  }
  return trace;
}

}  // namespace fibwalk
