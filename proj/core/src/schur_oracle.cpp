// Argument-principle cross-check for the contour winding counter.

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>

#include "fibwalk/error.hpp"
#include "fibwalk/schur.hpp"

namespace fibwalk {
namespace {

constexpr std::size_t kMaxOracleLength = 16;
constexpr double kCircleGuard = 1e-6;

// Roots of a polynomial with ascending coefficients that lie strictly inside
// the unit disk. Exact zero low-order coefficients are roots at the origin.
int roots_inside_disk(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw IndeterminateError("Schur function vanishes identically");
  int at_origin = 0;
  std::size_t lead = 0;
  while (coeffs[lead] == 0.0) {
    ++at_origin;
    ++lead;
  }
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  const auto degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (degree <= 0) return at_origin;

  // Companion matrix of the monic polynomial.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  const double top = coeffs.back();
  for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -coeffs[static_cast<std::size_t>(i)] / top;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw IndeterminateError("polynomial root solver failed");
  int inside = at_origin;
  for (const auto& root : solver.eigenvalues()) {
    const double r = std::abs(root);
    if (std::abs(r - 1.0) < kCircleGuard) {
      throw IndeterminateError(fmt::format("root at |z| = {:.12f} is too close to the unit circle", r));
    }
    if (r < 1.0) ++inside;
  }
  return inside;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> schur_rational(const std::vector<double>& gammas,
                                                                   int steps_per_site) {
  if (steps_per_site != 1 && steps_per_site != 2) {
    throw ValidationError(fmt::format("steps_per_site must be 1 or 2, got {}", steps_per_site));
  }
  const auto s = static_cast<std::size_t>(steps_per_site);
  // f_N = P/Q = 0/1; f_n = (g Q + z^s P) / (Q + g z^s P)
  std::vector<double> num{0.0};
  std::vector<double> den{1.0};
  for (std::size_t n = gammas.size(); n-- > 0;) {
    const double g = gammas[n];
    const std::size_t size = std::max(den.size(), num.size() + s);
    std::vector<double> next_num(size, 0.0);
    std::vector<double> next_den(size, 0.0);
    for (std::size_t i = 0; i < den.size(); ++i) {
      next_num[i] += g * den[i];
      next_den[i] += den[i];
    }
    for (std::size_t i = 0; i < num.size(); ++i) {
      next_num[i + s] += num[i];
      next_den[i + s] += g * num[i];
    }
    num = std::move(next_num);
    den = std::move(next_den);
  }
  return {num, den};
}

int winding_oracle(const std::vector<double>& gammas, int steps_per_site) {
  if (gammas.empty() || gammas.size() > kMaxOracleLength) {
    throw BoundsError(fmt::format("oracle sequence length {} outside [1, {}]", gammas.size(),
                                  kMaxOracleLength));
  }
  for (double g : gammas) {
    if (!(std::abs(g) < 1.0)) throw ValidationError("oracle requires |gamma| < 1");
  }
  const auto [num, den] = schur_rational(gammas, steps_per_site);
  return roots_inside_disk(num) - roots_inside_disk(den);
}

}  // namespace fibwalk
