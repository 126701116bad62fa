#include "fibwalk/sequence.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <numbers>

#include "fibwalk/error.hpp"

namespace fibwalk {

FibonacciWord FibonacciWord::from_string(std::string_view text, WordOrigin origin) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c == 'A') {
      letters.push_back(Letter::A);
    } else if (c == 'B') {
      letters.push_back(Letter::B);
    } else {
      throw ValidationError(fmt::format("invalid letter '{}' in word \"{}\"", c, text));
    }
  }
  return FibonacciWord(std::move(letters), std::move(origin));
}

std::size_t FibonacciWord::count(Letter letter) const {
  std::size_t n = 0;
  for (Letter l : letters_) n += (l == letter);
  return n;
}

std::string FibonacciWord::str() const {
  std::string out(letters_.size(), 'A');
  for (std::size_t i = 0; i < letters_.size(); ++i) out[i] = static_cast<char>(letters_[i]);
  return out;
}

std::uint64_t fibonacci_number(int n) {
  if (n < 1 || n > 90) throw BoundsError(fmt::format("Fibonacci index {} out of range [1, 90]", n));
  std::uint64_t prev = 1;  // F_0 in this indexing
  std::uint64_t cur = 1;   // F_1
  for (int i = 1; i < n; ++i) {
    std::uint64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

FibonacciWord generate_word(int order) {
  if (order < 1 || order > kMaxSubstitutionOrder) {
    throw BoundsError(fmt::format("substitution order {} out of range [1, {}]", order,
                                  kMaxSubstitutionOrder));
  }
  // w_1 = A, w_2 = AB, w_n = w_{n-1} w_{n-2}
  std::vector<Letter> older{Letter::A};
  if (order == 1) return FibonacciWord(std::move(older), SubstitutionOrigin{1});
  std::vector<Letter> newer{Letter::A, Letter::B};
  for (int n = 3; n <= order; ++n) {
    std::vector<Letter> next;
    next.reserve(newer.size() + older.size());
    next.insert(next.end(), newer.begin(), newer.end());
    next.insert(next.end(), older.begin(), older.end());
    older = std::move(newer);
    newer = std::move(next);
  }
  return FibonacciWord(std::move(newer), SubstitutionOrigin{order});
}

FibonacciWord cut_project_word(std::size_t length, double phason) {
  if (length < 1) throw BoundsError("cut-and-project word length must be >= 1");
  if (!std::isfinite(phason)) throw ValidationError("phason must be finite");
  const double phi = phason - std::floor(phason);
  std::vector<Letter> letters(length);
  for (std::size_t n = 0; n < length; ++n) {
    const double hi = std::floor(static_cast<double>(n + 2) * kInverseGoldenRatio + phi);
    const double lo = std::floor(static_cast<double>(n + 1) * kInverseGoldenRatio + phi);
    letters[n] = (hi - lo == 1.0) ? Letter::A : Letter::B;
  }
  return FibonacciWord(std::move(letters), CutProjectOrigin{phi});
}

FibonacciWord standard_word(std::size_t length) {
  if (length < 1) throw BoundsError("word length must be >= 1");
  for (int n = 1; n <= kMaxSubstitutionOrder; ++n) {
    const auto f = fibonacci_number(n);
    if (f == length) return generate_word(n);
    if (f > length) break;
  }
  return cut_project_word(length, 0.0);
}

FibonacciWord apply_termination(const FibonacciWord& word, const Termination& term) {
  if (std::holds_alternative<StandardTermination>(term)) return word;
  if (const auto* phason = std::get_if<PhasonTermination>(&term)) {
    return cut_project_word(word.size(), phason->phason);
  }
  const auto& prefix = std::get<PrefixOverride>(term).letters;
  if (prefix.empty() || prefix.size() > 3) {
    throw BoundsError(fmt::format("prefix override \"{}\" must have 1-3 letters", prefix));
  }
  if (prefix.size() > word.size()) {
    throw BoundsError(fmt::format("prefix override \"{}\" is longer than the word ({} letters)",
                                  prefix, word.size()));
  }
  const auto head = FibonacciWord::from_string(prefix);
  std::vector<Letter> letters(word.letters().begin(), word.letters().end());
  for (std::size_t i = 0; i < head.size(); ++i) letters[i] = head[i];
  return FibonacciWord(std::move(letters), OverrideOrigin{prefix});
}

std::vector<double> angles_for(const FibonacciWord& word, const CoinAngles& coins) {
  std::vector<double> angles(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    angles[i] = word[i] == Letter::A ? coins.theta_a : coins.theta_b;
  }
  return angles;
}

std::vector<double> reflection_amplitudes(std::span<const double> angles) {
  std::vector<double> gammas(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) gammas[i] = std::cos(angles[i]);
  return gammas;
}

double canonical_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(theta, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

Termination parse_termination(std::string_view text) {
  if (text == "standard" || text == "Standard") return StandardTermination{};
  constexpr std::string_view phason_tag = "phason:";
  if (text.starts_with(phason_tag)) {
    const std::string value(text.substr(phason_tag.size()));
    try {
      std::size_t used = 0;
      const double phi = std::stod(value, &used);
      if (used != value.size() || !std::isfinite(phi)) throw std::invalid_argument(value);
      return PhasonTermination{phi};
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("invalid phason value in termination \"{}\"", text));
    }
  }
  if (text.empty() || text.size() > 3) {
    throw ValidationError(fmt::format(
        "invalid termination \"{}\" (expected standard, a 1-3 letter A/B prefix, or phason:<x>)",
        text));
  }
  FibonacciWord::from_string(text);  // validates letters
  return PrefixOverride{std::string(text)};
}

std::string termination_label(const Termination& term) {
  if (std::holds_alternative<StandardTermination>(term)) return "standard";
  if (const auto* p = std::get_if<PhasonTermination>(&term)) return fmt::format("phason:{}", p->phason);
  return std::get<PrefixOverride>(term).letters;
}

std::vector<Termination> default_ensemble() {
  return {PrefixOverride{"ABA"}, PrefixOverride{"AAB"}, PrefixOverride{"BAA"},
          PrefixOverride{"BAB"}};
}

std::vector<Termination> phason_grid_ensemble(std::size_t count) {
  if (count < 1) throw BoundsError("phason grid needs at least one point");
  std::vector<Termination> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.emplace_back(PhasonTermination{static_cast<double>(k) / static_cast<double>(count)});
  }
  return out;
}

}  // namespace fibwalk
