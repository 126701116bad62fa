#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fibwalk {

enum class Letter : char { A = 'A', B = 'B' };

inline constexpr double kGoldenRatio = 1.6180339887498948482;
inline constexpr double kInverseGoldenRatio = 0.6180339887498948482;

/// Largest substitution order accepted by generate_word (F_30 = 1346269 letters).
inline constexpr int kMaxSubstitutionOrder = 30;

struct SubstitutionOrigin {
  int order = 1;
  bool operator==(const SubstitutionOrigin&) const = default;
};

struct CutProjectOrigin {
  double phason = 0.0;  // reduced to [0, 1)
  bool operator==(const CutProjectOrigin&) const = default;
};

struct OverrideOrigin {
  std::string prefix;
  bool operator==(const OverrideOrigin&) const = default;
};

using WordOrigin = std::variant<SubstitutionOrigin, CutProjectOrigin, OverrideOrigin>;

/// A finite A/B letter sequence together with how it was produced.
/// Site x = 0 is the left boundary.
class FibonacciWord {
 public:
  FibonacciWord() = default;
  FibonacciWord(std::vector<Letter> letters, WordOrigin origin)
      : letters_(std::move(letters)), origin_(std::move(origin)) {}

  /// Parses an 'A'/'B' string. Throws ValidationError on any other character.
  static FibonacciWord from_string(std::string_view text, WordOrigin origin = OverrideOrigin{});

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }
  const WordOrigin& origin() const { return origin_; }

  std::size_t count(Letter letter) const;
  std::string str() const;

  bool operator==(const FibonacciWord& other) const { return letters_ == other.letters_; }

 private:
  std::vector<Letter> letters_;
  WordOrigin origin_;
};

struct CoinAngles {
  double theta_a = 0.0;
  double theta_b = 0.0;
};

struct StandardTermination {
  bool operator==(const StandardTermination&) const = default;
};

struct PrefixOverride {
  std::string letters;  // 1-3 letters over {A, B}
  bool operator==(const PrefixOverride&) const = default;
};

struct PhasonTermination {
  double phason = 0.0;
  bool operator==(const PhasonTermination&) const = default;
};

using Termination = std::variant<StandardTermination, PrefixOverride, PhasonTermination>;

/// Fibonacci numbers with F_1 = 1, F_2 = 2, F_n = F_{n-1} + F_{n-2}.
std::uint64_t fibonacci_number(int n);

/// n-th iterate of A -> AB, B -> A from the seed A. Length fibonacci_number(order).
FibonacciWord generate_word(int order);

/// Characteristic (floor-difference) word: letter n is A iff
/// floor((n+2)/tau + phi) - floor((n+1)/tau + phi) == 1.
FibonacciWord cut_project_word(std::size_t length, double phason);

/// Prefix of the infinite standard word. Carries substitution provenance when
/// the length is a Fibonacci number.
FibonacciWord standard_word(std::size_t length);

FibonacciWord apply_termination(const FibonacciWord& word, const Termination& term);

std::vector<double> angles_for(const FibonacciWord& word, const CoinAngles& coins);

/// gamma_n = cos(theta_n).
std::vector<double> reflection_amplitudes(std::span<const double> angles);

/// Maps an angle to (-pi, pi].
double canonical_angle(double theta);

/// Parses "standard", a 1-3 letter prefix such as "AAB", or "phason:<value>".
Termination parse_termination(std::string_view text);
std::string termination_label(const Termination& term);

/// The exhaustive three-letter boundary set {ABA, AAB, BAA, BAB}.
std::vector<Termination> default_ensemble();

/// Uniform phason grid {k/count : k = 0..count-1}.
std::vector<Termination> phason_grid_ensemble(std::size_t count);

}  // namespace fibwalk
