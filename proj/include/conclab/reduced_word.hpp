#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace conclab {

/// A maximal run of one generator: generator^exponent, exponent != 0.
struct Syllable {
  int generator = 0;
  long exponent = 0;

  bool operator==(const Syllable&) const = default;
};

class ReducedWord;
std::vector<ReducedWord> enumerate_ball(int radius, int rank);

/// Element of a free group in reduced (canonical) form.
///
/// Stored as a letter string: generator i is the letter 'a'+i and its inverse
/// the capital 'A'+i, so "aaBa" is a^2 b^-1 a and "" is the identity. Words
/// are ordered shortlex (length first, then letters).

class ReducedWord {
 public:
  static constexpr int kMaxRank = 26;

  ReducedWord() = default;

  /// Parses a letter string and freely reduces it. Throws
  /// std::invalid_argument on characters outside [a-zA-Z].
  static ReducedWord parse(std::string_view letters);
  static ReducedWord from_syllables(const std::vector<Syllable>& syllables);
  static ReducedWord generator(int index, long exponent = 1);

  bool is_identity() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  const std::string& str() const { return letters_; }
  std::vector<Syllable> syllables() const;
  /// Generator index of the first letter, or -1 for the identity.
  int first_generator() const;
  /// Signed length of the leading syllable (0 for the identity).
  long leading_exponent() const;
  /// Largest generator index used, or -1.
  int max_generator() const;

  ReducedWord inverse() const;

  friend ReducedWord operator*(const ReducedWord& u, const ReducedWord& v);

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  friend std::strong_ordering operator<=>(const ReducedWord& u,
                                          const ReducedWord& v);

 private:
  friend std::vector<ReducedWord> enumerate_ball(int radius, int rank);
  explicit ReducedWord(std::string letters) : letters_(std::move(letters)) {}
  std::string letters_;
};

inline ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) {
  return u * v;
}

/// All reduced words of length <= radius in the free group of the given
/// rank, in shortlex order. Throws std::length_error when radius > 12.
std::vector<ReducedWord> enumerate_ball(int radius, int rank);
inline std::vector<ReducedWord> enumerate_ball(int radius) {
  return enumerate_ball(radius, 2);
}

/// Number of reduced words of length <= radius: 1 + 2r((2r-1)^R - 1)/(2r-2).
std::size_t ball_size(int radius, int rank = 2);

}  // namespace conclab

template <>
struct std::hash<conclab::ReducedWord> {
  std::size_t operator()(const conclab::ReducedWord& w) const noexcept {
    return std::hash<std::string>{}(w.str());
  }
};
