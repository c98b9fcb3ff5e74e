#pragma once

// Finitely supported permutations of the positive integers, Hamming distance
// and its normalization
//   phi(s, t) = d(s, t) / max{d(s, e), d(t, e)},  phi(s, s) = 0.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace conclab::sym {

/// Bijection of {1, 2, ...} moving finitely many points. Composition is
/// (s t)(i) = s(t(i)).
class Permutation {
 public:
  Permutation() = default;

  /// Images of the moved points; fixed points may be included. Throws
  /// std::invalid_argument unless the map is a bijection of its key set onto
  /// itself on positive integers.
  static Permutation from_images(const std::map<long, long>& images);
  static Permutation transposition(long i, long j);
  /// Cycle notation, e.g. "(1 2)(3 4 5)"; "()" or "e" is the identity.
  /// Non-disjoint cycles are multiplied, rightmost first.
  static Permutation parse(std::string_view cycles);

  long operator()(long i) const;
  const std::map<long, long>& moved() const { return moved_; }
  std::size_t support_size() const { return moved_.size(); }
  bool is_identity() const { return moved_.empty(); }
  Permutation inverse() const;
  /// Disjoint cycles, each starting at its least point; "()" for the identity.
  std::string str() const;

  friend Permutation operator*(const Permutation& s, const Permutation& t);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::map<long, long> moved_;  // only points with s(i) != i
};

/// |{ i : s(i) != t(i) }|.
std::size_t hamming(const Permutation& s, const Permutation& t);

/// phi as the integer pair (d(s, t), max{d(s, e), d(t, e)}); (0, 1) when s = t.
struct PhiRatio {
  std::size_t numerator = 0;
  std::size_t denominator = 1;
  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

PhiRatio phi_ratio(const Permutation& s, const Permutation& t);
double phi(const Permutation& s, const Permutation& t);

/// sigma = (1 2)(3 4)...(n-1 n), eta the same without (1 2). phi(sigma, eta)
/// = 2/n while phi(sigma eta, eta^2) = phi((1 2), e) = 1, so right
/// translation by eta stretches phi by n/2.
struct Counterexample {
  int n = 0;
  Permutation sigma, eta;
  PhiRatio before, after;
  double phi_before = 0.0;
  double phi_after = 0.0;
  /// after / before from the integer pairs: n/2 exactly.
  double amplification = 0.0;
};

/// Throws std::invalid_argument unless n is even and >= 4.
Counterexample equicontinuity_counterexample(int n);

}  // namespace conclab::sym
