#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "conclab/permutation.hpp"

using namespace conclab::sym;

namespace {

Permutation random_perm(std::mt19937_64& rng, long n) {
  std::vector<long> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  std::map<long, long> m;
  for (long i = 1; i <= n; ++i) m[i] = img[static_cast<std::size_t>(i - 1)];
  return Permutation::from_images(m);
}

}  // namespace

TEST_CASE("parse, compose, format") {
  const auto s = Permutation::parse("(1 2)(3 4 5)");
  CHECK(s(1) == 2);
  CHECK(s(5) == 3);
  CHECK(s(9) == 9);
  CHECK(s.str() == "(1 2)(3 4 5)");
  CHECK(Permutation::parse("(4 5 3)(2 1)") == s);
  CHECK(Permutation::parse("e").is_identity());
  CHECK(Permutation::parse("()").str() == "()");
  // (s t)(i) = s(t(i))
  const auto t = Permutation::transposition(2, 3);
  CHECK((s * t)(2) == s(3));
  CHECK((s * s.inverse()).is_identity());
  CHECK(Permutation::parse("(1 2)(2 3)") == Permutation::parse("(1 2 3)"));
  CHECK_THROWS_AS(Permutation::parse("(1 1)"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::parse("(1 x)"), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_images({{1, 2}, {2, 2}}), std::invalid_argument);
}

TEST_CASE("Hamming metric axioms and right invariance") {
  std::mt19937_64 rng(20261016);
  for (int k = 0; k < 10000; ++k) {
    const long n = 2 + static_cast<long>(k % 11);
    const auto x = random_perm(rng, n), y = random_perm(rng, n), z = random_perm(rng, n);
    CHECK(hamming(x, x) == 0);
    CHECK((hamming(x, y) == 0) == (x == y));
    CHECK(hamming(x, y) == hamming(y, x));
    CHECK(hamming(x, z) <= hamming(x, y) + hamming(y, z));
    CHECK(hamming(x * z, y * z) == hamming(x, y));
    CHECK(phi(x, y) == phi(y, x));
    CHECK(phi(x, y) >= 0.0);
    CHECK(phi(x, y) <= 2.0);
  }
  CHECK(phi(Permutation{}, Permutation{}) == 0.0);
}

TEST_CASE("left translation can stretch phi") {
  const auto c4 = equicontinuity_counterexample(4);
  CHECK(c4.sigma == Permutation::parse("(1 2)(3 4)"));
  CHECK(c4.eta == Permutation::parse("(3 4)"));
  CHECK(c4.phi_before == 0.5);
  CHECK(c4.phi_after == 1.0);
  CHECK(c4.amplification == 2.0);

  const auto c6 = equicontinuity_counterexample(6);
  CHECK(c6.before.numerator == 2);
  CHECK(c6.before.denominator == 6);
  CHECK(c6.after.numerator == 2);
  CHECK(c6.after.denominator == 2);
  CHECK(c6.amplification == 3.0);

  for (int n = 4; n <= 2000; n += 2) {
    const auto c = equicontinuity_counterexample(n);
    CHECK(c.phi_after == 1.0);
    CHECK(c.amplification == n / 2.0);
  }
  CHECK(equicontinuity_counterexample(10000).amplification == 5000.0);
  CHECK_THROWS_AS(equicontinuity_counterexample(7), std::invalid_argument);
  CHECK_THROWS_AS(equicontinuity_counterexample(2), std::invalid_argument);
}
