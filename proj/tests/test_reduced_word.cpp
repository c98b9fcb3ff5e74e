#include <stdexcept>

#include "doctest.h"

#include "conclab/random_stream.hpp"
#include "conclab/reduced_word.hpp"

using conclab::ReducedWord;

namespace {
ReducedWord w(const char* s) { return ReducedWord::parse(s); }
}  // namespace

TEST_CASE("parsing reduces and rejects bad letters") {
  CHECK(w("abBA").is_identity());
  CHECK(w("aaBa").str() == "aaBa");
  CHECK(w("abBa").str() == "aa");
  CHECK_THROWS_AS(ReducedWord::parse("ab1"), std::invalid_argument);
  CHECK(w("").length() == 0);
}

TEST_CASE("multiplication examples") {
  CHECK(w("ab") * w("B") == w("a"));
  CHECK((w("aa") * w("AA")).is_identity());
  // a b a^-1 . a b^-1 cancels all the way down to a.
  CHECK((w("abA") * w("aB")) == w("a"));
  // Without a cancelling junction the letters are concatenated.
  CHECK((w("abA") * w("Ba")).str() == "abABa");
}

TEST_CASE("syllables") {
  const auto s = w("aaBa").syllables();
  REQUIRE(s.size() == 3);
  CHECK(s[0] == conclab::Syllable{0, 2});
  CHECK(s[1] == conclab::Syllable{1, -1});
  CHECK(s[2] == conclab::Syllable{0, 1});
  CHECK(ReducedWord::from_syllables(s) == w("aaBa"));
  CHECK(ReducedWord::generator(0, -3).str() == "AAA");
  CHECK(w("AAAb").leading_exponent() == -3);
  CHECK(w("ba").first_generator() == 1);
  CHECK(ReducedWord{}.first_generator() == -1);
}

TEST_CASE("ball sizes") {
  CHECK(conclab::enumerate_ball(0).size() == 1);
  CHECK(conclab::enumerate_ball(1).size() == 5);
  CHECK(conclab::enumerate_ball(3).size() == 53);
  for (int r = 0; r <= 8; ++r) {
    CHECK(conclab::enumerate_ball(r).size() == conclab::ball_size(r));
    std::size_t p = 1;
    for (int i = 0; i < r; ++i) p *= 3;
    CHECK(conclab::ball_size(r) == 2 * p - 1);
  }
  CHECK(conclab::enumerate_ball(2, 3).size() == 1 + 6 + 30);
  CHECK_THROWS_AS(conclab::enumerate_ball(13), std::length_error);
  const auto ball = conclab::enumerate_ball(5);
  CHECK(std::is_sorted(ball.begin(), ball.end()));
}

TEST_CASE("group axioms on the ball of radius 5") {
  const auto ball = conclab::enumerate_ball(5);
  for (const auto& u : ball) {
    CHECK((u * u.inverse()).is_identity());
    CHECK((u.inverse() * u).is_identity());
    CHECK(u * ReducedWord{} == u);
    CHECK(ReducedWord{} * u == u);
  }
  const conclab::SampleStream s{17, 0};
  for (std::uint64_t i = 0; i < 10000; ++i) {
    conclab::CounterEngine e(s, i);
    const auto& x = ball[e() % ball.size()];
    const auto& y = ball[e() % ball.size()];
    const auto& z = ball[e() % ball.size()];
    CHECK((x * y) * z == x * (y * z));
  }
}

TEST_CASE("shortlex order") {
  CHECK(w("b") < w("aa"));
  CHECK(ReducedWord{} < w("A"));
  CHECK(w("aB") != w("aA"));
}
