#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "conclab/free_group_l2.hpp"

using namespace conclab;
using namespace conclab::free_group;

namespace {

ReducedWord w(const char* s) { return ReducedWord::parse(s); }
const ReducedWord kA = ReducedWord::generator(0);
const ReducedWord kB = ReducedWord::generator(1);
constexpr ActionConvention kConventions[] = {ActionConvention::pullback,
                                             ActionConvention::inverse};

// Leading a-run read off the letters, independent of the syllable code.
long class_from_letters(const std::string& s) {
  if (s.empty() || (s[0] != 'a' && s[0] != 'A')) return 0;
  long n = 0;
  for (char c : s) {
    if (c != s[0]) break;
    n += c == 'a' ? 1 : -1;
  }
  return n;
}

WordVector random_on_ball(int radius, std::uint64_t seed, std::uint64_t i) {
  return free_group::random_unit_vector(radius, {seed, 0}, i);
}

std::vector<double> sorted_amplitudes(const WordVector& f) {
  std::vector<double> v;
  for (const auto& [k, x] : f.amplitudes()) v.push_back(x);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("prefix classes") {
  CHECK(classify_prefix(w("aabA")) == 2);
  CHECK(classify_prefix(w("ba")) == 0);
  CHECK(classify_prefix(w("AAAb")) == -3);
  CHECK(classify_prefix(ReducedWord{}) == 0);
  std::map<long, std::size_t> counts;
  const auto ball = enumerate_ball(8);
  for (const auto& u : ball) {
    CHECK(classify_prefix(u) == class_from_letters(u.str()));
    ++counts[classify_prefix(u)];
  }
  std::size_t total = 0;
  for (const auto& [n, c] : counts) total += c;
  CHECK(total == ball.size());
}

TEST_CASE("action on deltas and composition") {
  const auto d = WordVector::delta(ReducedWord{});
  CHECK(act(kA, d, ActionConvention::pullback) == WordVector::delta(w("A")));
  CHECK(act(kA, d, ActionConvention::inverse) == WordVector::delta(w("a")));
  const auto f = random_on_ball(3, 1, 0);
  CHECK(act(ReducedWord{}, f, ActionConvention::pullback) == f);
  const auto g1 = w("aB"), g2 = w("bba");
  CHECK(act(g1, act(g2, f, ActionConvention::pullback), ActionConvention::pullback) ==
        act(g2 * g1, f, ActionConvention::pullback));
  CHECK(act(g1, act(g2, f, ActionConvention::inverse), ActionConvention::inverse) ==
        act(g1 * g2, f, ActionConvention::inverse));
}

TEST_CASE("unitarity on random pairs") {
  const auto ball = enumerate_ball(4);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto f = random_on_ball(i % 3 + 1, 2, i);
    const auto& g = ball[(i * 7919) % ball.size()];
    const auto h = act(g, f, kConventions[i % 2]);
    CHECK(h.norm() == f.norm());
    CHECK(sorted_amplitudes(h) == sorted_amplitudes(f));
  }
}

TEST_CASE("restricted norms and Lipschitz bounds") {
  CHECK(restricted_norm({0}, WordVector::delta(ReducedWord{})) == 1.0);
  const WordVector f({{ReducedWord{}, 1 / std::sqrt(2.0)}, {kA, 1 / std::sqrt(2.0)}});
  CHECK(restricted_norm({0}, f) == doctest::Approx(1 / std::sqrt(2.0)));
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto x = random_on_ball(3, 3, 2 * i);
    const auto y = random_on_ball(3, 3, 2 * i + 1);
    const std::set<long> s = {static_cast<long>(i % 5) - 2};
    const double d = distance(x, y);
    CHECK(std::fabs(restricted_norm(s, x) - restricted_norm(s, y)) <= d + 1e-15);
    const double zx = std::pow(restricted_norm(s, x), 2), zy = std::pow(restricted_norm(s, y), 2);
    CHECK(std::fabs(zx - zy) <= 2 * d + 1e-15);
  }
}

TEST_CASE("translation identity, g in ball 2, f on ball 4") {
  const std::vector<std::set<long>> classes = {{0}, {-1}, {1, 2}, {-3, 0, 3}};
  for (const auto& g : enumerate_ball(2)) {
    for (std::uint64_t j = 0; j < 4; ++j) {
      const auto f = random_on_ball(4, 4, j);
      for (const auto& cls : classes) {
        for (auto conv : kConventions) {
          const ReducedWord pull = conv == ActionConvention::pullback ? g.inverse() : g;
          double direct = 0;
          for (const auto& [u, x] : f.amplitudes()) {
            if (cls.contains(class_from_letters((pull * u).str()))) direct += x * x;
          }
          CHECK(restricted_norm(cls, act(g, f, conv)) ==
                doctest::Approx(std::sqrt(direct)).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("set inclusions on ball radius 8") {
  for (long i : {-4, -3, -2, -1, 1, 2, 3, 4}) {
    std::size_t checked = 0;
    CHECK(count_shift_inclusion_exceptions(i, 8, &checked) == 0);
    CHECK(checked > 0);
  }
  std::size_t checked = 0;
  CHECK(count_complement_inclusion_exceptions(kB.inverse(), 8, &checked) == 0);
  // words starting with a or A: 2 * 3^(L-1) of each length L
  std::size_t outside = 0;
  for (int len = 1, p = 1; len <= 8; ++len, p *= 3) outside += 2 * p;
  CHECK(checked == outside);
  CHECK(count_complement_inclusion_exceptions(kB, 8) == 0);
  CHECK(count_complement_inclusion_exceptions(kA, 8) > 0);
}

TEST_CASE("cover classification") {
  CHECK(classify_cover(WordVector::delta(ReducedWord{})) == CoverClass::a2);
  CHECK(classify_cover(WordVector::delta(kA)) == CoverClass::a1);
  const WordVector edge({{ReducedWord{}, 1.0 / 3.0}, {kA, std::sqrt(8.0) / 3.0}});
  CHECK(classify_cover(edge) == CoverClass::both);
  CHECK_THROWS_AS(classify_cover(WordVector::delta(kA).scaled(2)), std::invalid_argument);
}

TEST_CASE("A1 separation chain") {
  for (auto conv : kConventions) {
    const auto r = verify_a1_separation(3000, 4, {5, 0}, conv, 8);
    CHECK(r.inclusion_exceptions == 0);
    CHECK(r.chain_violations == 0);
    CHECK(r.action_mismatches == 0);
    CHECK(r.action_cross_checks > 0);
    CHECK(r.min_translated_norm >= 2.0 / 3.0);
    REQUIRE(r.certificate);
    CHECK(r.certificate->margin == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  }
  CHECK(restricted_norm({0}, act(kB, WordVector::delta(kA), ActionConvention::pullback)) == 1.0);
}

TEST_CASE("A2 claim evaluation") {
  const auto cand = a2_candidate({1, 2, 3, 4});
  CHECK(cand.norm() == doctest::Approx(1.0).epsilon(1e-15));
  for (auto conv : kConventions) {
    const auto r = evaluate_a2_claim(3000, 5, {6, 0}, {1, 2, 3, 4}, conv);
    CHECK(r.pigeonhole_failures == 0);
    CHECK(std::fabs(r.candidate_min - std::sqrt(2.0) / 3.0) <= 1e-12);
    CHECK(r.candidate_translated_norms.size() == 4);
    CHECK(r.quantiles[0] <= r.quantiles[2]);
    CHECK(r.below_one_sixth + r.claim_violations == 3000);
  }
  const auto e = WordVector::delta(ReducedWord{});
  for (long i = 1; i <= 4; ++i) CHECK(restricted_norm({-i}, e) == 0.0);
  CHECK_THROWS_AS(evaluate_a2_claim(10, 3, {6, 1}, {}, ActionConvention::pullback),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_a2_claim(10, 13, {6, 1}, {1}, ActionConvention::pullback),
                  std::length_error);
}

TEST_CASE("neighbourhood disjointness") {
  const WitnessChoice w0{WitnessKind::restricted_norm, {0}};
  const auto cert = neighborhood_disjointness(a1_spec(), a1_spec(kB), 1.0 / 12, w0,
                                              ActionConvention::pullback);
  REQUIRE(cert.certificate);
  CHECK(cert.certificate->margin == doctest::Approx(1.0 / 6.0));
  CHECK(cert.certificate->gap == doctest::Approx(1.0 / 3.0));
  CHECK(cert.certificate->pythagorean_gap == doctest::Approx(std::sqrt(8.0) / 3.0 - 1.0 / 3.0));

  const auto same = neighborhood_disjointness(a1_spec(), a1_spec(), 1.0 / 12, w0,
                                              ActionConvention::pullback);
  CHECK_FALSE(same.certificate);
  REQUIRE(same.nearest);
  CHECK(same.refuted);

  const auto a2 = neighborhood_disjointness(a2_spec(), a2_spec(kA), 1.0 / 12, w0,
                                            ActionConvention::pullback);
  CHECK_FALSE(a2.certificate);
  REQUIRE(a2.nearest);
  CHECK(a2.nearest->distances.size() == 2);

  CHECK_THROWS_AS(neighborhood_disjointness(a1_spec(), a1_spec(kB), 1.0 / 12,
                                            {WitnessKind::unverified, {0}},
                                            ActionConvention::pullback),
                  std::invalid_argument);
  const auto sq = neighborhood_disjointness(a1_spec(), a1_spec(kB), 1.0 / 12,
                                            {WitnessKind::squared_restricted_norm, {0}},
                                            ActionConvention::pullback);
  REQUIRE(sq.certificate);
  CHECK(sq.certificate->lipschitz == 2.0);
}

TEST_CASE("a ball below the prefix length certifies nothing") {
  const auto fam_a = cover_a1();
  const auto fam_b = cover_a1();
  const std::vector<TranslatedSet<FreeGroup>> family = {{ReducedWord{}, &fam_a, "A1"},
                                                        {kB, &fam_b, "b.A1"}};
  const WitnessSpec<ReducedWord> wit{WitnessKind::restricted_norm, prefix_class_set({0})};
  const auto shallow = prefix_domain(1, 3);
  CHECK_FALSE(shallow.decisive);
  CHECK_FALSE(certify_pair(FreeGroup{}, family, 0, 1, wit, 1.0 / 12, shallow,
                           ActionConvention::pullback));
  CHECK(certify_pair(FreeGroup{}, family, 0, 1, wit, 1.0 / 12, prefix_domain(3, 3),
                     ActionConvention::pullback));

  const auto per_pair = prefix_pair_domain(3, 0);
  CHECK(per_pair.decides_pair(ReducedWord{}, kB));
  CHECK_FALSE(per_pair.decides_pair(ReducedWord{}, w("aaa")));
  CHECK(certify_pair(FreeGroup{}, family, 0, 1, wit, 1.0 / 12, per_pair, ActionConvention::pullback));
  const std::vector<TranslatedSet<FreeGroup>> far = {{ReducedWord{}, &fam_a, "A1"},
                                                     {w("bbb"), &fam_b, "bbb.A1"}};
  CHECK_FALSE(certify_pair(FreeGroup{}, far, 0, 1, wit, 1.0 / 12, per_pair, ActionConvention::pullback));
}

TEST_CASE("JSON round trip") {
  const auto f = random_on_ball(2, 9, 0);
  CHECK(vector_from_json(to_json(f)) == f);
  CHECK(to_json(WordVector::delta(w("aaBa"))) == "{\"aaBa\":1}");
  CHECK_THROWS_AS(vector_from_json("{\"aA\":1}"), std::invalid_argument);
  CHECK_THROWS_AS(vector_from_json("[1]"), std::invalid_argument);
  CHECK_THROWS_AS(vector_from_json("{\"c\":1}"), std::invalid_argument);
}
