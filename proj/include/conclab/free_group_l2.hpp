#pragma once

// l2 of the free group F_2 = <a, b>, the partition F_2 = union of W_n by
// the leading power of a, and checks of the two-set cover
//   A1 = { f : ||chi_{W_0} f|| <= 1/3 },  A2 = { f : ||chi_{W_0} f|| >= 1/3 }
// of the unit sphere.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "conclab/cover_sets.hpp"
#include "conclab/groups.hpp"
#include "conclab/l2_vector.hpp"
#include "conclab/random_stream.hpp"
#include "conclab/reduced_word.hpp"

namespace conclab::free_group {

using WordVector = L2Vector<ReducedWord>;

inline constexpr double kCoverThreshold = 1.0 / 3.0;
inline constexpr int kMaxBallRadius = 12;

/// n such that w lies in W_n: the leading exponent when w starts with a,
/// otherwise 0 (so the identity and words starting with b^{+-1} are in W_0).
long classify_prefix(const ReducedWord& w);

/// ||chi_S f|| for S the union of the classes W_n, n in `classes`.
double restricted_norm(const std::set<long>& classes, const WordVector& f);

/// pi_g f in F_2.
WordVector act(const ReducedWord& g, const WordVector& f, ActionConvention conv);

/// Union of the W_n for n in `classes`, as a coordinate set.
CoordinateSet<ReducedWord> prefix_class_set(const std::set<long>& classes);

/// A1 and A2.
ThresholdPredicate<ReducedWord> cover_a1();
ThresholdPredicate<ReducedWord> cover_a2();

enum class CoverClass { a1, a2, both };
std::string to_string(CoverClass c);

/// Which of A1, A2 contains f; values within 1e-12 of 1/3 are in both.
/// Throws std::invalid_argument unless | ||f|| - 1 | <= 1e-9.
CoverClass classify_cover(const WordVector& f);

/// Gaussian amplitudes on the ball of the given radius, normalized.
WordVector random_unit_vector(int ball_radius, const SampleStream& stream,
                              std::uint64_t index);

/// Words u in the ball with pull*u in W_0 for u outside W_0; returns the
/// number of exceptions. pull = b^{-1} is the inclusion b^{-1}(F_2 \ W_0) in W_0.
std::size_t count_complement_inclusion_exceptions(const ReducedWord& pull,
                                                  int radius,
                                                  std::size_t* checked = nullptr);

/// Exceptions to g W_0 in W_{n} (each word of W_0 in the ball is moved by g
/// and classified), for g = a^n.
std::size_t count_shift_inclusion_exceptions(long n, int radius,
                                             std::size_t* checked = nullptr);

struct A1Report {
  ActionConvention convention = ActionConvention::pullback;
  int ball_radius = 0;
  std::size_t samples = 0;
  int inclusion_radius = 0;
  std::size_t inclusion_words = 0;
  std::size_t inclusion_exceptions = 0;
  /// Samples where ||chi_{W_0^c} f|| >= sqrt(8/9), ||chi_{W_0} bf|| >=
  /// ||chi_{W_0^c} f|| or ||chi_{W_0} bf|| >= 2/3 fails (tolerance 1e-12).
  std::size_t chain_violations = 0;
  std::optional<WordVector> first_violation;
  double min_complement_norm = 1.0;
  double min_translated_norm = 1.0;
  /// Samples re-evaluated through act(); mismatches above 1e-12.
  std::size_t action_cross_checks = 0;
  std::size_t action_mismatches = 0;
  double epsilon = 1.0 / 12.0;
  /// Certificate for O_eps(A1) and O_eps(b A1); margin 1/3 - 2 eps.
  std::optional<SeparationCertificate> certificate;
};

/// Samples A1 vectors on the ball (the W_0 part rescaled to a uniform norm in
/// [0, 1/3], the rest to the complementary norm) and checks the chain that
/// puts b A1 at distance >= 1/3 from A1.
A1Report verify_a1_separation(std::size_t samples, int ball_radius,
                              const SampleStream& stream, ActionConvention conv,
                              int inclusion_radius = 8, double epsilon = 1.0 / 12.0);

struct A2Report {
  ActionConvention convention = ActionConvention::pullback;
  int ball_radius = 0;
  std::size_t samples = 0;
  std::vector<long> indices;
  /// min, 25%, median, 75%, max of min_i ||chi_{W_{-i}} f||.
  std::array<double, 5> quantiles{};
  std::size_t below_one_sixth = 0;
  double fraction_below_one_sixth = 0.0;
  /// Samples with min_i >= 1/6; the first few are kept.
  std::size_t claim_violations = 0;
  std::vector<WordVector> violation_examples;
  /// Samples breaking min_i^2 <= (1 - 1/9)/|indices|.
  std::size_t pigeonhole_failures = 0;
  WordVector candidate;
  double candidate_min = 0.0;
  /// ||chi_{W_0} pi_{a^i} candidate|| for each index.
  std::vector<double> candidate_translated_norms;
};

/// Amplitude 1/3 at e and sqrt(8/(9k)) at a^{-i} for each of the k indices.
WordVector a2_candidate(const std::vector<long>& indices);

/// Samples A2 vectors and evaluates min_i ||chi_{W_{-i}} f||. Throws
/// std::invalid_argument for an empty index list or nonpositive indices.
A2Report evaluate_a2_claim(std::size_t samples, int ball_radius,
                           const SampleStream& stream, std::vector<long> indices,
                           ActionConvention conv, std::size_t keep_examples = 5);

/// A cover element g.A with A a threshold set on a union of prefix classes.
struct PrefixCover {
  std::string name;
  std::set<long> classes{0};
  Comparison comparison = Comparison::at_most;
  double threshold = kCoverThreshold;
  ReducedWord shift;
};

PrefixCover a1_spec(ReducedWord shift = {});
PrefixCover a2_spec(ReducedWord shift = {});

struct WitnessChoice {
  WitnessKind kind = WitnessKind::restricted_norm;
  std::set<long> classes{0};
};

/// Domain on which set relations between translated prefix classes are
/// decided. Membership of u in g.(union of W_n, |n| <= m) depends only on the
/// first |g| + m + 1 letters of u, so relations checked on a ball at least
/// that large hold on all of F_2.
CheckDomain<ReducedWord> prefix_domain(int radius, std::size_t required_radius);

/// Ball of the given radius that decides a pair of translates g.A, h.A when
/// max(|g|, |h|) + class_span + 1 <= radius, class_span being the largest |n|
/// among the cover and witness classes.
CheckDomain<ReducedWord> prefix_pair_domain(int radius, std::size_t class_span);

/// |g| + max |n| + 1 over the covers and witness.
std::size_t required_radius(const std::vector<PrefixCover>& covers,
                            const std::set<long>& witness_classes);

struct SearchBudget {
  std::size_t random_seeds = 16;
  std::size_t iterations = 200;
  int support_radius = 3;
  SampleStream stream{};
};

struct DisjointnessResult {
  double epsilon = 0.0;
  ActionConvention convention = ActionConvention::pullback;
  std::optional<SeparationCertificate> certificate;
  /// Set when no certificate was found: the best point of the search and its
  /// distances to each set.
  std::optional<IntersectionCandidate<ReducedWord>> nearest;
  /// The nearest point is within eps of every set, so the neighbourhoods meet.
  bool refuted = false;
};

/// Certificate that O_eps(first) and O_eps(second) are disjoint, or the
/// nearest common point found by search. Rejects witnesses outside the
/// restricted-norm family.
DisjointnessResult neighborhood_disjointness(const PrefixCover& first,
                                             const PrefixCover& second,
                                             double epsilon,
                                             const WitnessChoice& witness,
                                             ActionConvention conv,
                                             const SearchBudget& budget = {},
                                             int domain_radius = 8);

/// {"word": amplitude, ...} with amplitudes printed to round-trip.
std::string to_json(const WordVector& f);
/// Throws std::invalid_argument on malformed input.
WordVector vector_from_json(std::string_view text);

}  // namespace conclab::free_group
