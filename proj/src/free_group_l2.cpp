#include "conclab/free_group_l2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>
#include "json.hpp"

namespace conclab::free_group {
namespace {

const FreeGroup kF2{2};
const ReducedWord kB = ReducedWord::generator(1);

constexpr double kTol = 1e-12;

void check_radius(int radius) {
  if (radius < 0 || radius > kMaxBallRadius) {
    throw std::length_error("ball radius must be in [0, 12]");
  }
}

bool in_classes(const std::set<long>& classes, const ReducedWord& w) {
  return classes.contains(classify_prefix(w));
}

long max_abs(const std::set<long>& classes) {
  long m = 0;
  for (long n : classes) m = std::max(m, std::labs(n));
  return m;
}

// Draws a Gaussian vector on `words`, splits it by `head_mask` and rescales
// the two parts to norms (t, sqrt(1 - t^2)) with t = lo + (hi - lo) U.
// Resamples on the (measure-zero) event that a needed part vanishes.
std::vector<double> draw_split_vector(const std::vector<char>& head_mask,
                                      const SampleStream& stream,
                                      std::uint64_t index, double lo, double hi) {
  const std::size_t n = head_mask.size();
  std::vector<double> z(n);
  boost::random::normal_distribution<double> normal;
  for (std::uint64_t attempt = 0;; ++attempt) {
    CounterEngine engine(stream.substream(attempt << 32), index);
    const double t = lo + (hi - lo) * engine.uniform();
    double head2 = 0.0, tail2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      z[k] = normal(engine);
      (head_mask[k] ? head2 : tail2) += z[k] * z[k];
    }
    const double rest = std::sqrt(std::max(0.0, 1.0 - t * t));
    if ((t > 0.0 && head2 == 0.0) || (rest > 0.0 && tail2 == 0.0)) continue;
    const double hs = head2 > 0.0 ? t / std::sqrt(head2) : 0.0;
    const double ts = tail2 > 0.0 ? rest / std::sqrt(tail2) : 0.0;
    for (std::size_t k = 0; k < n; ++k) z[k] *= head_mask[k] ? hs : ts;
    return z;
  }
}

WordVector to_vector(const std::vector<ReducedWord>& words,
                     const std::vector<double>& values) {
  WordVector::map_type m;
  for (std::size_t k = 0; k < words.size(); ++k) m.emplace(words[k], values[k]);
  return WordVector(std::move(m));
}

double masked_norm(const std::vector<double>& v, const std::vector<char>& mask) {
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (mask[k]) s += v[k] * v[k];
  }
  return std::sqrt(s);
}

ThresholdPredicate<ReducedWord> make_predicate(const PrefixCover& c) {
  ThresholdPredicate<ReducedWord> p;
  p.name = c.name;
  p.coords = prefix_class_set(c.classes);
  p.comparison = c.comparison;
  p.threshold = c.threshold;
  return p;
}

}  // namespace

long classify_prefix(const ReducedWord& w) {
  return w.first_generator() == 0 ? w.leading_exponent() : 0;
}

double restricted_norm(const std::set<long>& classes, const WordVector& f) {
  return f.restricted_norm([&](const ReducedWord& w) { return in_classes(classes, w); });
}

WordVector act(const ReducedWord& g, const WordVector& f, ActionConvention conv) {
  return conclab::act(kF2, g, f, conv);
}

CoordinateSet<ReducedWord> prefix_class_set(const std::set<long>& classes) {
  if (classes.empty()) throw std::invalid_argument("empty prefix class set");
  CoordinateSet<ReducedWord> s;
  s.label = "W{";
  for (auto it = classes.begin(); it != classes.end(); ++it) {
    if (it != classes.begin()) s.label += ',';
    s.label += std::to_string(*it);
  }
  s.label += '}';
  s.contains = [classes](const ReducedWord& w) { return in_classes(classes, w); };
  const long first = *classes.begin();
  s.inside = first == 0 ? ReducedWord{} : ReducedWord::generator(0, first);
  if (!classes.contains(0)) {
    s.outside = ReducedWord{};
  } else {
    long m = 1;
    while (classes.contains(m)) ++m;
    s.outside = ReducedWord::generator(0, m);
  }
  return s;
}

ThresholdPredicate<ReducedWord> cover_a1() { return make_predicate(a1_spec()); }
ThresholdPredicate<ReducedWord> cover_a2() { return make_predicate(a2_spec()); }

PrefixCover a1_spec(ReducedWord shift) {
  PrefixCover c{"A1", {0}, Comparison::at_most, kCoverThreshold, std::move(shift)};
  if (!c.shift.is_identity()) c.name = c.shift.str() + ".A1";
  return c;
}

PrefixCover a2_spec(ReducedWord shift) {
  PrefixCover c{"A2", {0}, Comparison::at_least, kCoverThreshold, std::move(shift)};
  if (!c.shift.is_identity()) c.name = c.shift.str() + ".A2";
  return c;
}

std::string to_string(CoverClass c) {
  switch (c) {
    case CoverClass::a1: return "A1";
    case CoverClass::a2: return "A2";
    case CoverClass::both: return "both";
  }
  return "?";
}

CoverClass classify_cover(const WordVector& f) {
  if (std::fabs(f.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("classify_cover needs a unit vector");
  }
  const double x = restricted_norm({0}, f);
  if (std::fabs(x - kCoverThreshold) <= kTol) return CoverClass::both;
  return x < kCoverThreshold ? CoverClass::a1 : CoverClass::a2;
}

WordVector random_unit_vector(int ball_radius, const SampleStream& stream,
                              std::uint64_t index) {
  check_radius(ball_radius);
  return conclab::random_unit_vector(enumerate_ball(ball_radius), stream, index);
}

std::size_t count_complement_inclusion_exceptions(const ReducedWord& pull,
                                                  int radius,
                                                  std::size_t* checked) {
  check_radius(radius);
  std::size_t bad = 0, seen = 0;
  for (const ReducedWord& u : enumerate_ball(radius)) {
    if (classify_prefix(u) == 0) continue;
    ++seen;
    if (classify_prefix(pull * u) != 0) ++bad;
  }
  if (checked) *checked = seen;
  return bad;
}

std::size_t count_shift_inclusion_exceptions(long n, int radius, std::size_t* checked) {
  check_radius(radius);
  const ReducedWord g = ReducedWord::generator(0, n);
  std::size_t bad = 0, seen = 0;
  for (const ReducedWord& u : enumerate_ball(radius)) {
    if (classify_prefix(u) != 0) continue;
    ++seen;
    if (classify_prefix(g * u) != n) ++bad;
  }
  if (checked) *checked = seen;
  return bad;
}

A1Report verify_a1_separation(std::size_t samples, int ball_radius,
                              const SampleStream& stream, ActionConvention conv,
                              int inclusion_radius, double epsilon) {
  check_radius(ball_radius);
  A1Report r;
  r.convention = conv;
  r.ball_radius = ball_radius;
  r.samples = samples;
  r.inclusion_radius = inclusion_radius;
  r.epsilon = epsilon;

  // ||chi_{W_0} pi_b f|| = ||chi_T f||, T = {u : pull u in W_0}.
  const ReducedWord pull = conv == ActionConvention::pullback ? kB.inverse() : kB;
  r.inclusion_exceptions =
      count_complement_inclusion_exceptions(pull, inclusion_radius, &r.inclusion_words);

  r.certificate = neighborhood_disjointness(a1_spec(), a1_spec(kB), epsilon,
                                            {WitnessKind::restricted_norm, {0}}, conv)
                      .certificate;

  const std::vector<ReducedWord> words = enumerate_ball(ball_radius);
  std::vector<char> in_w0(words.size()), out_w0(words.size()), in_t(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    in_w0[k] = classify_prefix(words[k]) == 0;
    out_w0[k] = !in_w0[k];
    in_t[k] = classify_prefix(pull * words[k]) == 0;
  }
  const double complement_floor = std::sqrt(1.0 - kCoverThreshold * kCoverThreshold);
  constexpr std::size_t kCrossCheckEvery = 997;

  for (std::size_t i = 0; i < samples; ++i) {
    const std::vector<double> v =
        draw_split_vector(in_w0, stream, i, 0.0, kCoverThreshold);
    const double head = masked_norm(v, in_w0);
    const double comp = masked_norm(v, out_w0);
    const double moved = masked_norm(v, in_t);
    r.min_complement_norm = std::min(r.min_complement_norm, comp);
    r.min_translated_norm = std::min(r.min_translated_norm, moved);
    const bool ok = head <= kCoverThreshold + kTol && comp >= complement_floor - kTol &&
                    moved >= comp - kTol && moved >= 2.0 / 3.0 - kTol;
    if (!ok) {
      if (!r.first_violation) r.first_violation = to_vector(words, v);
      ++r.chain_violations;
    }
    if (i % kCrossCheckEvery == 0) {
      const WordVector f = to_vector(words, v);
      ++r.action_cross_checks;
      if (std::fabs(restricted_norm({0}, act(kB, f, conv)) - moved) > kTol) {
        ++r.action_mismatches;
      }
    }
  }
  return r;
}

WordVector a2_candidate(const std::vector<long>& indices) {
  if (indices.empty()) throw std::invalid_argument("empty index range");
  WordVector::map_type m;
  m.emplace(ReducedWord{}, kCoverThreshold);
  const double amp = std::sqrt(8.0 / (9.0 * static_cast<double>(indices.size())));
  for (long i : indices) m.emplace(ReducedWord::generator(0, -i), amp);
  return WordVector(std::move(m));
}

A2Report evaluate_a2_claim(std::size_t samples, int ball_radius,
                           const SampleStream& stream, std::vector<long> indices,
                           ActionConvention conv, std::size_t keep_examples) {
  check_radius(ball_radius);
  if (indices.empty()) throw std::invalid_argument("empty index range");
  std::sort(indices.begin(), indices.end());
  if (indices.front() < 1 ||
      std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw std::invalid_argument("indices must be distinct positive integers");
  }
  A2Report r;
  r.convention = conv;
  r.ball_radius = ball_radius;
  r.samples = samples;
  r.indices = indices;

  const std::vector<ReducedWord> words = enumerate_ball(ball_radius);
  std::vector<char> in_w0(words.size());
  std::vector<std::vector<char>> in_minus(indices.size(),
                                          std::vector<char>(words.size()));
  for (std::size_t k = 0; k < words.size(); ++k) {
    const long c = classify_prefix(words[k]);
    in_w0[k] = c == 0;
    for (std::size_t j = 0; j < indices.size(); ++j) in_minus[j][k] = c == -indices[j];
  }
  const double pigeon = (1.0 - kCoverThreshold * kCoverThreshold) /
                        static_cast<double>(indices.size());

  std::vector<double> mins;
  mins.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::vector<double> v =
        draw_split_vector(in_w0, stream, i, kCoverThreshold, 1.0);
    double lo = 1.0;
    for (const auto& mask : in_minus) lo = std::min(lo, masked_norm(v, mask));
    mins.push_back(lo);
    if (lo < 1.0 / 6.0) {
      ++r.below_one_sixth;
    } else {
      ++r.claim_violations;
      if (r.violation_examples.size() < keep_examples) {
        r.violation_examples.push_back(to_vector(words, v));
      }
    }
    if (lo * lo > pigeon + kTol) ++r.pigeonhole_failures;
  }
  if (!mins.empty()) {
    std::sort(mins.begin(), mins.end());
    const double probs[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int q = 0; q < 5; ++q) {
      r.quantiles[q] = mins[static_cast<std::size_t>(
          std::floor(probs[q] * static_cast<double>(mins.size() - 1)))];
    }
    r.fraction_below_one_sixth =
        static_cast<double>(r.below_one_sixth) / static_cast<double>(samples);
  }

  r.candidate = a2_candidate(indices);
  r.candidate_min = 1.0;
  for (long i : indices) {
    r.candidate_min = std::min(r.candidate_min, restricted_norm({-i}, r.candidate));
    r.candidate_translated_norms.push_back(
        restricted_norm({0}, act(ReducedWord::generator(0, i), r.candidate, conv)));
  }
  return r;
}

std::size_t required_radius(const std::vector<PrefixCover>& covers,
                            const std::set<long>& witness_classes) {
  std::size_t need = 0;
  for (const PrefixCover& c : covers) {
    const long m = std::max(max_abs(c.classes), max_abs(witness_classes));
    need = std::max(need, c.shift.length() + static_cast<std::size_t>(m) + 1);
  }
  return need;
}

CheckDomain<ReducedWord> prefix_domain(int radius, std::size_t required) {
  check_radius(radius);
  CheckDomain<ReducedWord> d;
  d.elements = enumerate_ball(radius);
  d.decisive = d.complements_exact = static_cast<std::size_t>(radius) >= required;
  d.description = "F_2 ball radius " + std::to_string(radius) +
                  (d.decisive ? " (prefix-determined, exact)"
                              : " (below prefix length, not decisive)");
  return d;
}

CheckDomain<ReducedWord> prefix_pair_domain(int radius, std::size_t class_span) {
  CheckDomain<ReducedWord> d = prefix_domain(radius, 0);
  const std::size_t r = static_cast<std::size_t>(radius);
  d.decides_pair = [r, class_span](const ReducedWord& g, const ReducedWord& h) {
    return std::max(g.length(), h.length()) + class_span + 1 <= r;
  };
  d.description = "F_2 ball radius " + std::to_string(radius) +
                  " (exact for translates of length <= " +
                  std::to_string(static_cast<long>(r) - static_cast<long>(class_span) - 1) + ")";
  return d;
}

DisjointnessResult neighborhood_disjointness(const PrefixCover& first,
                                             const PrefixCover& second,
                                             double epsilon,
                                             const WitnessChoice& witness,
                                             ActionConvention conv,
                                             const SearchBudget& budget,
                                             int domain_radius) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  WitnessSpec<ReducedWord> spec{witness.kind, prefix_class_set(witness.classes)};
  spec.lipschitz();  // rejects unverified witnesses

  DisjointnessResult out;
  out.epsilon = epsilon;
  out.convention = conv;

  const std::vector<PrefixCover> covers{first, second};
  const std::size_t need = required_radius(covers, witness.classes);
  const int radius = std::max<int>(domain_radius, static_cast<int>(need));
  const std::vector<ThresholdPredicate<ReducedWord>> bases{make_predicate(first),
                                                           make_predicate(second)};
  std::vector<TranslatedSet<FreeGroup>> family;
  for (std::size_t i = 0; i < 2; ++i) {
    family.push_back({covers[i].shift, &bases[i], covers[i].name});
  }
  out.certificate = certify_pair(kF2, family, 0, 1, spec, epsilon,
                                 prefix_domain(radius, need), conv);
  if (out.certificate) return out;

  check_radius(budget.support_radius);
  const std::vector<ReducedWord> support = enumerate_ball(budget.support_radius);
  std::vector<WordVector> seeds;
  for (std::size_t s = 0; s < budget.random_seeds; ++s) {
    seeds.push_back(conclab::random_unit_vector(support, budget.stream, s));
  }
  out.nearest = search_intersection(kF2, family, seeds, budget.iterations, conv);
  out.refuted = out.nearest->max_distance < epsilon;
  return out;
}

std::string to_json(const WordVector& f) {
  std::string out = "{";
  bool first = true;
  char buf[32];
  for (const auto& [w, v] : f.amplitudes()) {
    if (!first) out += ',';
    first = false;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += '"' + w.str() + "\":" + buf;
  }
  return out + "}";
}

WordVector vector_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("vector JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("vector JSON must be an object");
  WordVector::map_type m;
  for (const auto& [key, value] : j.items()) {
    const ReducedWord w = ReducedWord::parse(key);
    if (w.str() != key || w.max_generator() > 1) {
      throw std::invalid_argument("'" + key + "' is not a reduced word in a, b");
    }
    if (!value.is_number()) throw std::invalid_argument("amplitude must be a number");
    m.emplace(w, value.get<double>());
  }
  return WordVector(std::move(m));
}

}  // namespace conclab::free_group
