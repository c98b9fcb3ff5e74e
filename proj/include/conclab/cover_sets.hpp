#pragma once

// Cover elements of the unit sphere of l2(G) given by threshold conditions
// on restricted norms, their translates under the regular representation,
// separation certificates built from 1-Lipschitz witnesses, and a budgeted
// search for points close to several translates at once.
//
// A cover element is A = { f : ||f|| = 1, ||chi_S f|| <= t } (or >= t). Its
// translate g.A = { pi_g f : f in A }. Two sets whose eps-neighbourhoods
// meet contain points at distance < 2 eps, so a 1-Lipschitz witness w with
// |w(f) - w(h)| >= 2 eps on f in X, h in Y separates O_eps(X) from O_eps(Y).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "conclab/groups.hpp"
#include "conclab/l2_vector.hpp"
#include "conclab/random_stream.hpp"

namespace conclab {

enum class Comparison { at_most, at_least };

/// A subset S of the group, given by membership.
template <class Key>
struct CoordinateSet {
  std::string label;
  std::function<bool(const Key&)> contains;
  /// Some element of S and, unless S is everything, one outside it; used as
  /// directions when a vector vanishes on one side.
  Key inside{};
  std::optional<Key> outside;
  /// Explicit member list when S is finite.
  std::optional<std::vector<Key>> elements;
};

template <class Key>
CoordinateSet<Key> finite_coordinate_set(std::string label, std::vector<Key> keys,
                                         std::optional<Key> outside) {
  if (keys.empty()) throw std::invalid_argument("finite coordinate set is empty");
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  CoordinateSet<Key> s;
  s.label = std::move(label);
  auto shared = std::make_shared<const std::vector<Key>>(keys);
  s.contains = [shared](const Key& k) {
    return std::binary_search(shared->begin(), shared->end(), k);
  };
  s.inside = keys.front();
  s.outside = std::move(outside);
  s.elements = std::move(keys);
  return s;
}

template <class Key>
CoordinateSet<Key> all_coordinates(Key some_element) {
  CoordinateSet<Key> s;
  s.label = "all";
  s.contains = [](const Key&) { return true; };
  s.inside = std::move(some_element);
  return s;
}

/// { f on the unit sphere : ||chi_S f|| (<= or >=) threshold }.
template <class Key>
struct ThresholdPredicate {
  std::string name;
  CoordinateSet<Key> coords;
  Comparison comparison = Comparison::at_least;
  double threshold = 0.0;

  double witness_value(const L2Vector<Key>& f) const {
    return f.restricted_norm(coords.contains);
  }

  /// Range of ||chi_S f|| over members of the set.
  std::pair<double, double> witness_range() const {
    return comparison == Comparison::at_most
               ? std::pair{0.0, std::min(1.0, threshold)}
               : std::pair{std::max(0.0, threshold), 1.0};
  }

  bool holds(double value, double tol = 0.0) const {
    return comparison == Comparison::at_most ? value <= threshold + tol
                                             : value >= threshold - tol;
  }

  bool contains(const L2Vector<Key>& f, double tol = 0.0) const {
    return holds(witness_value(f), tol);
  }
};

/// Nearest unit vector of the predicate's set to the unit vector v, or
/// nullopt when the set is empty. The set is invariant under rotations
/// inside span(chi_S v) and span(chi_{S^c} v), so the projection only
/// rescales the two blocks; the target norm is pushed 1e-12 inside the
/// threshold so the result passes a direct membership test.
template <class Key>
std::optional<L2Vector<Key>> project(const ThresholdPredicate<Key>& a,
                                     const L2Vector<Key>& v) {
  const auto& in_s = a.coords.contains;
  const L2Vector<Key> head = v.restricted(in_s);
  const L2Vector<Key> tail = v.restricted([&](const Key& k) { return !in_s(k); });
  const double x = head.norm();
  if (a.holds(x)) return v;
  constexpr double kInset = 1e-12;
  double target = a.comparison == Comparison::at_most ? a.threshold - kInset
                                                      : a.threshold + kInset;
  target = std::clamp(target, 0.0, 1.0);
  if (!a.holds(target)) return std::nullopt;
  const double rest = std::sqrt(std::max(0.0, 1.0 - target * target));
  if (rest > 0.0 && tail.norm() == 0.0 && !a.coords.outside) return std::nullopt;
  const L2Vector<Key> head_dir =
      x > 0.0 ? head.scaled(1.0 / x) : L2Vector<Key>::delta(a.coords.inside);
  L2Vector<Key> out = head_dir.scaled(target);
  if (rest > 0.0) {
    const L2Vector<Key> tail_dir = tail.norm() > 0.0
                                       ? tail.scaled(1.0 / tail.norm())
                                       : L2Vector<Key>::delta(*a.coords.outside);
    out = out + tail_dir.scaled(rest);
  }
  return out;
}

/// The translate g.A of a cover element.
template <DiscreteGroup G>
struct TranslatedSet {
  using Key = typename G::element_type;
  Key shift;
  const ThresholdPredicate<Key>* base = nullptr;
  std::string label;
};

template <DiscreteGroup G>
bool contains(const G& group, const TranslatedSet<G>& s,
              const L2Vector<typename G::element_type>& f,
              ActionConvention convention, double tol = 0.0) {
  return s.base->contains(act(group, group.inverse(s.shift), f, convention), tol);
}

template <DiscreteGroup G>
std::optional<L2Vector<typename G::element_type>> project(
    const G& group, const TranslatedSet<G>& s,
    const L2Vector<typename G::element_type>& v, ActionConvention convention) {
  auto p = project(*s.base, act(group, group.inverse(s.shift), v, convention));
  if (!p) return std::nullopt;
  return act(group, s.shift, *p, convention);
}

// ---------------------------------------------------------------------------
// Separation certificates

enum class WitnessKind {
  restricted_norm,          ///< f -> ||chi_W f||, 1-Lipschitz
  squared_restricted_norm,  ///< f -> ||chi_W f||^2, 2-Lipschitz on the sphere
  unverified,               ///< anything else; rejected
};

template <class Key>
struct WitnessSpec {
  WitnessKind kind = WitnessKind::restricted_norm;
  CoordinateSet<Key> coords;

  /// Throws std::invalid_argument for witnesses outside the restricted-norm
  /// family, whose Lipschitz constant is not known.
  double lipschitz() const {
    switch (kind) {
      case WitnessKind::restricted_norm: return 1.0;
      case WitnessKind::squared_restricted_norm: return 2.0;
      default: break;
    }
    throw std::invalid_argument(
        "witness must be a restricted norm (1-Lipschitz) or its square");
  }
};

/// Elements over which set relations are checked. `decisive`: inclusions
/// between the sets involved hold on the group once they hold on `elements`
/// (e.g. the elements contain every finite set in play). `complements_exact`:
/// the same for relations involving a complement. Nothing is asserted from a
/// non-decisive domain. `decides_pair`, when set, overrides both flags for
/// the pair of shifts being compared.
template <class Key>
struct CheckDomain {
  std::vector<Key> elements;
  bool complements_exact = false;
  std::string description;
  bool decisive = true;
  std::function<bool(const Key&, const Key&)> decides_pair;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct SeparationCertificate {
  std::size_t first = 0;
  std::size_t second = 0;
  std::string witness;
  double lipschitz = 1.0;
  /// Witness ranges from the triangle inequality ||chi_{S^c} f|| >= 1 - ||chi_S f||.
  Interval first_range, second_range;
  double gap = 0.0;
  double margin = 0.0;  ///< gap - 2 L eps
  /// Same with the Pythagorean bound ||chi_{S^c} f|| = sqrt(1 - ||chi_S f||^2).
  double pythagorean_gap = 0.0;
  double pythagorean_margin = 0.0;
  std::string domain;
};

namespace detail {

struct SetRelations {
  bool t_in_s = true;
  bool s_in_t = true;
  bool complement_in_t = true;
  bool t_in_complement = true;
};

// Ranges of the witness over g.A: ||chi_W pi_g f|| = ||chi_T f|| with
// T = translated W; constraints come from how T sits relative to S.
inline std::pair<Interval, Interval> witness_ranges(const SetRelations& r,
                                                    std::pair<double, double> x) {
  Interval tri, pyth;
  const auto [xl, xh] = x;
  if (r.t_in_s) tri.hi = pyth.hi = std::min(tri.hi, xh);
  if (r.s_in_t) tri.lo = pyth.lo = std::max(tri.lo, xl);
  if (r.complement_in_t) {
    tri.lo = std::max(tri.lo, 1.0 - xh);
    pyth.lo = std::max(pyth.lo, std::sqrt(std::max(0.0, 1.0 - xh * xh)));
  }
  if (r.t_in_complement) {
    const double cap = std::sqrt(std::max(0.0, 1.0 - xl * xl));
    tri.hi = std::min(tri.hi, cap);
    pyth.hi = std::min(pyth.hi, cap);
  }
  return {tri, pyth};
}

inline double interval_gap(const Interval& a, const Interval& b) {
  return std::max({0.0, b.lo - a.hi, a.lo - b.hi});
}

inline Interval squared(const Interval& i) { return {i.lo * i.lo, i.hi * i.hi}; }

}  // namespace detail

/// Tries to certify O_eps(X) and O_eps(Y) disjoint for X = family[i],
/// Y = family[j] using the witness. Set relations are evaluated on `domain`.
template <DiscreteGroup G>
std::optional<SeparationCertificate> certify_pair(
    const G& group, const std::vector<TranslatedSet<G>>& family, std::size_t i,
    std::size_t j, const WitnessSpec<typename G::element_type>& witness,
    double epsilon, const CheckDomain<typename G::element_type>& domain,
    ActionConvention convention) {
  using Key = typename G::element_type;
  const double lipschitz = witness.lipschitz();
  const bool exact = domain.decides_pair
                         ? domain.decides_pair(family[i].shift, family[j].shift)
                         : domain.decisive;
  if (!exact) return std::nullopt;
  Interval tri[2], pyth[2];
  const std::size_t idx[2] = {i, j};
  for (int side = 0; side < 2; ++side) {
    const TranslatedSet<G>& s = family[idx[side]];
    const auto in_t = translated_set(group, s.shift, witness.coords.contains, convention);
    const auto& in_s = s.base->coords.contains;
    detail::SetRelations rel;
    for (const Key& u : domain.elements) {
      const bool t = in_t(u);
      const bool sv = in_s(u);
      if (t && !sv) rel.t_in_s = false;
      if (sv && !t) rel.s_in_t = false;
      if (!sv && !t) rel.complement_in_t = false;
      if (t && sv) rel.t_in_complement = false;
    }
    if (!domain.decides_pair && !domain.complements_exact) rel.complement_in_t = false;
    std::tie(tri[side], pyth[side]) =
        detail::witness_ranges(rel, s.base->witness_range());
    if (witness.kind == WitnessKind::squared_restricted_norm) {
      tri[side] = detail::squared(tri[side]);
      pyth[side] = detail::squared(pyth[side]);
    }
  }
  SeparationCertificate cert;
  cert.first = i;
  cert.second = j;
  cert.witness = witness.coords.label;
  cert.lipschitz = lipschitz;
  cert.first_range = tri[0];
  cert.second_range = tri[1];
  cert.gap = detail::interval_gap(tri[0], tri[1]);
  cert.margin = cert.gap - 2.0 * lipschitz * epsilon;
  cert.pythagorean_gap = detail::interval_gap(pyth[0], pyth[1]);
  cert.pythagorean_margin = cert.pythagorean_gap - 2.0 * lipschitz * epsilon;
  cert.domain = domain.description;
  if (cert.margin >= 0.0 || cert.pythagorean_margin >= 0.0) return cert;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Intersection search

/// Unit vector with i.i.d. Gaussian amplitudes on `support`.
template <class Key>
L2Vector<Key> random_unit_vector(const std::vector<Key>& support,
                                 const SampleStream& stream, std::uint64_t index) {
  if (support.empty()) throw std::invalid_argument("random vector: empty support");
  CounterEngine engine(stream, index);
  boost::random::normal_distribution<double> normal;
  for (;;) {
    typename L2Vector<Key>::map_type m;
    for (const Key& k : support) m.emplace(k, normal(engine));
    L2Vector<Key> v(std::move(m));
    if (v.squared_norm() > 0.0) return v.normalized();
  }
}

template <class Key>
struct IntersectionCandidate {
  L2Vector<Key> point;
  /// ||point - p_i|| with p_i the projection onto family[i], verified to lie
  /// in that set by direct evaluation; +inf when the check fails.
  std::vector<double> distances;
  double max_distance = std::numeric_limits<double>::infinity();
  std::size_t seed = 0;
  std::size_t iterations = 0;
};

/// Runs averaged projections from each seed and returns the best point found,
/// ordered by (max distance, seed index).
template <DiscreteGroup G>
IntersectionCandidate<typename G::element_type> search_intersection(
    const G& group, const std::vector<TranslatedSet<G>>& family,
    const std::vector<L2Vector<typename G::element_type>>& seeds,
    std::size_t iterations, ActionConvention convention, double stop_below = 1e-10) {
  using Key = typename G::element_type;
  IntersectionCandidate<Key> best;
  auto evaluate = [&](const L2Vector<Key>& m, std::vector<L2Vector<Key>>& proj) {
    std::vector<double> d(family.size(), std::numeric_limits<double>::infinity());
    proj.clear();
    for (std::size_t i = 0; i < family.size(); ++i) {
      auto p = project(group, family[i], m, convention);
      if (p && contains(group, family[i], *p, convention)) {
        d[i] = distance(m, *p);
        proj.push_back(std::move(*p));
      }
    }
    return d;
  };
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    L2Vector<Key> m = seeds[s].normalized();
    std::vector<L2Vector<Key>> proj;
    for (std::size_t it = 0; it <= iterations; ++it) {
      std::vector<double> d = evaluate(m, proj);
      const double worst = *std::max_element(d.begin(), d.end());
      if (worst < best.max_distance) {
        best = {m, d, worst, s, it};
      }
      if (worst < stop_below || proj.size() != family.size() || it == iterations) {
        break;
      }
      L2Vector<Key> sum;
      for (const auto& p : proj) sum = sum + p;
      if (sum.squared_norm() == 0.0) break;
      m = sum.normalized();
    }
  }
  return best;
}

}  // namespace conclab
