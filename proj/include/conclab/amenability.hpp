#pragma once

// Folner sets, almost invariant unit vectors in l2(G), orbit-span dimension
// chains, and a search for points common to the eps-neighbourhoods of the
// translates of a cover element.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "conclab/cover_sets.hpp"
#include "conclab/groups.hpp"
#include "conclab/l2_vector.hpp"
#include "conclab/random_stream.hpp"

namespace conclab::amenability {

/// A finite set K tested against a generator set D.
template <class Key>
struct FolnerCandidate {
  std::vector<Key> elements;  ///< sorted, distinct
  std::vector<Key> generators;
};

/// Thrown for groups whose candidate families stay far from invariant.
class NoFolnerChain : public std::runtime_error {
 public:
  NoFolnerChain(const std::string& what, double observed_lower_bound)
      : std::runtime_error(what), observed_lower_bound_(observed_lower_bound) {}
  double observed_lower_bound() const { return observed_lower_bound_; }

 private:
  double observed_lower_bound_;
};

template <class Key>
std::vector<Key> sorted_unique(std::vector<Key> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// D.K = { g k : g in D, k in K }.
template <DiscreteGroup G>
std::vector<typename G::element_type> product_set(
    const G& group, const std::vector<typename G::element_type>& d,
    const std::vector<typename G::element_type>& k) {
  std::vector<typename G::element_type> out;
  out.reserve(d.size() * k.size());
  for (const auto& g : d) {
    for (const auto& x : k) out.push_back(group.multiply(g, x));
  }
  return sorted_unique(std::move(out));
}

template <class Key>
std::size_t symmetric_difference_size(const std::vector<Key>& x,
                                      const std::vector<Key>& y) {
  std::size_t common = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common, ++i, ++j;
    }
  }
  return x.size() + y.size() - 2 * common;
}

template <class Key>
bool is_subset(const std::vector<Key>& x, const std::vector<Key>& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

/// |K symmetric-difference D.K| / |K|.
template <DiscreteGroup G>
double boundary_ratio(const G& group, const FolnerCandidate<typename G::element_type>& k) {
  if (k.elements.empty()) throw std::invalid_argument("Folner candidate is empty");
  const auto dk = product_set(group, k.generators, k.elements);
  return static_cast<double>(symmetric_difference_size(k.elements, dk)) /
         static_cast<double>(k.elements.size());
}

/// Word-metric ball of the given radius with respect to D and D^{-1}.
/// Throws std::length_error once it would exceed `max_elements`.
template <DiscreteGroup G>
std::vector<typename G::element_type> word_ball(
    const G& group, const std::vector<typename G::element_type>& d, int radius,
    std::size_t max_elements = 4'000'000) {
  using Key = typename G::element_type;
  std::vector<Key> steps;
  for (const Key& g : d) {
    steps.push_back(g);
    steps.push_back(group.inverse(g));
  }
  std::set<Key> seen{group.identity()};
  std::vector<Key> frontier{group.identity()};
  for (int r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<Key> next;
    for (const Key& x : frontier) {
      for (const Key& s : steps) {
        Key y = group.multiply(s, x);
        if (seen.insert(y).second) next.push_back(std::move(y));
        if (seen.size() > max_elements) {
          throw std::length_error("word ball exceeds " + std::to_string(max_elements) +
                                  " elements");
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

namespace detail {

// Boxes when D is the standard generating set, so that D.K_n is inside
// K_{n+1}:
//   Z^d:        [0,n)^d
//   Heisenberg: [0,n)^2 x [0,n^2)   (x (a,b,c) = (a+1, b, c+b))
//   Z/m:        {0, ..., min(n,m)-1}
template <DiscreteGroup G>
std::optional<std::vector<typename G::element_type>> standard_box(
    const G& group, const std::vector<typename G::element_type>& d, int n,
    std::size_t max_elements) {
  using Key = typename G::element_type;
  if (sorted_unique(d) != sorted_unique(group.standard_generators())) return std::nullopt;
  double size = 0.0;
  if constexpr (std::is_same_v<G, IntegerLattice>) {
    size = std::pow(static_cast<double>(n), group.dim());
  } else if constexpr (std::is_same_v<G, HeisenbergGroup>) {
    size = std::pow(static_cast<double>(n), 4);
  } else {
    size = n;
  }
  if (size > static_cast<double>(max_elements)) {
    throw std::length_error("box exceeds " + std::to_string(max_elements) + " elements");
  }
  std::vector<Key> out;
  if constexpr (std::is_same_v<G, IntegerLattice>) {
    const int dim = group.dim();
    Key x(dim, 0);
    for (;;) {
      out.push_back(x);
      int j = dim - 1;
      while (j >= 0 && ++x[j] == n) x[j--] = 0;
      if (j < 0) break;
    }
  } else if constexpr (std::is_same_v<G, HeisenbergGroup>) {
    const std::int64_t m = n;
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = 0; b < m; ++b)
        for (std::int64_t c = 0; c < m * m; ++c) out.push_back({a, b, c});
  } else if constexpr (std::is_same_v<G, CyclicGroup>) {
    const std::int64_t top = std::min<std::int64_t>(n, group.modulus());
    for (std::int64_t r = 0; r < top; ++r) out.push_back(r);
  } else {
    return std::nullopt;
  }
  return sorted_unique(std::move(out));
}

}  // namespace detail

/// Nested candidates K_1, ..., K_length with D.K_n inside K_{n+1}: boxes for
/// the standard generators of Z^d, the Heisenberg group and Z/m, word balls
/// otherwise. Throws NoFolnerChain for non-amenable groups and
/// std::length_error when the chain would hold more than `max_total` elements.
template <DiscreteGroup G>
std::vector<FolnerCandidate<typename G::element_type>> folner_chain(
    const G& group, const std::vector<typename G::element_type>& d, int length,
    std::size_t max_total = 4'000'000) {
  using Key = typename G::element_type;
  if (length < 1) throw std::invalid_argument("chain length must be >= 1");
  for (const Key& g : d) {
    if (g == group.identity()) throw std::invalid_argument("generator is the identity");
  }
  if (!group.is_amenable()) {
    double lower = std::numeric_limits<double>::infinity();
    for (int r = 1; r <= std::min(length, 6); ++r) {
      lower = std::min(lower,
                       boundary_ratio(group, {word_ball(group, d, r, max_total), d}));
    }
    throw NoFolnerChain(
        "no Folner chain for " + group.name() +
            ": candidate family has ratio bounded below (observed >= " +
            std::to_string(lower) + ")",
        lower);
  }
  std::vector<FolnerCandidate<Key>> chain;
  std::size_t total = 0;
  for (int n = 1; n <= length; ++n) {
    auto box = detail::standard_box(group, d, n, max_total - total);
    chain.push_back({box ? std::move(*box) : word_ball(group, d, n, max_total - total), d});
    total += chain.back().elements.size();
    if (total > max_total) {
      throw std::length_error("Folner chain exceeds " + std::to_string(max_total) +
                              " elements");
    }
  }
  return chain;
}

/// Indices n with D.K_n not inside K_{n+1} or K_n not inside K_{n+1}.
template <DiscreteGroup G>
std::vector<std::size_t> nesting_failures(
    const G& group, const std::vector<FolnerCandidate<typename G::element_type>>& chain) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto& k = chain[i];
    const auto& next = chain[i + 1].elements;
    if (!is_subset(k.elements, next) ||
        !is_subset(product_set(group, k.generators, k.elements), next)) {
      bad.push_back(i);
    }
  }
  return bad;
}

/// chi_K / sqrt|K|.
template <class Key>
L2Vector<Key> near_invariant_vector(const FolnerCandidate<Key>& k) {
  return L2Vector<Key>::normalized_indicator(k.elements);
}

/// ||pi_g f - f||^2 for f = chi_K / sqrt|K|, from the vectors.
template <DiscreteGroup G>
double displacement_squared(const G& group, const typename G::element_type& g,
                            const std::vector<typename G::element_type>& k,
                            ActionConvention conv) {
  const auto f = L2Vector<typename G::element_type>::normalized_indicator(k);
  const auto diff = act(group, g, f, conv) - f;
  return diff.squared_norm();
}

/// |gK symmetric-difference K| / |K|, by counting.
template <DiscreteGroup G>
double translate_difference_ratio(const G& group, const typename G::element_type& g,
                                  const std::vector<typename G::element_type>& k) {
  const auto gk = product_set(group, {g}, k);
  return static_cast<double>(symmetric_difference_size(sorted_unique(k), gk)) /
         static_cast<double>(k.size());
}

/// Orbit spans V_n = span{pi_g delta_e : g in K_n} along a chain.
template <class Key>
struct OrbitChain {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Key>> supports;
  std::vector<double> ratios;  ///< dims[n+1] / dims[n]
  bool dims_nondecreasing = true;
  bool nested = true;
  bool generator_invariant = true;  ///< D.supports[n] inside supports[n+1]
  std::string diagnostic;
};

/// Orbit spans over an explicit chain of candidates.
template <DiscreteGroup G>
OrbitChain<typename G::element_type> orbit_chain(
    const G& group, const std::vector<FolnerCandidate<typename G::element_type>>& chain,
    ActionConvention conv = ActionConvention::pullback) {
  using Key = typename G::element_type;
  OrbitChain<Key> out;
  const auto delta = L2Vector<Key>::delta(group.identity());
  for (const auto& k : chain) {
    // Distinct translates of a delta are orthonormal, so the span's dimension
    // is the number of distinct supports.
    std::set<Key> spots;
    for (const Key& g : k.elements) {
      spots.insert(act(group, g, delta, conv).amplitudes().begin()->first);
    }
    out.dims.push_back(spots.size());
    out.supports.push_back(k.elements);
  }
  for (std::size_t i = 0; i + 1 < out.dims.size(); ++i) {
    out.ratios.push_back(static_cast<double>(out.dims[i + 1]) /
                         static_cast<double>(out.dims[i]));
    if (out.dims[i + 1] < out.dims[i]) out.dims_nondecreasing = false;
  }
  for (std::size_t i : nesting_failures(group, chain)) {
    if (!is_subset(chain[i].elements, chain[i + 1].elements)) out.nested = false;
    out.generator_invariant = false;
  }
  return out;
}

/// Folner chain spans for amenable groups; for a free group of rank >= 2 the
/// word balls, with the non-convergence of the ratio reported in `diagnostic`.
template <DiscreteGroup G>
OrbitChain<typename G::element_type> dimension_chain_report(
    const G& group, const std::vector<typename G::element_type>& d, int length,
    ActionConvention conv = ActionConvention::pullback) {
  std::vector<FolnerCandidate<typename G::element_type>> chain;
  if (group.is_amenable()) {
    chain = folner_chain(group, d, length);
  } else {
    for (int r = 1; r <= length; ++r) chain.push_back({word_ball(group, d, r), d});
  }
  auto out = orbit_chain(group, chain, conv);
  if (!group.is_amenable() && !out.ratios.empty()) {
    out.diagnostic = "ratio does not tend to 1 for " + group.name() +
                     " (last ratio " + std::to_string(out.ratios.back()) + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Essential-set search

enum class Essentiality { essential, not_essential, inconclusive };
std::string to_string(Essentiality e);

template <class Key>
struct SearchSetup {
  std::vector<Key> support;                ///< random seeds live here
  std::vector<L2Vector<Key>> extra_seeds;  ///< e.g. near-invariant vectors
  CheckDomain<Key> domain;                 ///< for pairwise certificates
  std::vector<WitnessSpec<Key>> witnesses;
  std::size_t random_seeds = 32;
  std::size_t iterations = 200;
  SampleStream stream{};
};

template <class Key>
struct ElementReport {
  std::string name;
  Essentiality status = Essentiality::inconclusive;
  std::vector<std::string> family;  ///< labels of the translates g.A
  std::optional<IntersectionCandidate<Key>> best;
  std::optional<SeparationCertificate> certificate;
};

template <class Key>
struct EssentialReport {
  double epsilon = 0.0;
  ActionConvention convention = ActionConvention::pullback;
  std::vector<Key> translates;  ///< e followed by the elements of F
  std::vector<ElementReport<Key>> elements;
};

/// For each cover element A, decides whether the eps-neighbourhoods of
/// g.A, g in {e} and F, have a common point. "essential" needs an explicit
/// point whose distances to every g.A, realised by verified projections, are
/// all < eps; "not_essential" needs a separation certificate for some pair.
/// Anything else is "inconclusive".
template <DiscreteGroup G>
EssentialReport<typename G::element_type> essential_set_search(
    const G& group, const std::vector<ThresholdPredicate<typename G::element_type>>& cover,
    const std::vector<typename G::element_type>& f_set, double epsilon,
    const SearchSetup<typename G::element_type>& setup, ActionConvention conv) {
  using Key = typename G::element_type;
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  for (const auto& w : setup.witnesses) w.lipschitz();

  EssentialReport<Key> report;
  report.epsilon = epsilon;
  report.convention = conv;
  report.translates.push_back(group.identity());
  for (const Key& f : f_set) {
    if (std::find(report.translates.begin(), report.translates.end(), f) ==
        report.translates.end()) {
      report.translates.push_back(f);
    }
  }

  std::vector<L2Vector<Key>> seeds = setup.extra_seeds;
  if (!setup.support.empty()) {
    for (std::size_t s = 0; s < setup.random_seeds; ++s) {
      seeds.push_back(random_unit_vector(setup.support, setup.stream, s));
    }
  }

  for (std::size_t c = 0; c < cover.size(); ++c) {
    ElementReport<Key> er;
    er.name = cover[c].name;
    std::vector<TranslatedSet<G>> family;
    for (const Key& g : report.translates) {
      const std::string label =
          g == group.identity() ? cover[c].name : group.format(g) + "." + cover[c].name;
      family.push_back({g, &cover[c], label});
      er.family.push_back(label);
    }
    for (std::size_t i = 0; i < family.size() && !er.certificate; ++i) {
      for (std::size_t j = i + 1; j < family.size() && !er.certificate; ++j) {
        for (const auto& w : setup.witnesses) {
          er.certificate =
              certify_pair(group, family, i, j, w, epsilon, setup.domain, conv);
          if (er.certificate) break;
        }
      }
    }
    if (er.certificate) {
      er.status = Essentiality::not_essential;
    } else if (!seeds.empty()) {
      er.best = search_intersection(group, family, seeds, setup.iterations, conv);
      if (er.best->max_distance < epsilon) er.status = Essentiality::essential;
    }
    report.elements.push_back(std::move(er));
  }
  return report;
}

}  // namespace conclab::amenability
