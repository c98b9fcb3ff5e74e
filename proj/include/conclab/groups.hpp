#pragma once

// Finitely generated discrete groups used as index sets of l2 spaces.

#include <array>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conclab/reduced_word.hpp"

namespace conclab {

/// How a group element acts on functions on the group.
///   pullback: (g f)(h) = f(g h)       (a right action: g1(g2 f) = (g2 g1) f)
///   inverse:  (g f)(h) = f(g^{-1} h)  (the left regular representation)
enum class ActionConvention { pullback, inverse };

std::string to_string(ActionConvention c);
/// Accepts "pullback" or "inverse"; throws std::invalid_argument otherwise.
ActionConvention parse_convention(std::string_view text);

template <class G>
concept DiscreteGroup =
    std::totally_ordered<typename G::element_type> &&
    requires(const G& grp, const typename G::element_type& x,
             std::string_view text) {
      { grp.identity() } -> std::convertible_to<typename G::element_type>;
      { grp.multiply(x, x) } -> std::convertible_to<typename G::element_type>;
      { grp.inverse(x) } -> std::convertible_to<typename G::element_type>;
      { grp.format(x) } -> std::convertible_to<std::string>;
      { grp.parse(text) } -> std::convertible_to<typename G::element_type>;
      { grp.standard_generators() }
          -> std::convertible_to<std::vector<typename G::element_type>>;
      { grp.name() } -> std::convertible_to<std::string>;
      { grp.is_amenable() } -> std::convertible_to<bool>;
      { grp.order() } -> std::convertible_to<std::optional<std::uint64_t>>;
    };

/// Z^d with unit generators e_1..e_d. Elements print as "(x1,x2,...)".
class IntegerLattice {
 public:
  using element_type = std::vector<std::int64_t>;

  explicit IntegerLattice(int dim);

  int dim() const { return dim_; }
  element_type identity() const { return element_type(dim_, 0); }
  element_type multiply(const element_type& x, const element_type& y) const;
  element_type inverse(const element_type& x) const;
  std::string format(const element_type& x) const;
  element_type parse(std::string_view text) const;
  std::vector<element_type> standard_generators() const;
  std::string name() const;
  bool is_amenable() const { return true; }
  std::optional<std::uint64_t> order() const { return std::nullopt; }

 private:
  int dim_;
};

/// Discrete Heisenberg group H_3(Z): (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
/// Standard generators x = (1,0,0), y = (0,1,0).
class HeisenbergGroup {
 public:
  using element_type = std::array<std::int64_t, 3>;

  element_type identity() const { return {0, 0, 0}; }
  element_type multiply(const element_type& x, const element_type& y) const;
  element_type inverse(const element_type& x) const;
  std::string format(const element_type& x) const;
  element_type parse(std::string_view text) const;
  std::vector<element_type> standard_generators() const;
  std::string name() const { return "heisenberg"; }
  bool is_amenable() const { return true; }
  std::optional<std::uint64_t> order() const { return std::nullopt; }
};

/// Free group on `rank` generators a, b, c, ...; elements print as words.
class FreeGroup {
 public:
  using element_type = ReducedWord;

  explicit FreeGroup(int rank = 2);

  int rank() const { return rank_; }
  element_type identity() const { return {}; }
  element_type multiply(const element_type& x, const element_type& y) const {
    return x * y;
  }
  element_type inverse(const element_type& x) const { return x.inverse(); }
  std::string format(const element_type& x) const { return x.str(); }
  element_type parse(std::string_view text) const;
  std::vector<element_type> standard_generators() const;
  std::string name() const;
  bool is_amenable() const { return rank_ == 1; }
  std::optional<std::uint64_t> order() const { return std::nullopt; }

 private:
  int rank_;
};

/// Z/m with generator 1; elements are residues in [0, m).
class CyclicGroup {
 public:
  using element_type = std::int64_t;

  explicit CyclicGroup(std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  element_type identity() const { return 0; }
  element_type multiply(element_type x, element_type y) const;
  element_type inverse(element_type x) const;
  std::string format(element_type x) const { return std::to_string(x); }
  element_type parse(std::string_view text) const;
  std::vector<element_type> standard_generators() const { return {1 % modulus_}; }
  std::string name() const;
  bool is_amenable() const { return true; }
  std::optional<std::uint64_t> order() const {
    return static_cast<std::uint64_t>(modulus_);
  }

 private:
  std::int64_t modulus_;
};

static_assert(DiscreteGroup<IntegerLattice>);
static_assert(DiscreteGroup<HeisenbergGroup>);
static_assert(DiscreteGroup<FreeGroup>);
static_assert(DiscreteGroup<CyclicGroup>);

}  // namespace conclab
