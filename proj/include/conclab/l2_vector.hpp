#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include "conclab/groups.hpp"

namespace conclab {

/// Finitely supported real function on a countable index set, viewed as an
/// element of l2. Amplitudes are kept in key order; exact zeros are dropped.
/// Values are immutable; every operation returns a new vector.
template <class Key>
class L2Vector {
 public:
  using map_type = std::map<Key, double>;

  L2Vector() = default;

  explicit L2Vector(map_type amplitudes) : amplitudes_(std::move(amplitudes)) {
    std::erase_if(amplitudes_, [](const auto& kv) { return kv.second == 0.0; });
    squared_norm_ = 0.0;
    for (const auto& [key, value] : amplitudes_) squared_norm_ += value * value;
  }

  /// A rearrangement of `source`'s amplitudes onto new keys. The cached norm
  /// is inherited, so the norm is invariant bit for bit.
  static L2Vector permuted(map_type amplitudes, const L2Vector& source) {
    if (amplitudes.size() != source.amplitudes_.size()) {
      throw std::logic_error("permuted: key map is not injective");
    }
    L2Vector out;
    out.amplitudes_ = std::move(amplitudes);
    out.squared_norm_ = source.squared_norm_;
    return out;
  }

  static L2Vector delta(const Key& key) { return L2Vector(map_type{{key, 1.0}}); }

  /// Normalized indicator of a nonempty finite set.
  template <class Range>
  static L2Vector normalized_indicator(const Range& keys) {
    map_type m;
    for (const auto& k : keys) m[k] = 1.0;
    if (m.empty()) throw std::invalid_argument("indicator of an empty set");
    const double amp = 1.0 / std::sqrt(static_cast<double>(m.size()));
    for (auto& [k, v] : m) v = amp;
    return L2Vector(std::move(m));
  }

  const map_type& amplitudes() const { return amplitudes_; }
  std::size_t support_size() const { return amplitudes_.size(); }
  double squared_norm() const { return squared_norm_; }
  double norm() const { return std::sqrt(squared_norm_); }

  double amplitude(const Key& key) const {
    const auto it = amplitudes_.find(key);
    return it == amplitudes_.end() ? 0.0 : it->second;
  }

  L2Vector scaled(double factor) const {
    map_type m(amplitudes_);
    for (auto& [k, v] : m) v *= factor;
    return L2Vector(std::move(m));
  }

  L2Vector normalized() const {
    if (squared_norm_ == 0.0) throw std::domain_error("cannot normalize zero vector");
    return scaled(1.0 / norm());
  }

  /// sqrt of the sum of squared amplitudes over keys satisfying `in_set`:
  /// the norm of chi_S * f.
  template <class Pred>
  double restricted_norm(Pred&& in_set) const {
    return std::sqrt(restricted_squared_norm(std::forward<Pred>(in_set)));
  }

  /// ||chi_S * f||^2.
  template <class Pred>
  double restricted_squared_norm(Pred&& in_set) const {
    double sum = 0.0;
    for (const auto& [key, value] : amplitudes_) {
      if (in_set(key)) sum += value * value;
    }
    return sum;
  }

  /// chi_S * f.
  template <class Pred>
  L2Vector restricted(Pred&& in_set) const {
    map_type m;
    for (const auto& [key, value] : amplitudes_) {
      if (in_set(key)) m.emplace(key, value);
    }
    return L2Vector(std::move(m));
  }

  friend L2Vector operator+(const L2Vector& x, const L2Vector& y) {
    map_type m(x.amplitudes_);
    for (const auto& [key, value] : y.amplitudes_) m[key] += value;
    return L2Vector(std::move(m));
  }

  friend L2Vector operator-(const L2Vector& x, const L2Vector& y) {
    return x + y.scaled(-1.0);
  }

  friend double dot(const L2Vector& x, const L2Vector& y) {
    double sum = 0.0;
    for (const auto& [key, value] : x.amplitudes_) sum += value * y.amplitude(key);
    return sum;
  }

  friend double distance(const L2Vector& x, const L2Vector& y) {
    return (x - y).norm();
  }

  friend bool operator==(const L2Vector& x, const L2Vector& y) {
    return x.amplitudes_ == y.amplitudes_;
  }

 private:
  map_type amplitudes_;
  double squared_norm_ = 0.0;
};

/// The regular representation pi_g applied to f.
///
/// pullback: (pi_g f)(h) = f(g h), so the amplitude at w moves to g^{-1} w.
/// inverse: (pi_g f)(h) = f(g^{-1} h), so the amplitude at w moves to g w.
/// Amplitudes are permuted, never combined, so the norm is preserved exactly.
template <DiscreteGroup G>
L2Vector<typename G::element_type> act(const G& group,
                                       const typename G::element_type& g,
                                       const L2Vector<typename G::element_type>& f,
                                       ActionConvention convention) {
  using Key = typename G::element_type;
  const Key shift = convention == ActionConvention::pullback ? group.inverse(g) : g;
  typename L2Vector<Key>::map_type m;
  for (const auto& [key, value] : f.amplitudes()) {
    m.emplace(group.multiply(shift, key), value);
  }
  return L2Vector<Key>::permuted(std::move(m), f);
}

/// Membership test for the set T with ||chi_S (pi_g f)|| = ||chi_T f|| for
/// every f: T = g S under the pullback convention, T = g^{-1} S under the
/// inverse convention.
template <DiscreteGroup G, class Pred>
auto translated_set(const G& group, const typename G::element_type& g,
                    Pred in_set, ActionConvention convention) {
  using Key = typename G::element_type;
  // u in T  <=>  pull * u in S.
  const Key pull = convention == ActionConvention::pullback ? group.inverse(g) : g;
  return [group, pull, in_set](const Key& u) { return in_set(group.multiply(pull, u)); };
}

}  // namespace conclab
