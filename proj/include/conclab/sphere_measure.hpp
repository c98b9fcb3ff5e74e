#pragma once

// Exact normalized measures on round spheres S^n (the unit sphere of R^{n+1})
// with geodesic distances: caps, tubes around an equatorial subsphere, and
// the Levy-type lower bounds obtained by stacking spherical cylinders.

#include <cmath>
#include <numbers>
#include <optional>

#include "conclab/incomplete_beta.hpp"

namespace conclab::sphere {

/// Subsphere S^n sitting equatorially inside S^N, with a geodesic radius.
struct SphereQuery {
  int n = 0;
  int N = 0;
  double epsilon = 0.0;

  /// Throws std::domain_error unless 0 <= n <= N and 0 <= epsilon <= pi.
  void validate() const;
  int codimension() const { return N - n; }
};

/// Constants of the concentration inequality
///   mu(O_eps(S^n) in S^{n+1}) >= 1 - c1 exp(-c2 eps^2 (n+1)).
///
/// The defaults bound both polar caps at once (twice the one-cap constant
/// sqrt(pi/8)), which is what makes the inequality hold for every n and eps.
struct LevyConstants {
  double c1 = std::sqrt(std::numbers::pi / 2.0);
  double c2 = 0.5;

  void validate() const;
};

/// A probability carried together with its natural logarithm.
///
/// Below 1e-300 the log is authoritative; `value` may underflow to zero.
struct MeasureValue {
  double value = 0.0;
  double log_value = -INFINITY;

  static MeasureValue from_log(double log_value);
  static MeasureValue from_value(double value);
  /// 1 - *this, computed from the log representation.
  MeasureValue complement() const;
};

/// Normalized measure of a closed geodesic ball of radius r on S^n.
MeasureValue cap_measure(int n, double r);

/// Normalized measure of the closed geodesic eps-neighbourhood of the
/// equatorial S^n inside S^N: I_{sin^2 eps}((N-n)/2, (n+1)/2).
///
/// Equals 1 when n == N or eps == pi/2. Requires eps <= pi/2.
MeasureValue tube_measure(const SphereQuery& q);

/// max(0, 1 - c1 exp(-c2 eps^2 (n+1))), a lower bound for
/// tube_measure({n, n+1, eps}).
double levy_lower_bound(int n, double epsilon, const LevyConstants& c = {});

struct RecursiveBound {
  /// prod_{j=1..k} max(0, 1 - c1 exp(-c2 (eps^2/k) (n+j))): the measure
  /// guaranteed for k stacked cylinders of height eps/sqrt(k).
  MeasureValue product;
  /// max(0, 1 - c1 exp(-c2 eps^2 n/k))^k; never exceeds `product`.
  MeasureValue simplified;
};

/// Lower bounds for tube_measure(q) built from k = N - n cylinder steps.
///
/// Restricted to 0 < eps < pi/2: at eps = pi/2 the cylinder height reaches
/// the poles and the nearest-point decomposition degenerates.
RecursiveBound recursive_tube_lower_bound(const SphereQuery& q,
                                          const LevyConstants& c = {});

struct SubexponentialRatio {
  double log_ratio = 0.0;
  /// exp(log_ratio) when it is a finite, nonzero double.
  std::optional<double> ratio;
};

/// exp(-c_decay n) / tube_measure({n, n+k, eps}) evaluated in the log domain.
/// Tends to zero along any k_n with k_n/n -> 0.
SubexponentialRatio tube_decay_ratio(int n, int k, double epsilon,
                                     double c_decay);

}  // namespace conclab::sphere
