#pragma once

// Reproducible Monte Carlo estimates of neighbourhood measures on spheres.
//
// Points on S^n are normalized standard Gaussian vectors in R^{n+1}. Sample
// number i of a stream is drawn from CounterEngine(stream, first_index + i),
// so an estimate over [0, c1 + c2) equals the pooled estimates over [0, c1)
// and [c1, c1 + c2) bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "conclab/random_stream.hpp"
#include "conclab/sphere_measure.hpp"

namespace conclab::mc {

/// Bernoulli proportion with its normal-approximation standard error.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;

  static Estimate from_counts(std::uint64_t hits, std::uint64_t samples);
  bool operator==(const Estimate&) const = default;
};

/// Standard error used when comparing an estimate with a known probability:
/// the larger of the estimate's own error and sqrt(p(1-p)/samples). The
/// second term keeps the comparison meaningful when every sample agrees and
/// the empirical error collapses to zero.
double comparison_std_error(const Estimate& e, double exact);

/// |e.mean - exact| <= z * comparison_std_error(e, exact).
bool agrees_with(const Estimate& e, double exact, double z = 4.0);

/// Pools independent estimates by summing counts; associative, commutative.
Estimate pool(const Estimate& a, const Estimate& b);

/// Writes the sample with the given index on S^n into `out` (size n+1).
void sample_sphere_point(int n, const SampleStream& stream, std::uint64_t index,
                         std::span<double> out);

/// `count` i.i.d. uniform points of S^n. Throws std::length_error when
/// count*(n+1) exceeds `max_doubles`.
std::vector<std::vector<double>> sample_sphere(
    int n, const SampleStream& stream, std::size_t count,
    std::size_t max_doubles = std::size_t{1} << 28);

/// Fraction of points x of S^N whose geodesic distance to the equatorial S^n,
/// arcsin of the norm of the last N - n coordinates, is at most epsilon.
Estimate estimate_tube_measure(const sphere::SphereQuery& q,
                               const SampleStream& stream, std::uint64_t count,
                               std::uint64_t first_index = 0);

/// Fraction of points of S^{n+1} inside the spherical cylinder over the cap
/// of radius cap_radius (centred at e_1) of the equatorial S^n, with height
/// epsilon.
Estimate estimate_cylinder_measure(int n, double cap_radius, double epsilon,
                                   const SampleStream& stream,
                                   std::uint64_t count,
                                   std::uint64_t first_index = 0);

struct FibreReport {
  Estimate lhs;       ///< MC estimate of mu_N(O_eps(A) in S^N)
  double rhs = 0.0;   ///< cap_measure(n, r) * tube_measure(n, N, eps)
  double margin = 0.0;  ///< lhs.mean - rhs
  bool violation = false;  ///< lhs.mean + 4 comparison_std_error < rhs
};

/// Checks mu_N(O_eps(A)) >= mu_n(A) mu_N(O_eps(S^n)) for the cap A of radius
/// cap_radius in S^n, n < N.
FibreReport check_fibre_inequality(int n, int N, double cap_radius,
                                   double epsilon, const SampleStream& stream,
                                   std::uint64_t count);

}  // namespace conclab::mc
