#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "conclab/monte_carlo.hpp"
#include "conclab/sphere_measure.hpp"

using namespace conclab;
using namespace conclab::mc;
constexpr double kPi = std::numbers::pi;

TEST_CASE("sphere samples are unit vectors with the right moments") {
  const SampleStream s{1, 0};
  const std::uint64_t count = 1'000'000;
  std::vector<double> x(10);
  double sum = 0, sum2 = 0, sum4 = 0, max_dev = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    sample_sphere_point(9, s, i, x);
    double norm2 = 0;
    for (double v : x) norm2 += v * v;
    max_dev = std::max(max_dev, std::fabs(std::sqrt(norm2) - 1));
    sum += x[0];
    sum2 += x[0] * x[0];
    sum4 += x[0] * x[0] * x[0] * x[0];
  }
  const double n = static_cast<double>(count);
  CHECK(max_dev <= 1e-12);
  // E x1 = 0 with Var x1 = 1/10; E x1^2 = 1/10 with Var = E x1^4 - 1/100.
  CHECK(std::fabs(sum / n) <= 4 * std::sqrt(0.1 / n));
  const double var2 = sum4 / n - 0.01;
  CHECK(std::fabs(sum2 / n - 0.1) <= 4 * std::sqrt(var2 / n));
}

TEST_CASE("streams are pure functions of (seed, stream, index)") {
  const SampleStream s{99, 5};
  const auto a = sample_sphere(4, s, 100);
  const auto b = sample_sphere(4, s, 100);
  CHECK(a == b);
  const auto c = sample_sphere(4, s.substream(1), 100);
  CHECK(a != c);
  std::vector<double> x(5);
  sample_sphere_point(4, s, 37, x);
  CHECK(x == a[37]);
  CHECK_THROWS_AS(sample_sphere(1000, s, 1000, 10'000), std::length_error);
}

TEST_CASE("estimates split and pool exactly") {
  const sphere::SphereQuery q{10, 13, 0.4};
  const SampleStream s{3, 1};
  const auto whole = estimate_tube_measure(q, s, 30000);
  const auto left = estimate_tube_measure(q, s, 12345);
  const auto right = estimate_tube_measure(q, s, 30000 - 12345, 12345);
  CHECK(pool(left, right) == whole);
  CHECK(pool(right, left) == whole);
  CHECK(whole.std_error == doctest::Approx(std::sqrt(whole.mean * (1 - whole.mean) / 30000)));
}

TEST_CASE("tube estimate agrees with the exact measure") {
  const sphere::SphereQuery q{10, 13, 0.4};
  const auto e = estimate_tube_measure(q, {42, 0}, 1'000'000);
  CHECK(std::fabs(e.mean - sphere::tube_measure(q).value) <= 3 * e.std_error);
  CHECK(estimate_tube_measure({4, 9, kPi / 2}, {42, 1}, 1000).mean == 1.0);
  CHECK(estimate_tube_measure({6, 6, 0.1}, {42, 2}, 1000).mean == 1.0);
}

TEST_CASE("degenerate comparisons use the exact Bernoulli error") {
  const auto e = Estimate::from_counts(0, 1'000'000);
  CHECK(e.std_error == 0.0);
  CHECK(agrees_with(e, 1e-9));
  CHECK_FALSE(agrees_with(e, 1e-3));
  CHECK(comparison_std_error(e, 0.25) == doctest::Approx(std::sqrt(0.25 * 0.75 / 1e6)));
}

TEST_CASE("cylinder estimate") {
  const int n = 6;
  const double r = 1.0, eps = 0.3;
  const auto e = estimate_cylinder_measure(n, r, eps, {5, 0}, 1'000'000);
  const double exact = sphere::cap_measure(n, r).value * sphere::tube_measure({n, n + 1, eps}).value;
  CHECK(std::fabs(e.mean - exact) <= 3 * e.std_error);

  const auto full = estimate_cylinder_measure(n, kPi, eps, {5, 1}, 200000);
  CHECK(agrees_with(full, sphere::tube_measure({n, n + 1, eps}).value));
  CHECK(estimate_cylinder_measure(n, r, 0.0, {5, 2}, 1000).mean == 0.0);
}

TEST_CASE("fibre inequality") {
  const auto full = check_fibre_inequality(4, 7, kPi, 0.3, {8, 0}, 200000);
  CHECK_FALSE(full.violation);
  CHECK(full.rhs == doctest::Approx(sphere::tube_measure({4, 7, 0.3}).value));
  const auto r = check_fibre_inequality(5, 8, 0.9, 0.35, {8, 1}, 1'000'000);
  CHECK_FALSE(r.violation);
  CHECK(r.rhs == doctest::Approx(sphere::cap_measure(5, 0.9).value *
                                 sphere::tube_measure({5, 8, 0.35}).value));
  const auto wide = check_fibre_inequality(5, 8, 0.9, 1.5, {8, 2}, 100000);
  CHECK(wide.lhs.mean > 0.9);
  CHECK_THROWS_AS(check_fibre_inequality(5, 5, 0.9, 0.3, {8, 3}, 10), std::domain_error);
}
