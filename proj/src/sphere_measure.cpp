#include "conclab/sphere_measure.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace conclab::sphere {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// log(max(0, 1 - c1 exp(-rate))).
double log_levy_factor(double c1, double rate) {
  const double log_t = std::log(c1) - rate;
  if (log_t >= 0.0) return -INFINITY;
  return log1m_exp(log_t);
}

}  // namespace

void SphereQuery::validate() const {
  if (n < 0 || N < n) {
    throw std::domain_error("sphere query: need 0 <= n <= N, got n=" +
                            std::to_string(n) + " N=" + std::to_string(N));
  }
  if (!(epsilon >= 0.0 && epsilon <= kPi)) {
    throw std::domain_error("sphere query: epsilon outside [0, pi]");
  }
}

void LevyConstants::validate() const {
  if (!(std::isfinite(c1) && c1 > 0.0 && std::isfinite(c2) && c2 > 0.0)) {
    throw std::domain_error("Levy constants must be finite and positive");
  }
}

MeasureValue MeasureValue::from_log(double log_value) {
  if (std::isnan(log_value) || log_value > 0.0) {
    throw std::domain_error("measure log value must be <= 0");
  }
  return {std::exp(log_value), log_value};
}

MeasureValue MeasureValue::from_value(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("measure value must lie in [0,1]");
  }
  return {value, std::log(value)};
}

MeasureValue MeasureValue::complement() const {
  if (log_value == -INFINITY) return {1.0, 0.0};
  return from_log(log1m_exp(log_value));
}

MeasureValue cap_measure(int n, double r) {
  if (n < 1) throw std::domain_error("cap_measure: n must be >= 1");
  if (!(r >= 0.0 && r <= kPi)) {
    throw std::domain_error("cap_measure: radius outside [0, pi]");
  }
  if (r > kHalfPi) return cap_measure(n, kPi - r).complement();
  if (r == 0.0) return {0.0, -INFINITY};
  const double s = std::sin(r);
  const double c = std::cos(r);
  const double log_i =
      log_regularized_incomplete_beta(s * s, c * c, 0.5 * n, 0.5);
  return MeasureValue::from_log(std::log(0.5) + log_i);
}

MeasureValue tube_measure(const SphereQuery& q) {
  q.validate();
  if (q.epsilon > kHalfPi) {
    throw std::domain_error("tube_measure: epsilon must be <= pi/2");
  }
  if (q.n == q.N || q.epsilon == kHalfPi) return {1.0, 0.0};
  if (q.epsilon == 0.0) return {0.0, -INFINITY};
  const double s = std::sin(q.epsilon);
  const double c = std::cos(q.epsilon);
  return MeasureValue::from_log(log_regularized_incomplete_beta(
      s * s, c * c, 0.5 * (q.N - q.n), 0.5 * (q.n + 1)));
}

double levy_lower_bound(int n, double epsilon, const LevyConstants& c) {
  c.validate();
  if (n < 0) throw std::domain_error("levy_lower_bound: n must be >= 0");
  if (!(epsilon > 0.0)) {
    throw std::domain_error("levy_lower_bound: epsilon must be positive");
  }
  return std::max(0.0,
                  1.0 - c.c1 * std::exp(-c.c2 * epsilon * epsilon * (n + 1)));
}

RecursiveBound recursive_tube_lower_bound(const SphereQuery& q,
                                          const LevyConstants& c) {
  q.validate();
  c.validate();
  const int k = q.codimension();
  if (k < 1) {
    throw std::domain_error("recursive bound: need N - n >= 1");
  }
  if (!(q.epsilon > 0.0 && q.epsilon < kHalfPi)) {
    throw std::domain_error("recursive bound: epsilon must lie in (0, pi/2)");
  }
  const double step2 = q.epsilon * q.epsilon / k;
  double log_product = 0.0;
  for (int j = 1; j <= k && log_product > -INFINITY; ++j) {
    log_product += log_levy_factor(c.c1, c.c2 * step2 * (q.n + j));
  }
  const double log_simplified =
      k * log_levy_factor(c.c1, c.c2 * q.epsilon * q.epsilon * q.n / k);
  return {MeasureValue::from_log(log_product),
          MeasureValue::from_log(log_simplified)};
}

SubexponentialRatio tube_decay_ratio(int n, int k, double epsilon,
                                     double c_decay) {
  if (n < 1 || k < 1) {
    throw std::domain_error("tube_decay_ratio: n and k must be positive");
  }
  if (!(epsilon > 0.0) || !(c_decay > 0.0)) {
    throw std::domain_error("tube_decay_ratio: epsilon and C must be positive");
  }
  const MeasureValue tube = tube_measure({n, n + k, epsilon});
  SubexponentialRatio out;
  out.log_ratio = -c_decay * n - tube.log_value;
  // Outside this window exp() overflows or loses the value to subnormals.
  if (out.log_ratio < 709.0 && out.log_ratio > -708.0) {
    out.ratio = std::exp(out.log_ratio);
  }
  return out;
}

}  // namespace conclab::sphere
