#include "conclab/monte_carlo.hpp"

#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conclab::mc {
namespace {

using Normal = boost::random::normal_distribution<double>;

// Squared norms of the leading `head` and trailing `tail` coordinates of one
// Gaussian draw in R^{head+tail}; redrawn until the vector is nonzero.
struct SplitNorms {
  double head2 = 0.0;
  double tail2 = 0.0;
  double first = 0.0;  // leading coordinate

  double total2() const { return head2 + tail2; }
};

SplitNorms draw_split(int head, int tail, const SampleStream& stream,
                      std::uint64_t index) {
  CounterEngine engine(stream, index);
  Normal normal;
  for (;;) {
    SplitNorms s;
    for (int i = 0; i < head; ++i) {
      const double z = normal(engine);
      if (i == 0) s.first = z;
      s.head2 += z * z;
    }
    for (int i = 0; i < tail; ++i) {
      const double z = normal(engine);
      s.tail2 += z * z;
    }
    if (s.total2() > 0.0) return s;
  }
}

// Geodesic distance from the normalized draw to the span of the head block.
double distance_to_head_sphere(const SplitNorms& s) {
  return std::asin(std::min(1.0, std::sqrt(s.tail2 / s.total2())));
}

// Angle between the normalized head block and e_1.
double head_angle(const SplitNorms& s) {
  return std::acos(std::clamp(s.first / std::sqrt(s.head2), -1.0, 1.0));
}

void check_count(std::uint64_t count) {
  if (count == 0) throw std::domain_error("sample count must be positive");
}

}  // namespace

Estimate Estimate::from_counts(std::uint64_t hits, std::uint64_t samples) {
  if (samples == 0 || hits > samples) {
    throw std::domain_error("estimate: need 0 <= hits <= samples, samples > 0");
  }
  Estimate e;
  e.hits = hits;
  e.samples = samples;
  e.mean = static_cast<double>(hits) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(samples));
  return e;
}

double comparison_std_error(const Estimate& e, double exact) {
  const double null_error =
      std::sqrt(exact * (1.0 - exact) / static_cast<double>(e.samples));
  return std::max(e.std_error, null_error);
}

bool agrees_with(const Estimate& e, double exact, double z) {
  return std::fabs(e.mean - exact) <= z * comparison_std_error(e, exact);
}

Estimate pool(const Estimate& a, const Estimate& b) {
  return Estimate::from_counts(a.hits + b.hits, a.samples + b.samples);
}

void sample_sphere_point(int n, const SampleStream& stream, std::uint64_t index,
                         std::span<double> out) {
  if (n < 0 || out.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("sample_sphere_point: output must hold n+1 values");
  }
  CounterEngine engine(stream, index);
  Normal normal;
  for (;;) {
    double norm2 = 0.0;
    for (double& x : out) {
      x = normal(engine);
      norm2 += x * x;
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& x : out) x *= inv;
      return;
    }
  }
}

std::vector<std::vector<double>> sample_sphere(int n, const SampleStream& stream,
                                               std::size_t count,
                                               std::size_t max_doubles) {
  if (n < 1) throw std::domain_error("sample_sphere: n must be >= 1");
  check_count(count);
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  if (count > max_doubles / dim) {
    throw std::length_error("sample_sphere: request exceeds memory budget");
  }
  std::vector<std::vector<double>> points(count, std::vector<double>(dim));
  for (std::size_t i = 0; i < count; ++i) {
    sample_sphere_point(n, stream, i, points[i]);
  }
  return points;
}

Estimate estimate_tube_measure(const sphere::SphereQuery& q,
                               const SampleStream& stream, std::uint64_t count,
                               std::uint64_t first_index) {
  q.validate();
  check_count(count);
  if (q.n == q.N || q.epsilon >= std::numbers::pi / 2.0) {
    return Estimate::from_counts(count, count);
  }
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const SplitNorms s = draw_split(q.n + 1, q.N - q.n, stream, first_index + i);
    if (distance_to_head_sphere(s) <= q.epsilon) ++hits;
  }
  return Estimate::from_counts(hits, count);
}

Estimate estimate_cylinder_measure(int n, double cap_radius, double epsilon,
                                   const SampleStream& stream,
                                   std::uint64_t count,
                                   std::uint64_t first_index) {
  if (n < 1) throw std::domain_error("cylinder: n must be >= 1");
  if (!(cap_radius >= 0.0 && cap_radius <= std::numbers::pi)) {
    throw std::domain_error("cylinder: cap radius outside [0, pi]");
  }
  if (!(epsilon >= 0.0 && epsilon <= std::numbers::pi / 2.0)) {
    throw std::domain_error("cylinder: epsilon outside [0, pi/2]");
  }
  check_count(count);
  if (epsilon == 0.0) return Estimate::from_counts(0, count);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t index = first_index + i;
    SplitNorms s = draw_split(n + 1, 1, stream, index);
    // Radial projection undefined at the poles: redraw from a shifted index.
    for (std::uint64_t retry = 1; s.head2 < 1e-24 * s.total2(); ++retry) {
      s = draw_split(n + 1, 1, stream.substream(retry << 32), index);
    }
    if (distance_to_head_sphere(s) <= epsilon && head_angle(s) <= cap_radius) {
      ++hits;
    }
  }
  return Estimate::from_counts(hits, count);
}

FibreReport check_fibre_inequality(int n, int N, double cap_radius,
                                   double epsilon, const SampleStream& stream,
                                   std::uint64_t count) {
  if (n < 1 || N <= n) throw std::domain_error("fibre: need 1 <= n < N");
  if (!(cap_radius >= 0.0 && cap_radius <= std::numbers::pi)) {
    throw std::domain_error("fibre: cap radius outside [0, pi]");
  }
  if (!(epsilon >= 0.0 && epsilon <= std::numbers::pi / 2.0)) {
    throw std::domain_error("fibre: epsilon outside [0, pi/2]");
  }
  check_count(count);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const SplitNorms s = draw_split(n + 1, N - n, stream, i);
    double distance = 0.0;
    if (s.head2 == 0.0) {
      distance = std::numbers::pi / 2.0;
    } else {
      // The nearest point of a cap to the direction p lies on the geodesic
      // towards its centre, at angular distance max(0, angle - radius).
      const double gap = std::max(0.0, head_angle(s) - cap_radius);
      if (gap == 0.0) {
        distance = distance_to_head_sphere(s);
      } else {
        const double inner = std::sqrt(s.head2 / s.total2()) * std::cos(gap);
        distance = std::acos(std::clamp(inner, -1.0, 1.0));
      }
    }
    if (distance <= epsilon) ++hits;
  }
  FibreReport report;
  report.lhs = Estimate::from_counts(hits, count);
  report.rhs = sphere::cap_measure(n, cap_radius).value *
               sphere::tube_measure({n, N, epsilon}).value;
  report.margin = report.lhs.mean - report.rhs;
  report.violation =
      report.lhs.mean + 4.0 * comparison_std_error(report.lhs, report.rhs) <
      report.rhs;
  return report;
}

}  // namespace conclab::mc
