#include "conclab/incomplete_beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace conclab {
namespace {

constexpr int kMaxIterations = 1'000'000;
constexpr long double kTolerance = 1e-14L;
constexpr long double kTiny = 1e-300L;

void check_arguments(double x, double a, double b) {
  if (!std::isfinite(x) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("incomplete beta: non-finite argument");
  }
  if (x < 0.0 || x > 1.0) {
    throw std::domain_error("incomplete beta: x = " + std::to_string(x) +
                            " outside [0,1]");
  }
  if (a <= 0.0 || b <= 0.0) {
    throw std::domain_error("incomplete beta: shapes must be positive");
  }
  if (a > kMaxBetaShape || b > kMaxBetaShape) {
    throw std::domain_error("incomplete beta: shape exceeds 1e7");
  }
}

// Reentrant log-gamma; the plain lgamma writes the global signgam.
long double log_gamma(long double z) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgammal_r(z, &sign);
#else
  return std::lgamma(z);
#endif
}

// log(x^a y^b / (a B(a,b))), y = 1 - x.
long double log_prefactor(long double x, long double y, long double a,
                          long double b) {
  const long double log_beta =
      log_gamma(a) + log_gamma(b) - log_gamma(a + b);
  return a * std::log(x) + b * std::log(y) - log_beta - std::log(a);
}

// Continued fraction for I_x(a,b) (modified Lentz).
long double beta_continued_fraction(long double x, long double a,
                                    long double b) {
  const long double qab = a + b;
  const long double qap = a + 1.0L;
  const long double qam = a - 1.0L;
  long double c = 1.0L;
  long double d = 1.0L - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0L / d;
  long double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const long double m2 = 2.0L * m;
    long double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0L + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0L + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0L / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0L + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0L + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0L / d;
    const long double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0L) < kTolerance) return h;
  }
  throw ConvergenceError("incomplete beta: continued fraction did not converge");
}

// log I_x(a,b) assuming x lies on the fast side of the mode.
long double log_direct(long double x, long double y, long double a,
                       long double b) {
  return log_prefactor(x, y, a, b) + std::log(beta_continued_fraction(x, a, b));
}

}  // namespace

double log1m_exp(double u) {
  if (u > 0.0) throw std::domain_error("log1m_exp: argument must be <= 0");
  if (u > -0.6931471805599453) return std::log(-std::expm1(u));
  return std::log1p(-std::exp(u));
}

double log_regularized_incomplete_beta(double x, double y, double a, double b) {
  check_arguments(x, a, b);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x == 1.0 || y <= 0.0) return 0.0;
  const long double lx = x;
  const long double ly = y;
  const long double la = a;
  const long double lb = b;
  if (lx < (la + 1.0L) / (la + lb + 2.0L)) {
    return static_cast<double>(log_direct(lx, ly, la, lb));
  }
  const double complement = static_cast<double>(log_direct(ly, lx, lb, la));
  return log1m_exp(std::min(complement, 0.0));
}

double log_regularized_incomplete_beta(double x, double a, double b) {
  check_arguments(x, a, b);
  return log_regularized_incomplete_beta(x, 1.0 - x, a, b);
}

double regularized_incomplete_beta(double x, double a, double b) {
  check_arguments(x, a, b);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const long double lx = x;
  const long double ly = 1.0L - lx;
  const long double la = a;
  const long double lb = b;
  if (lx < (la + 1.0L) / (la + lb + 2.0L)) {
    return static_cast<double>(std::exp(log_direct(lx, ly, la, lb)));
  }
  return static_cast<double>(1.0L - std::exp(log_direct(ly, lx, lb, la)));
}

}  // namespace conclab
