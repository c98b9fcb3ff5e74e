#pragma once

#include <stdexcept>

namespace conclab {

/// Thrown when an iterative numerical kernel fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest shape parameter accepted by the incomplete beta kernel.
inline constexpr double kMaxBetaShape = 1e7;

/// Regularized incomplete beta function I_x(a, b).
///
/// Evaluated with a modified-Lentz continued fraction whose prefactor is
/// computed in extended precision in the log domain; the symmetry
/// I_x(a,b) = 1 - I_{1-x}(b,a) selects the rapidly converging side.
/// Throws std::domain_error for x outside [0,1], non-positive or oversized
/// shapes, and ConvergenceError if the fraction does not converge.
double regularized_incomplete_beta(double x, double a, double b);

/// Natural log of I_x(a, b); stays finite where the value underflows.
double log_regularized_incomplete_beta(double x, double a, double b);

/// Same as above with the complement y = 1 - x supplied by the caller, which
/// avoids cancellation when x is close to one (e.g. x = sin^2, y = cos^2).
double log_regularized_incomplete_beta(double x, double y, double a, double b);

/// log(1 - exp(u)) for u <= 0.
double log1m_exp(double u);

}  // namespace conclab
