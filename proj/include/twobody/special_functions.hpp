#pragma once

#include "twobody/model.hpp"

namespace twobody {

struct KummerEval {
  double value = 0.0;
  int terms_used = 0;
  bool converged = false;
};

/// Confluent hypergeometric M(a, b, z) from its power series, summed with
/// Kahan compensation. Stops when a term falls below 1e-16 of the partial sum
/// (converged) or after 10^4 terms (not converged). Throws InvalidArgument if
/// b is a non-positive integer.
KummerEval kummer_m(double a, double b, double z);

/// dM/dz = (a/b) M(a+1, b+1, z). Throws ConvergenceError if the series does
/// not converge.
double kummer_m_derivative(double a, double b, double z);

}  // namespace twobody
