#include "twobody/special_functions.hpp"

#include <cmath>

#include "twobody/model.hpp"

namespace twobody {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kRelativeCutoff = 1e-16;

bool is_nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

}  // namespace

KummerEval kummer_m(double a, double b, double z) {
  if (is_nonpositive_integer(b))
    throw InvalidArgument("kummer_m: b must not be a non-positive integer");

  double sum = 1.0;
  double carry = 0.0;
  double term = 1.0;
  KummerEval out;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double ratio = (a + k) / ((b + k) * (k + 1)) * z;
    term *= ratio;
    // Kahan step.
    double y = term - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    out.terms_used = k + 2;
    // A zero Pochhammer factor terminates the series exactly.
    // Only trust the cutoff once the terms are shrinking.
    if (term == 0.0 || (std::abs(ratio) < 1.0 && std::abs(term) <= kRelativeCutoff * std::abs(sum))) {
      out.converged = true;
      break;
    }
  }
  out.value = sum;
  return out;
}

double kummer_m_derivative(double a, double b, double z) {
  if (is_nonpositive_integer(b))
    throw InvalidArgument("kummer_m_derivative: b must not be a non-positive integer");
  if (a == 0.0) return 0.0;
  KummerEval shifted = kummer_m(a + 1.0, b + 1.0, z);
  if (!shifted.converged) throw ConvergenceError("kummer_m_derivative: series did not converge");
  return a / b * shifted.value;
}

}  // namespace twobody
