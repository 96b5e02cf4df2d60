#pragma once

// Ground state of the relative-coordinate problem
//
//   -(psi'' + psi'/r) + (r^2/4 + U(r)) psi = E psi      (reduced mass 1/2)
//
// with U = kappa for r <= sigma and 0 outside. The interior is the regular
// Kummer solution, the exterior is integrated inward from r_max, and the two
// are matched at r = sigma (or psi(sigma) = 0 in the hardcore limit).

#include <vector>

#include "twobody/model.hpp"
#include "twobody/quadrature.hpp"

namespace twobody {

struct RadialValue {
  double value = 0.0;
  double derivative = 0.0;
  double log_derivative() const { return derivative / value; }
};

/// psi_in(r) = exp(-z/2) M(a, 1, z), z = r^2/2, a = (1 - (E - kappa))/2.
/// Throws ConvergenceError if the Kummer series does not converge.
RadialValue interior_solution(double energy, double kappa, double r);

/// Decaying exterior solution integrated from r_far down to r_to with an
/// adaptive Dormand-Prince stepper. Scale is arbitrary (psi(r_far) = 1).
/// Throws ConvergenceError when the integrator cannot make progress.
RadialValue exterior_solution(double energy, double r_far, double r_to);

/// Normalized relative-motion ground state. Evaluates psi_rel anywhere in
/// [0, r_max] by cubic Hermite interpolation of solver samples (values and
/// exact derivatives); zero beyond r_max and, for hardcore, for r <= sigma.
/// The analytic Gaussian (non-interacting case) is evaluated in closed form.
class RadialSolution {
public:
  double energy = 0.0;
  double sigma = 0.0;
  bool hardcore = false;
  bool normalized = false;
  double r_max = 0.0;
  /// Samples at the radial quadrature nodes of the config.
  std::vector<double> nodes;
  std::vector<double> profile;
  /// Relative mismatch of value and slope at r = sigma (finite kappa only).
  double value_mismatch = 0.0;
  double slope_mismatch = 0.0;

  /// The analytic Gaussian is exact everywhere and never clamped.
  bool analytic() const { return analytic_; }

  double operator()(double r) const;
  double derivative(double r) const;

  /// 2 pi int_0^r_max psi^2 r dr, exact for the piecewise-cubic interpolant.
  double norm() const;

  /// Knots of the solver table (ascending, covering [0, r_max]).
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& knot_values() const { return values_; }

  /// Analytic non-interacting Gaussian with E = 1.
  static RadialSolution gaussian(const NumericsConfig& cfg);

private:
  friend RadialSolution solve_ground_state(const SystemParams&, const NumericsConfig&);

  bool analytic_ = false;
  double scale_ = 1.0;
  // Two uniform segments: [0, sigma] and [sigma, r_max] (one segment when
  // sigma = 0). Knot k lives in segment 0 if k < inner_count_.
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  int inner_count_ = 0;

  void sample_profile(const NumericsConfig& cfg);
  int locate(double r) const;
};

/// Lowest-energy nodeless solution. Throws ConvergenceError when no bracket
/// is found in [E_lo, E_lo + 40].
RadialSolution solve_ground_state(const SystemParams& params, const NumericsConfig& cfg);

/// Lowest eigenvalue of a second-order finite-difference discretization of
/// the same radial operator on n_grid points over (0, r_max], Dirichlet ends.
/// r_max <= 0 selects the default domain for sigma.
double oracle_fd_energy(const SystemParams& params, int n_grid, double r_max = 0.0);

}  // namespace twobody
