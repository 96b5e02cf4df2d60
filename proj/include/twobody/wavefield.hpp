#pragma once

// Two-particle ground state Psi(r1, r2, theta12) = phi_cm(R) psi_rel(r12)
// sampled on a Gauss-Legendre x uniform-angle grid, plus the radial and
// angular distributions derived from it.

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "twobody/kernels.hpp"
#include "twobody/model.hpp"
#include "twobody/quadrature.hpp"
#include "twobody/relative_motion.hpp"

namespace twobody {

class PairWavefunctionGrid {
public:
  SystemParams params;
  NumericsConfig cfg;
  QuadratureRule radial_rule;
  QuadratureRule angular_rule;
  /// Cusp-split norm of the unscaled product before renormalization.
  double raw_norm = 0.0;
  /// |norm - 1| of the stored grid (uniform angular rule) after renormalization.
  double norm_residual = 0.0;
  /// Grid samples with r12 beyond the solver domain, set to zero.
  long clamped_samples = 0;

  /// Psi at (r_i, r_j, theta_k), any k in [0, n_angular).
  double value(std::size_t i, std::size_t j, std::size_t k) const;
  /// Psi anywhere, on the same normalization.
  double evaluate(double r1, double r2, double theta) const;

  const kernels::PairEvaluator& evaluator() const { return psi_; }
  const kernels::CuspGeometry& cusp() const { return *cusp_; }
  const RadialSolution& relative() const { return *relative_; }
  /// n(r_i, r_j) = 2 pi r_i r_j int |Psi|^2 dtheta from the cusp-split rule.
  const Eigen::MatrixXd& radial_density() const { return radial_density_; }
  const std::vector<double>& angular_profile() const { return angular_profile_; }
  /// Angular channels g_0..g_lmax (unweighted), computed once with the
  /// cusp-split rule during assembly and already renormalized.
  const kernels::ChannelProjection& projection() const { return *projection_; }

  /// Order of the Gauss-Legendre rule per smooth angular piece.
  static int split_order(const NumericsConfig& cfg);

private:
  friend PairWavefunctionGrid assemble(const SystemParams&, const NumericsConfig&,
                                       const RadialSolution&);
  std::shared_ptr<const RadialSolution> relative_;
  std::shared_ptr<const kernels::CuspGeometry> cusp_;
  kernels::PairEvaluator psi_;
  kernels::PackedGrid packed_;
  std::shared_ptr<const kernels::ChannelProjection> projection_;
  Eigen::MatrixXd radial_density_;
  std::vector<double> angular_profile_;
};

/// Builds and renormalizes the grid. Requires a normalized solution.
PairWavefunctionGrid assemble(const SystemParams& params, const NumericsConfig& cfg,
                              const RadialSolution& sol);

/// n(r1, r2) on the radial nodes; integrates to 1 against w_i w_j.
Eigen::MatrixXd radial_density(const PairWavefunctionGrid& grid);

/// Gamma(theta_k) = int r1 r2 |Psi|^2 dr1 dr2; 2 pi sum_k Gamma_k dtheta = 1.
std::vector<double> angular_density(const PairWavefunctionGrid& grid);

/// Location of the maximum of r |psi_rel(r)|^2, refined by a parabola
/// through the best solver knot and its neighbours.
double relative_profile_peak(const RadialSolution& sol);

}  // namespace twobody
