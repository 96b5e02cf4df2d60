#pragma once

// Radial-angular bipartition. sqrt(r1 r2) Psi is expanded in the angular
// basis Theta_l(phi1 - phi2) times symmetrized sine pairs v_m(r1, r2); the
// SVD of the coefficient matrix W gives the Schmidt form between the
// (r1, r2) and (phi1, phi2) subsystems.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twobody/particle_schmidt.hpp"
#include "twobody/quadrature.hpp"

namespace twobody {

inline constexpr double kCompletenessTarget = 1e-4;
inline constexpr double kCompletenessHardLimit = 1e-3;

struct WMatrix {
  /// (l_max + 1) x n_pair.
  Eigen::MatrixXd W;
  int m_sine = 0;
  double box_L = 0.0;
  /// 1 - sum W^2.
  double completeness_residual = 0.0;
  /// Residual above kCompletenessTarget after growing the basis to its cap.
  bool under_converged = false;
};

/// W for a fixed sine basis size (no adaptation, no hard error).
WMatrix build_W_fixed(const ChannelSet& channels, int m_sine, double box_L);

/// W from cfg.m_sine upward: the basis grows (up to n_radial / 2 sines, the
/// largest set the radial rule keeps orthonormal) until the completeness
/// residual is at most 1e-4. Throws ConvergenceError("pair basis too small")
/// if the residual still exceeds 1e-3.
WMatrix build_W(const ChannelSet& channels, const NumericsConfig& cfg);

struct RadialAngularDecomposition {
  Eigen::MatrixXd U;  // (l_max + 1) x rank
  Eigen::MatrixXd V;  // n_pair x rank
  /// Singular values rescaled so that sum q^2 = 1.
  std::vector<double> q;
  std::vector<double> gamma;
  /// sum of raw q^2 (mass captured by the pair basis).
  double captured_mass = 0.0;
  /// w_l for l in [-l_max, l_max], stored at index l + l_max.
  std::vector<double> w;
  int l_max = 0;
  double K_phi = 0.0;
  /// sum_l w_l^4 (the literal reading of the angular participation formula).
  double sum_w4 = 0.0;
  double K_r = 0.0;
  /// Signed Schmidt coefficients of V_0(r1, r2), normalized, descending |c|.
  std::vector<double> radial_coefficients;
  /// V_0 on the radial nodes.
  Eigen::MatrixXd V0;

  double w_at(int l) const { return w.at(static_cast<std::size_t>(l + l_max)); }
};

RadialAngularDecomposition decompose(const WMatrix& W, const QuadratureRule& radial);

struct ProductError {
  /// 1 - gamma_0.
  double spectral = 0.0;
  /// Quadrature of |F - q0 V0 Phi0|^2 with F the pair-basis representation
  /// of sqrt(r1 r2) Psi (renormalized); equals `spectral` when consistent.
  double quadrature = 0.0;
  /// Same norm against the full grid channels (includes the basis residual).
  double quadrature_full = 0.0;
  bool inconsistent = false;
};

inline constexpr double kProductErrorFlag = 1e-4;

ProductError product_error(const ChannelSet& channels, const WMatrix& W,
                           const RadialAngularDecomposition& dec);

struct LandscapeRow {
  Strength kappa = Strength::finite(0.0);
  double gamma0 = 0.0;
  double r_peak = 0.0;
  bool ok = true;
  std::string error;
};

/// gamma_0 and the relative-density peak along a kappa scan at fixed sigma.
/// Points are independent and evaluated in parallel; failures are recorded
/// per row.
std::vector<LandscapeRow> gamma0_landscape(double sigma, const std::vector<Strength>& kappas,
                                           const std::map<std::string, std::string>& overrides = {});

/// Interior local minima (strictly below both neighbours) of a sequence.
std::vector<std::size_t> local_minima(const std::vector<double>& values);

}  // namespace twobody
