#pragma once

// Particle-partition Schmidt analysis. The wavefunction is expanded in
// angular channels g_l(r1, r2); each channel is a symmetric kernel whose
// eigen-decomposition on the weight-dressed radial nodes (Nystrom) gives the
// Schmidt coefficients k_nl and orbitals chi_nl.

#include <vector>

#include <Eigen/Dense>

#include "twobody/quadrature.hpp"
#include "twobody/wavefield.hpp"

namespace twobody {

struct AngularChannelKernel {
  int l = 0;
  /// G_l[i, j] = g_l(r_i, r_j) sqrt(w_i w_j).
  Eigen::MatrixXd kernel;
};

/// All channels 0..l_max of one grid.
struct ChannelSet {
  QuadratureRule radial;
  std::vector<AngularChannelKernel> channels;

  int l_max() const { return static_cast<int>(channels.size()) - 1; }
  /// Unweighted g_l(r_i, r_j).
  double g(int l, std::size_t i, std::size_t j) const;
};

ChannelSet compute_channels(const PairWavefunctionGrid& grid);
/// One channel; equal to compute_channels(grid).channels[l].
AngularChannelKernel fourier_channel(const PairWavefunctionGrid& grid, int l);

struct ChannelModes {
  int l = 0;
  /// Signed coefficients, descending |k|.
  std::vector<double> k;
  /// Column n holds chi_nl at the radial nodes (orthonormal under the rule).
  Eigen::MatrixXd chi;
};

/// Full symmetric eigen-decomposition of one channel. Sign convention: the
/// largest-magnitude entry of each orbital is positive.
ChannelModes channel_schmidt(const AngularChannelKernel& kernel, const QuadratureRule& radial);

struct SchmidtSpectrum {
  /// k[l][n], signed, descending |k| within each channel l >= 0.
  std::vector<std::vector<double>> k;
  std::vector<std::vector<double>> lambda;
  /// f_l = (2 - delta_l0) sum_n lambda_nl.
  std::vector<double> f;
  double purity = 0.0;
  double participation = 0.0;
  /// sum_n lambda_n0 + 2 sum_{l>=1, n} lambda_nl.
  double probability = 0.0;
  /// f at l = l_max; above 1e-8 the truncation is flagged.
  double tail_mass = 0.0;
  bool under_converged = false;
};

inline constexpr double kTailTolerance = 1e-8;

SchmidtSpectrum spectrum(const ChannelSet& channels);
SchmidtSpectrum spectrum(const PairWavefunctionGrid& grid);

/// Purity from sum_l (2 - delta_l0) int int rho_l^2 with rho_l = G_l G_l^T;
/// no eigen-decomposition involved.
double purity_integral(const ChannelSet& channels);
double purity_integral(const PairWavefunctionGrid& grid);

/// Single-permanent (non-entangled) test on the Schmidt coefficients.
bool is_product_state(const SchmidtSpectrum& spectrum, double tol);

}  // namespace twobody
