#pragma once

// Data-parallel inner loops of the wavefunction analysis. Every kernel has an
// OpenMP implementation (namespace omp) used by the pipeline and a plain
// serial reference (namespace serial) kept for testing and benchmarking.
// Both produce the same results up to floating-point reassociation.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "twobody/quadrature.hpp"
#include "twobody/relative_motion.hpp"

namespace twobody::kernels {

/// Psi(r1, r2, theta) = scale * phi_cm(R) * psi_rel(r12); exchange symmetric
/// and even in theta by construction.
struct PairEvaluator {
  const RadialSolution* relative = nullptr;
  double scale = 1.0;

  double operator()(double r1, double r2, double cos_theta) const;
  /// True when r12 exceeds the solver domain (value clamped to zero).
  bool clamped(double r1, double r2, double cos_theta) const;
};

/// Packed storage for values that are symmetric in (i, j) and even in theta:
/// row (i <= j), column k in [0, n_angular/2].
struct PackedGrid {
  std::size_t n_radial = 0;
  std::size_t n_half = 0;  // n_angular / 2 + 1
  std::vector<double> data;

  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);
  double at(std::size_t i, std::size_t j, std::size_t k_half) const {
    return data[pair_index(i, j, n_radial) * n_half + k_half];
  }
};

struct FillResult {
  PackedGrid grid;
  long clamped = 0;
};

/// Angular quadrature of one (r_i, r_j) pair: pieces of [0, pi] split at the
/// interaction cusp, each integrated by Gauss-Legendre. Pieces where Psi
/// vanishes identically (inside a hard core) are dropped.
struct AngularPieces {
  std::vector<double> theta;
  std::vector<double> weight;  // already doubled for the [pi, 2 pi] mirror
};

class CuspGeometry {
public:
  /// `order` Gauss-Legendre points per smooth piece.
  CuspGeometry(double sigma, bool interacting, bool hardcore, int order);

  AngularPieces pieces(double r1, double r2) const;
  /// Cusp angle in (0, pi) where r12 = sigma, or a negative value if the
  /// circle r12 = sigma does not cross the pair's angular domain.
  double cusp_angle(double r1, double r2) const;
  int order() const { return static_cast<int>(unit_.size()); }

private:
  double sigma_;
  bool interacting_;
  bool hardcore_;
  QuadratureRule unit_;
};

/// g_l(r_i, r_j) for l = 0..l_max (unweighted, symmetric) together with the
/// pair norm density rho(i, j) = r_i r_j int |Psi|^2 dtheta, all from the
/// same cusp-split angular rule.
struct ChannelProjection {
  std::vector<Eigen::MatrixXd> g;
  Eigen::MatrixXd pair_density;
};

namespace serial {

FillResult fill_grid(const PairEvaluator& psi, const QuadratureRule& radial, int n_angular);
ChannelProjection project_channels(const PairEvaluator& psi, const QuadratureRule& radial,
                                   const CuspGeometry& cusp, int l_max);
/// Gamma(theta_k) = sum_ij w_i w_j r_i r_j Psi(i, j, k)^2 for k = 0..n_angular-1.
std::vector<double> angular_profile(const PackedGrid& grid, const QuadratureRule& radial,
                                    int n_angular);

}  // namespace serial

namespace omp {

FillResult fill_grid(const PairEvaluator& psi, const QuadratureRule& radial, int n_angular);
ChannelProjection project_channels(const PairEvaluator& psi, const QuadratureRule& radial,
                                   const CuspGeometry& cusp, int l_max);
std::vector<double> angular_profile(const PackedGrid& grid, const QuadratureRule& radial,
                                    int n_angular);

}  // namespace omp

}  // namespace twobody::kernels
