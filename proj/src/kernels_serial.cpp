#include "twobody/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace twobody::kernels {

double PairEvaluator::operator()(double r1, double r2, double cos_theta) const {
  const double sum = r1 * r1 + r2 * r2;
  const double cross = 2.0 * r1 * r2 * cos_theta;
  const double r12 = std::sqrt(std::max(sum - cross, 0.0));
  const double cm2 = 0.25 * (sum + cross);
  // phi_cm(R) = sqrt(2/pi) exp(-R^2) for total mass 2.
  return scale * std::sqrt(2.0 / std::numbers::pi) * std::exp(-cm2) * (*relative)(r12);
}

bool PairEvaluator::clamped(double r1, double r2, double cos_theta) const {
  if (relative->analytic()) return false;
  const double r12sq = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * cos_theta;
  return r12sq > relative->r_max * relative->r_max;
}

std::size_t PackedGrid::pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

CuspGeometry::CuspGeometry(double sigma, bool interacting, bool hardcore, int order)
    : sigma_(sigma), interacting_(interacting), hardcore_(hardcore),
      unit_(gauss_legendre(order, 0.0, 1.0)) {}

double CuspGeometry::cusp_angle(double r1, double r2) const {
  if (!interacting_ || sigma_ <= 0.0) return -1.0;
  if (!(std::abs(r1 - r2) < sigma_ && sigma_ < r1 + r2)) return -1.0;
  const double c = (r1 * r1 + r2 * r2 - sigma_ * sigma_) / (2.0 * r1 * r2);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

AngularPieces CuspGeometry::pieces(double r1, double r2) const {
  AngularPieces out;
  auto add = [&](double a, double b) {
    if (!(b > a)) return;
    for (std::size_t q = 0; q < unit_.size(); ++q) {
      out.theta.push_back(a + (b - a) * unit_.nodes[q]);
      out.weight.push_back(2.0 * (b - a) * unit_.weights[q]);
    }
  };
  constexpr double pi = std::numbers::pi;
  if (hardcore_ && interacting_ && sigma_ > 0.0 && r1 + r2 <= sigma_) return out;
  const double cusp = cusp_angle(r1, r2);
  if (cusp < 0.0) {
    add(0.0, pi);
  } else {
    if (!hardcore_) add(0.0, cusp);
    add(cusp, pi);
  }
  return out;
}

namespace serial {

FillResult fill_grid(const PairEvaluator& psi, const QuadratureRule& radial, int n_angular) {
  FillResult out;
  const std::size_t n = radial.size();
  out.grid.n_radial = n;
  out.grid.n_half = static_cast<std::size_t>(n_angular / 2 + 1);
  out.grid.data.assign(n * (n + 1) / 2 * out.grid.n_half, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t row = PackedGrid::pair_index(i, j, n) * out.grid.n_half;
      for (std::size_t k = 0; k < out.grid.n_half; ++k) {
        const double c = std::cos(2.0 * std::numbers::pi * k / n_angular);
        if (psi.clamped(radial.nodes[i], radial.nodes[j], c)) ++out.clamped;
        out.grid.data[row + k] = psi(radial.nodes[i], radial.nodes[j], c);
      }
    }
  }
  return out;
}

ChannelProjection project_channels(const PairEvaluator& psi, const QuadratureRule& radial,
                                   const CuspGeometry& cusp, int l_max) {
  const std::size_t n = radial.size();
  ChannelProjection out;
  out.g.assign(l_max + 1, Eigen::MatrixXd::Zero(n, n));
  out.pair_density = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double r1 = radial.nodes[i];
      const double r2 = radial.nodes[j];
      AngularPieces p = cusp.pieces(r1, r2);
      double density = 0.0;
      std::vector<double> acc(l_max + 1, 0.0);
      for (std::size_t q = 0; q < p.theta.size(); ++q) {
        const double v = psi(r1, r2, std::cos(p.theta[q]));
        density += p.weight[q] * v * v;
        for (int l = 0; l <= l_max; ++l) acc[l] += p.weight[q] * v * std::cos(l * p.theta[q]);
      }
      const double root = std::sqrt(r1 * r2);
      for (int l = 0; l <= l_max; ++l) out.g[l](i, j) = out.g[l](j, i) = root * acc[l];
      out.pair_density(i, j) = out.pair_density(j, i) = r1 * r2 * density;
    }
  }
  return out;
}

std::vector<double> angular_profile(const PackedGrid& grid, const QuadratureRule& radial,
                                    int n_angular) {
  const std::size_t n = radial.size();
  std::vector<double> out(n_angular, 0.0);
  for (int k = 0; k < n_angular; ++k) {
    const std::size_t kh = static_cast<std::size_t>(k <= n_angular / 2 ? k : n_angular - k);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = grid.at(i, j, kh);
        sum += radial.weights[i] * radial.weights[j] * radial.nodes[i] * radial.nodes[j] * v * v;
      }
    }
    out[k] = sum;
  }
  return out;
}

}  // namespace serial

}  // namespace twobody::kernels
