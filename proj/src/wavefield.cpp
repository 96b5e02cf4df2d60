#include "twobody/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace twobody {

int PairWavefunctionGrid::split_order(const NumericsConfig& cfg) {
  return std::max(64, 2 * cfg.l_max);
}

double PairWavefunctionGrid::value(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t n = angular_rule.size();
  k %= n;
  return packed_.at(i, j, k <= n / 2 ? k : n - k);
}

double PairWavefunctionGrid::evaluate(double r1, double r2, double theta) const {
  return psi_(r1, r2, std::cos(theta));
}

PairWavefunctionGrid assemble(const SystemParams& params, const NumericsConfig& cfg,
                              const RadialSolution& sol) {
  if (!sol.normalized) throw InvalidArgument("assemble: radial solution is not normalized");
  PairWavefunctionGrid grid;
  grid.params = params;
  grid.cfg = cfg;
  grid.radial_rule = gauss_legendre(cfg.n_radial, 0.0, cfg.r_max);
  grid.angular_rule = uniform_periodic(cfg.n_angular);
  grid.relative_ = std::make_shared<const RadialSolution>(sol);
  grid.cusp_ = std::make_shared<const kernels::CuspGeometry>(
      params.sigma, !params.non_interacting(), params.kappa.is_hardcore(),
      PairWavefunctionGrid::split_order(cfg));
  grid.psi_.relative = grid.relative_.get();
  grid.psi_.scale = 1.0;

  // Accurate norm from the cusp-split angular rule; the channels come from
  // the same pass and are rescaled below.
  kernels::ChannelProjection base =
      kernels::omp::project_channels(grid.psi_, grid.radial_rule, *grid.cusp_, cfg.l_max);
  const auto& w = grid.radial_rule.weights;
  double norm = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) norm += w[i] * w[j] * base.pair_density(i, j);
  norm *= 2.0 * std::numbers::pi;
  if (!(norm > 0.0)) throw ConvergenceError("assemble: wavefunction has zero norm on the grid");
  grid.raw_norm = norm;

  const double scale = 1.0 / std::sqrt(norm);
  grid.psi_.scale = scale;
  grid.radial_density_ = (2.0 * std::numbers::pi / norm) * base.pair_density;
  for (auto& g : base.g) g *= scale;
  base.pair_density /= norm;
  grid.projection_ = std::make_shared<const kernels::ChannelProjection>(std::move(base));

  kernels::FillResult filled = kernels::omp::fill_grid(grid.psi_, grid.radial_rule, cfg.n_angular);
  grid.packed_ = std::move(filled.grid);
  grid.clamped_samples = filled.clamped;
  grid.angular_profile_ =
      kernels::omp::angular_profile(grid.packed_, grid.radial_rule, cfg.n_angular);

  double grid_norm = 0.0;
  for (std::size_t k = 0; k < grid.angular_profile_.size(); ++k)
    grid_norm += grid.angular_rule.weights[k] * grid.angular_profile_[k];
  grid_norm *= 2.0 * std::numbers::pi;
  grid.norm_residual = std::abs(grid_norm - 1.0);
  return grid;
}

Eigen::MatrixXd radial_density(const PairWavefunctionGrid& grid) { return grid.radial_density(); }

std::vector<double> angular_density(const PairWavefunctionGrid& grid) {
  return grid.angular_profile();
}

double relative_profile_peak(const RadialSolution& sol) {
  // Dense sampling of the interpolant; solver knots when available.
  std::vector<double> r = sol.knots();
  if (r.empty()) {
    const int n = 8000;
    for (int k = 0; k <= n; ++k) r.push_back(sol.r_max * k / n);
  }
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double v = sol(r[k]);
    const double density = r[k] * v * v;
    if (density > best_value) {
      best_value = density;
      best = k;
    }
  }
  if (best == 0 || best + 1 >= r.size()) return r[best];
  auto density = [&](double x) {
    const double v = sol(x);
    return x * v * v;
  };
  const double x0 = r[best - 1], x1 = r[best], x2 = r[best + 1];
  const double y0 = density(x0), y1 = density(x1), y2 = density(x2);
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  if (a >= 0.0) return x1;
  return std::clamp(-b / (2.0 * a), x0, x2);
}

}  // namespace twobody
