#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twobody/kernels.hpp"

namespace twobody::kernels::omp {

FillResult fill_grid(const PairEvaluator& psi, const QuadratureRule& radial, int n_angular) {
  FillResult out;
  const std::size_t n = radial.size();
  const std::size_t n_half = static_cast<std::size_t>(n_angular / 2 + 1);
  out.grid.n_radial = n;
  out.grid.n_half = n_half;
  out.grid.data.assign(n * (n + 1) / 2 * n_half, 0.0);

  std::vector<double> cosines(n_half);
  for (std::size_t k = 0; k < n_half; ++k)
    cosines[k] = std::cos(2.0 * std::numbers::pi * k / n_angular);

  long clamped = 0;
  double* data = out.grid.data.data();
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : clamped)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t j = i; j < n; ++j) {
      double* row = data + PackedGrid::pair_index(i, j, n) * n_half;
      for (std::size_t k = 0; k < n_half; ++k) {
        if (psi.clamped(radial.nodes[i], radial.nodes[j], cosines[k])) ++clamped;
        row[k] = psi(radial.nodes[i], radial.nodes[j], cosines[k]);
      }
    }
  }
  out.clamped = clamped;
  return out;
}

ChannelProjection project_channels(const PairEvaluator& psi, const QuadratureRule& radial,
                                   const CuspGeometry& cusp, int l_max) {
  const std::size_t n = radial.size();
  ChannelProjection out;
  out.g.assign(l_max + 1, Eigen::MatrixXd::Zero(n, n));
  out.pair_density = Eigen::MatrixXd::Zero(n, n);

#pragma omp parallel
  {
    std::vector<double> acc(l_max + 1);
    std::vector<double> cs, wv, t_prev, t_cur;
#pragma omp for schedule(dynamic, 2)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      for (std::size_t j = i; j < n; ++j) {
        const double r1 = radial.nodes[i];
        const double r2 = radial.nodes[j];
        const AngularPieces p = cusp.pieces(r1, r2);
        const std::size_t nq = p.theta.size();
        cs.resize(nq);
        wv.resize(nq);
        t_prev.assign(nq, 1.0);
        double density = 0.0;
        for (std::size_t q = 0; q < nq; ++q) {
          cs[q] = std::cos(p.theta[q]);
          const double v = psi(r1, r2, cs[q]);
          wv[q] = p.weight[q] * v;
          density += wv[q] * v;
        }
        t_cur = cs;
        // cos(l t) = T_l(cos t), advanced for all nodes at once.
        double s0 = 0.0, s1 = 0.0;
#pragma omp simd reduction(+ : s0, s1)
        for (std::size_t q = 0; q < nq; ++q) {
          s0 += wv[q];
          s1 += wv[q] * cs[q];
        }
        acc[0] = s0;
        if (l_max >= 1) acc[1] = s1;
        double* tp = t_prev.data();
        double* tc = t_cur.data();
        const double* c = cs.data();
        const double* w = wv.data();
        for (int l = 2; l <= l_max; ++l) {
          double sl = 0.0;
#pragma omp simd reduction(+ : sl)
          for (std::size_t q = 0; q < nq; ++q) {
            const double next = 2.0 * c[q] * tc[q] - tp[q];
            tp[q] = tc[q];
            tc[q] = next;
            sl += w[q] * next;
          }
          acc[l] = sl;
        }
        const double root = std::sqrt(r1 * r2);
        for (int l = 0; l <= l_max; ++l) out.g[l](i, j) = out.g[l](j, i) = root * acc[l];
        out.pair_density(i, j) = out.pair_density(j, i) = r1 * r2 * density;
      }
    }
  }
  return out;
}

std::vector<double> angular_profile(const PackedGrid& grid, const QuadratureRule& radial,
                                    int n_angular) {
  const std::size_t n = radial.size();
  const std::size_t n_half = grid.n_half;
  std::vector<double> dressed(n);
  for (std::size_t i = 0; i < n; ++i) dressed[i] = radial.weights[i] * radial.nodes[i];

  // Per-row partial sums, reduced serially so the result does not depend on
  // the thread count or schedule.
  std::vector<double> partial(n * n_half, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    double* acc = partial.data() + i * n_half;
    for (std::size_t j = i; j < n; ++j) {
      const double factor = (i == j ? 1.0 : 2.0) * dressed[i] * dressed[j];
      const double* row = grid.data.data() + PackedGrid::pair_index(i, j, n) * n_half;
      for (std::size_t k = 0; k < n_half; ++k) acc[k] += factor * row[k] * row[k];
    }
  }
  std::vector<double> half(n_half, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n_half; ++k) half[k] += partial[i * n_half + k];

  std::vector<double> out(n_angular);
  for (int k = 0; k < n_angular; ++k)
    out[k] = half[static_cast<std::size_t>(k <= n_angular / 2 ? k : n_angular - k)];
  return out;
}

}  // namespace twobody::kernels::omp
