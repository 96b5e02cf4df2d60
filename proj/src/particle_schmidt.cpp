#include "twobody/particle_schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace twobody {

namespace {

double multiplicity(int l) { return l == 0 ? 1.0 : 2.0; }

// Eigenpairs ordered by descending |eigenvalue|.
std::vector<int> order_by_magnitude(const Eigen::VectorXd& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(values[a]) > std::abs(values[b]);
  });
  return order;
}

}  // namespace

double ChannelSet::g(int l, std::size_t i, std::size_t j) const {
  return channels.at(l).kernel(i, j) / std::sqrt(radial.weights[i] * radial.weights[j]);
}

ChannelSet compute_channels(const PairWavefunctionGrid& grid) {
  const int l_max = grid.cfg.l_max;
  const kernels::ChannelProjection& proj = grid.projection();
  ChannelSet set;
  set.radial = grid.radial_rule;
  const std::size_t n = set.radial.size();
  Eigen::VectorXd root_w(n);
  for (std::size_t i = 0; i < n; ++i) root_w[i] = std::sqrt(set.radial.weights[i]);
  set.channels.resize(l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    set.channels[l].l = l;
    set.channels[l].kernel = root_w.asDiagonal() * proj.g[l] * root_w.asDiagonal();
  }
  return set;
}

AngularChannelKernel fourier_channel(const PairWavefunctionGrid& grid, int l) {
  if (l < 0 || l > grid.cfg.l_max)
    throw InvalidArgument("fourier_channel: l out of range [0, l_max]");
  const kernels::ChannelProjection& proj = grid.projection();
  const std::size_t n = grid.radial_rule.size();
  Eigen::VectorXd root_w(n);
  for (std::size_t i = 0; i < n; ++i) root_w[i] = std::sqrt(grid.radial_rule.weights[i]);
  return {l, root_w.asDiagonal() * proj.g[l] * root_w.asDiagonal()};
}

ChannelModes channel_schmidt(const AngularChannelKernel& kernel, const QuadratureRule& radial) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel.kernel);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("channel_schmidt: eigensolver failed for channel l=" +
                           std::to_string(kernel.l));
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const std::vector<int> order = order_by_magnitude(values);
  const std::size_t n = radial.size();

  ChannelModes modes;
  modes.l = kernel.l;
  modes.k.resize(order.size());
  modes.chi.resize(n, order.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    modes.k[c] = values[order[c]];
    Eigen::VectorXd v = vectors.col(order[c]);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) v = -v;
    for (std::size_t i = 0; i < n; ++i) modes.chi(i, c) = v[i] / std::sqrt(radial.weights[i]);
  }
  return modes;
}

SchmidtSpectrum spectrum(const ChannelSet& channels) {
  SchmidtSpectrum out;
  const int l_max = channels.l_max();
  out.k.resize(l_max + 1);
  out.lambda.resize(l_max + 1);
  out.f.assign(l_max + 1, 0.0);
  for (int l = 0; l <= l_max; ++l) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(channels.channels[l].kernel,
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw ConvergenceError("spectrum: eigensolver failed for channel l=" + std::to_string(l));
    const Eigen::VectorXd& values = solver.eigenvalues();
    for (int idx : order_by_magnitude(values)) {
      const double k = values[idx];
      out.k[l].push_back(k);
      out.lambda[l].push_back(k * k);
    }
    double channel_sum = 0.0;
    double channel_sq = 0.0;
    for (double lam : out.lambda[l]) {
      channel_sum += lam;
      channel_sq += lam * lam;
    }
    out.f[l] = multiplicity(l) * channel_sum;
    out.purity += multiplicity(l) * channel_sq;
  }
  out.probability = std::accumulate(out.f.begin(), out.f.end(), 0.0);
  out.participation = 1.0 / out.purity;
  out.tail_mass = out.f.back();
  out.under_converged = out.tail_mass > kTailTolerance;
  return out;
}

SchmidtSpectrum spectrum(const PairWavefunctionGrid& grid) {
  return spectrum(compute_channels(grid));
}

double purity_integral(const ChannelSet& channels) {
  double purity = 0.0;
  for (const auto& ch : channels.channels) {
    // rho = G G^T, only the lower triangle is formed.
    const Eigen::Index n = ch.kernel.rows();
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(n, n);
    rho.selfadjointView<Eigen::Lower>().rankUpdate(ch.kernel);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      sum += rho(j, j) * rho(j, j);
      for (Eigen::Index i = j + 1; i < n; ++i) sum += 2.0 * rho(i, j) * rho(i, j);
    }
    purity += multiplicity(ch.l) * sum;
  }
  return purity;
}

double purity_integral(const PairWavefunctionGrid& grid) {
  return purity_integral(compute_channels(grid));
}

bool is_product_state(const SchmidtSpectrum& spectrum, double tol) {
  // Case 1: a single l = 0 orbital pair carries everything.
  for (double k : spectrum.k.empty() ? std::vector<double>{} : spectrum.k[0])
    if (std::abs(std::abs(k) - 1.0) <= tol) return true;

  // Case 2: one l >= 1 pair (with its -l partner) at 1/sqrt(2), rest empty.
  const double target = 1.0 / std::numbers::sqrt2;
  for (std::size_t l = 1; l < spectrum.k.size(); ++l) {
    for (std::size_t n = 0; n < spectrum.k[l].size(); ++n) {
      if (std::abs(std::abs(spectrum.k[l][n]) - target) > tol) continue;
      bool rest_empty = true;
      for (std::size_t l2 = 0; l2 < spectrum.k.size() && rest_empty; ++l2)
        for (std::size_t n2 = 0; n2 < spectrum.k[l2].size(); ++n2) {
          if (l2 == l && n2 == n) continue;
          if (std::abs(spectrum.k[l2][n2]) > tol) {
            rest_empty = false;
            break;
          }
        }
      if (rest_empty) return true;
    }
  }
  return false;
}

}  // namespace twobody
