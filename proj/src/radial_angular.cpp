#include "twobody/radial_angular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twobody/relative_motion.hpp"
#include "twobody/wavefield.hpp"

namespace twobody {

namespace {

double channel_factor(int l) { return l == 0 ? 1.0 : std::numbers::sqrt2; }

// Coefficient vector over the pair basis -> symmetric matrix C with
// f(r1, r2) = sum_ab C_ab v_a(r1) v_b(r2).
Eigen::MatrixXd pair_coefficients_to_matrix(const Eigen::Ref<const Eigen::VectorXd>& coeff,
                                            const PairBasis& basis) {
  const int m = basis.m_sine();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    const PairBasisIndex p = basis.pair(idx);
    if (p.m1 == p.m2) {
      c(p.m1 - 1, p.m1 - 1) = coeff[idx];
    } else {
      c(p.m1 - 1, p.m2 - 1) = c(p.m2 - 1, p.m1 - 1) = coeff[idx] / std::numbers::sqrt2;
    }
  }
  return c;
}

// f(r_i, r_j) on the radial nodes for a pair-basis coefficient vector.
Eigen::MatrixXd evaluate_pair_expansion(const Eigen::Ref<const Eigen::VectorXd>& coeff,
                                        const PairBasis& basis, const Eigen::MatrixXd& sines) {
  return sines * pair_coefficients_to_matrix(coeff, basis) * sines.transpose();
}

}  // namespace

namespace {

// Dressed overlaps O_l = (sqrt(w) S)^T G_l (sqrt(w) S), grown in blocks of
// sines so the cost tracks the basis size actually used.
class SineOverlaps {
public:
  SineOverlaps(const ChannelSet& channels, double box_L) : channels_(channels), box_L_(box_L) {
    const std::size_t n = channels.radial.size();
    root_w_.resize(n);
    for (std::size_t i = 0; i < n; ++i) root_w_[i] = std::sqrt(channels.radial.weights[i]);
    overlaps_.resize(channels.channels.size());
  }

  void grow_to(int m) {
    if (m <= size_) return;
    // Kernels are dressed with sqrt(w) on both sides, so dressing the sines
    // the same way turns the double integral into a plain product.
    const Eigen::MatrixXd all = root_w_.asDiagonal() * sine_table(channels_.radial, m, box_L_);
    const Eigen::Index old = size_;
    const Eigen::Index extra = m - size_;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(overlaps_.size()); ++c) {
      const Eigen::MatrixXd gd = channels_.channels[c].kernel * all.rightCols(extra);
      Eigen::MatrixXd next(m, m);
      next.topLeftCorner(old, old) = overlaps_[c];
      next.topRightCorner(old, extra) = all.leftCols(old).transpose() * gd;
      next.bottomLeftCorner(extra, old) = next.topRightCorner(old, extra).transpose();
      next.bottomRightCorner(extra, extra) = all.rightCols(extra).transpose() * gd;
      overlaps_[c] = std::move(next);
    }
    size_ = m;
  }

  int size() const { return size_; }
  const std::vector<Eigen::MatrixXd>& overlaps() const { return overlaps_; }

  /// mass[m]: norm captured by the basis of the first m sines, m = 0..size().
  std::vector<double> cumulative_mass() const {
    std::vector<double> mass(size_ + 1, 0.0);
    for (int k = 1; k <= size_; ++k) {
      double shell = 0.0;
      for (std::size_t c = 0; c < overlaps_.size(); ++c) {
        const double f2 = channels_.channels[c].l == 0 ? 1.0 : 2.0;
        const auto& o = overlaps_[c];
        double s = o(k - 1, k - 1) * o(k - 1, k - 1);
        for (int j = 0; j < k - 1; ++j) s += 2.0 * o(j, k - 1) * o(j, k - 1);
        shell += f2 * s;
      }
      mass[k] = mass[k - 1] + shell;
    }
    return mass;
  }

private:
  const ChannelSet& channels_;
  double box_L_;
  Eigen::VectorXd root_w_;
  std::vector<Eigen::MatrixXd> overlaps_;
  int size_ = 0;
};

// W over the pair basis of size m, read from overlaps computed for >= m sines.
WMatrix assemble_W(const ChannelSet& channels, const std::vector<Eigen::MatrixXd>& overlaps,
                   int m_sine, double box_L) {
  PairBasis basis(m_sine);
  WMatrix out;
  out.m_sine = m_sine;
  out.box_L = box_L;
  out.W.resize(channels.channels.size(), basis.size());
  for (std::size_t c = 0; c < channels.channels.size(); ++c) {
    const double factor = channel_factor(channels.channels[c].l);
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
      const PairBasisIndex p = basis.pair(idx);
      const double value = overlaps[c](p.m1 - 1, p.m2 - 1);
      out.W(channels.channels[c].l, idx) =
          factor * (p.m1 == p.m2 ? value : std::numbers::sqrt2 * value);
    }
  }
  out.completeness_residual = 1.0 - out.W.squaredNorm();
  return out;
}

}  // namespace

WMatrix build_W_fixed(const ChannelSet& channels, int m_sine, double box_L) {
  SineOverlaps overlaps(channels, box_L);
  overlaps.grow_to(m_sine);
  return assemble_W(channels, overlaps.overlaps(), m_sine, box_L);
}

WMatrix build_W(const ChannelSet& channels, const NumericsConfig& cfg) {
  if (cfg.box_L < cfg.r_max) throw InvalidArgument("build_W: box_L must be >= r_max");
  const int cap = std::max(cfg.m_sine, static_cast<int>(channels.radial.size()) / 2);
  constexpr int kBlock = 32;
  // Coefficients of a smaller basis are a sub-block of a larger one: grow the
  // overlaps block-wise, then take the smallest m that meets the target.
  SineOverlaps overlaps(channels, cfg.box_L);
  overlaps.grow_to(cfg.m_sine);
  int m = cfg.m_sine;
  for (;;) {
    const std::vector<double> mass = overlaps.cumulative_mass();
    while (m < overlaps.size() && std::abs(1.0 - mass[m]) > kCompletenessTarget) ++m;
    if (std::abs(1.0 - mass[m]) <= kCompletenessTarget || overlaps.size() >= cap) break;
    overlaps.grow_to(std::min(cap, overlaps.size() + kBlock));
  }

  WMatrix out = assemble_W(channels, overlaps.overlaps(), m, cfg.box_L);
  if (std::abs(out.completeness_residual) > kCompletenessHardLimit)
    throw ConvergenceError("pair basis too small: completeness residual " +
                           format_real(out.completeness_residual) + " at m_sine=" +
                           std::to_string(out.m_sine));
  out.under_converged = std::abs(out.completeness_residual) > kCompletenessTarget;
  return out;
}

RadialAngularDecomposition decompose(const WMatrix& W, const QuadratureRule& radial) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(W.W, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw ConvergenceError("decompose: SVD failed");

  RadialAngularDecomposition dec;
  dec.U = svd.matrixU();
  dec.V = svd.matrixV();
  const Eigen::VectorXd& sv = svd.singularValues();
  for (Eigen::Index c = 0; c < dec.U.cols(); ++c) {
    Eigen::Index arg = 0;
    dec.U.col(c).cwiseAbs().maxCoeff(&arg);
    if (dec.U(arg, c) < 0.0) {
      dec.U.col(c) *= -1.0;
      dec.V.col(c) *= -1.0;
    }
  }
  dec.captured_mass = sv.squaredNorm();
  if (!(dec.captured_mass > 0.0)) throw ConvergenceError("decompose: W is zero");
  const double rescale = 1.0 / std::sqrt(dec.captured_mass);
  for (Eigen::Index n = 0; n < sv.size(); ++n) {
    dec.q.push_back(sv[n] * rescale);
    dec.gamma.push_back(dec.q.back() * dec.q.back());
  }

  // Phi_0 = sum_l w_l phi_l^*(phi1) phi_l(phi2).
  dec.l_max = static_cast<int>(W.W.rows()) - 1;
  dec.w.assign(2 * dec.l_max + 1, 0.0);
  double sum_w4 = 0.0;
  for (int l = -dec.l_max; l <= dec.l_max; ++l) {
    const int a = std::abs(l);
    const double wl = dec.U(a, 0) / (a == 0 ? 1.0 : std::numbers::sqrt2);
    dec.w[l + dec.l_max] = wl;
    sum_w4 += wl * wl * wl * wl;
  }
  dec.sum_w4 = sum_w4;
  dec.K_phi = 1.0 / sum_w4;

  // V_0 on the nodes, then its own Schmidt coefficients (Nystrom).
  PairBasis basis(W.m_sine);
  const Eigen::MatrixXd sines = sine_table(radial, W.m_sine, W.box_L);
  dec.V0 = evaluate_pair_expansion(dec.V.col(0), basis, sines);
  const std::size_t n = radial.size();
  Eigen::VectorXd root_w(n);
  for (std::size_t i = 0; i < n; ++i) root_w[i] = std::sqrt(radial.weights[i]);
  const Eigen::MatrixXd dressed = root_w.asDiagonal() * dec.V0 * root_w.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dressed, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw ConvergenceError("decompose: V0 eigensolver failed");
  std::vector<double> c(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
  std::sort(c.begin(), c.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  double sum_sq = 0.0;
  for (double x : c) sum_sq += x * x;
  double sum_c4 = 0.0;
  for (double& x : c) {
    x /= std::sqrt(sum_sq);
    sum_c4 += x * x * x * x;
  }
  dec.radial_coefficients = std::move(c);
  dec.K_r = 1.0 / sum_c4;
  return dec;
}

ProductError product_error(const ChannelSet& channels, const WMatrix& W,
                           const RadialAngularDecomposition& dec) {
  ProductError out;
  out.spectral = 1.0 - dec.gamma.at(0);

  const std::size_t n = channels.radial.size();
  PairBasis basis(W.m_sine);
  const Eigen::MatrixXd sines = sine_table(channels.radial, W.m_sine, W.box_L);
  const auto& w = channels.radial.weights;
  const double q0 = dec.q.at(0);
  const double q0_raw = q0 * std::sqrt(dec.captured_mass);
  const double inv_root_mass = 1.0 / std::sqrt(dec.captured_mass);

  double projected = 0.0;
  double full = 0.0;
  for (const auto& ch : channels.channels) {
    const double u = dec.U(ch.l, 0);
    const Eigen::MatrixXd f = evaluate_pair_expansion(W.W.row(ch.l).transpose(), basis, sines);
    const double factor = channel_factor(ch.l);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double ww = w[i] * w[j];
        const double product = u * dec.V0(i, j);
        const double dp = f(i, j) * inv_root_mass - q0 * product;
        const double h = factor * channels.channels[ch.l].kernel(i, j) / std::sqrt(ww);
        const double df = h - q0_raw * product;
        projected += ww * dp * dp;
        full += ww * df * df;
      }
    }
  }
  out.quadrature = projected;
  out.quadrature_full = full;
  out.inconsistent = std::abs(out.quadrature - out.spectral) > kProductErrorFlag;
  return out;
}

std::vector<std::size_t> local_minima(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] < values[i - 1] && values[i] < values[i + 1]) out.push_back(i);
  return out;
}

std::vector<LandscapeRow> gamma0_landscape(double sigma, const std::vector<Strength>& kappas,
                                           const std::map<std::string, std::string>& overrides) {
  const NumericsConfig cfg = resolve_numerics(overrides, sigma);
  std::vector<LandscapeRow> rows(kappas.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.workers)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(kappas.size()); ++p) {
    LandscapeRow& row = rows[p];
    row.kappa = kappas[p];
    try {
      const SystemParams params{kappas[p], sigma};
      const RadialSolution sol = solve_ground_state(params, cfg);
      const PairWavefunctionGrid grid = assemble(params, cfg, sol);
      const ChannelSet channels = compute_channels(grid);
      const WMatrix w = build_W(channels, cfg);
      const RadialAngularDecomposition dec = decompose(w, channels.radial);
      row.gamma0 = dec.gamma.at(0);
      row.r_peak = relative_profile_peak(sol);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  }
  return rows;
}

}  // namespace twobody
