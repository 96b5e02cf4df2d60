#include "twobody/relative_motion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "twobody/special_functions.hpp"

namespace twobody {

namespace ode = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

constexpr double kKnotSpacing = 0.002;
constexpr double kOdeTolerance = 1e-12;
constexpr double kScanWidth = 40.0;

struct ExteriorRhs {
  double energy;
  void operator()(const State& y, State& dy, double r) const {
    dy[0] = y[1];
    dy[1] = -y[1] / r + (0.25 * r * r - energy) * y[0];
  }
};

double gaussian_value(double r) {
  return std::exp(-0.25 * r * r) / std::sqrt(2.0 * std::numbers::pi);
}

// Sign-carrying measure of the mismatch between interior and exterior data
// at the matching radius. Continuous in E; zero exactly at eigenvalues.
double matching_function(const SystemParams& params, double r_max, double energy) {
  RadialValue out = exterior_solution(energy, r_max, params.sigma);
  const double out_norm = std::hypot(out.value, out.derivative);
  if (params.kappa.is_hardcore()) return out.value / out_norm;
  RadialValue in = interior_solution(energy, params.kappa.value(), params.sigma);
  const double in_norm = std::hypot(in.value, in.derivative);
  return (in.derivative * out.value - in.value * out.derivative) / (in_norm * out_norm);
}

int sign_changes(const std::vector<double>& v) {
  int changes = 0;
  int last = 0;
  for (double x : v) {
    int s = (x > 0.0) - (x < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

RadialValue interior_solution(double energy, double kappa, double r) {
  const double a = 0.5 * (1.0 - (energy - kappa));
  const double z = 0.5 * r * r;
  KummerEval m = kummer_m(a, 1.0, z);
  if (!m.converged) throw ConvergenceError("interior_solution: Kummer series did not converge");
  const double dm = kummer_m_derivative(a, 1.0, z);
  const double envelope = std::exp(-0.5 * z);
  // d/dr = r d/dz
  return {envelope * m.value, envelope * r * (dm - 0.5 * m.value)};
}

RadialValue exterior_solution(double energy, double r_far, double r_to) {
  if (!(r_to > 0.0) || r_to > r_far)
    throw InvalidArgument("exterior_solution: need 0 < r_to <= r_far");
  State y{1.0, -0.5 * r_far};
  if (r_to == r_far) return {y[0], y[1]};
  try {
    auto stepper = ode::make_controlled(kOdeTolerance, kOdeTolerance,
                                        ode::runge_kutta_dopri5<State>());
    ode::integrate_adaptive(stepper, ExteriorRhs{energy}, y, r_far, r_to, -0.01);
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("exterior_solution: integration failed: ") + e.what());
  }
  if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
    throw ConvergenceError("exterior_solution: integration diverged");
  return {y[0], y[1]};
}

// ---------------------------------------------------------------------------

int RadialSolution::locate(double r) const {
  // Segment 0: knots [0, inner_count_), segment 1 starts at knot inner_count_-1.
  const int n = static_cast<int>(knots_.size());
  int lo = 0;
  int hi = n - 1;
  if (inner_count_ > 1 && r <= knots_[inner_count_ - 1]) {
    hi = inner_count_ - 1;
  } else if (inner_count_ > 1) {
    lo = inner_count_ - 1;
  }
  const double h = (knots_[hi] - knots_[lo]) / (hi - lo);
  int k = lo + static_cast<int>((r - knots_[lo]) / h);
  return std::clamp(k, lo, hi - 1);
}

double RadialSolution::operator()(double r) const {
  if (analytic_) return r < 0.0 ? 0.0 : gaussian_value(r);
  if (r < 0.0 || r > r_max) return 0.0;
  if (hardcore && r <= sigma) return 0.0;
  const int k = locate(r);
  const double h = knots_[k + 1] - knots_[k];
  const double t = (r - knots_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return scale_ * ((2 * t3 - 3 * t2 + 1) * values_[k] + (t3 - 2 * t2 + t) * h * slopes_[k] +
                   (-2 * t3 + 3 * t2) * values_[k + 1] + (t3 - t2) * h * slopes_[k + 1]);
}

double RadialSolution::derivative(double r) const {
  if (analytic_) return r < 0.0 ? 0.0 : -0.5 * r * gaussian_value(r);
  if (r < 0.0 || r > r_max) return 0.0;
  if (hardcore && r <= sigma) return 0.0;
  const int k = locate(r);
  const double h = knots_[k + 1] - knots_[k];
  const double t = (r - knots_[k]) / h;
  const double t2 = t * t;
  return scale_ * ((6 * t2 - 6 * t) * values_[k] / h + (3 * t2 - 4 * t + 1) * slopes_[k] +
                   (-6 * t2 + 6 * t) * values_[k + 1] / h + (3 * t2 - 2 * t) * slopes_[k + 1]);
}

double RadialSolution::norm() const {
  if (analytic_) return 1.0 - std::exp(-0.5 * r_max * r_max);
  // r psi^2 is a degree-7 polynomial on each knot interval: 4-point GL is exact.
  static const QuadratureRule unit = gauss_legendre(4, 0.0, 1.0);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
    const double a = knots_[k];
    const double h = knots_[k + 1] - a;
    if (h <= 0.0) continue;
    for (std::size_t q = 0; q < unit.size(); ++q) {
      const double r = a + h * unit.nodes[q];
      const double v = (*this)(r);
      sum += h * unit.weights[q] * r * v * v;
    }
  }
  return 2.0 * std::numbers::pi * sum;
}

void RadialSolution::sample_profile(const NumericsConfig& cfg) {
  QuadratureRule rule = gauss_legendre(cfg.n_radial, 0.0, cfg.r_max);
  nodes = rule.nodes;
  profile.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) profile[i] = (*this)(nodes[i]);
}

RadialSolution RadialSolution::gaussian(const NumericsConfig& cfg) {
  RadialSolution sol;
  sol.energy = 1.0;
  sol.r_max = cfg.r_max;
  sol.analytic_ = true;
  sol.normalized = true;
  sol.sample_profile(cfg);
  return sol;
}

RadialSolution solve_ground_state(const SystemParams& params, const NumericsConfig& cfg) {
  if (ValidationReport report = validate(params, cfg); !report.ok())
    throw InvalidArgument("solve_ground_state: " + report.summary());

  if (params.non_interacting()) {
    RadialSolution sol = RadialSolution::gaussian(cfg);
    sol.sigma = params.sigma;
    sol.hardcore = params.kappa.is_hardcore();
    return sol;
  }

  const bool hardcore = params.kappa.is_hardcore();
  const double sigma = params.sigma;
  const double r_max = cfg.r_max;
  // The potential is bounded below by min(0, kappa), so is the energy.
  const double e_lo = (hardcore ? 0.0 : std::min(0.0, params.kappa.value())) + 1e-6;
  const double e_hi = e_lo + kScanWidth;

  auto f = [&](double e) { return matching_function(params, r_max, e); };

  double left = e_lo;
  double f_left = f(left);
  while (left < e_hi) {
    double right = std::min(left + cfg.bracket_step, e_hi);
    double f_right = f(right);
    if (f_left == 0.0 || (f_left > 0.0) != (f_right > 0.0)) {
      double lo = left;
      double hi = right;
      double f_lo = f_left;
      while (hi - lo > cfg.energy_tol) {
        double mid = 0.5 * (lo + hi);
        double f_mid = f(mid);
        if ((f_mid > 0.0) == (f_lo > 0.0) && f_mid != 0.0) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }

      RadialSolution sol;
      sol.energy = 0.5 * (lo + hi);
      sol.sigma = sigma;
      sol.hardcore = hardcore;
      sol.r_max = r_max;

      // Interior knots on [0, sigma].
      std::vector<double> inner_v, inner_s;
      int n_inner = std::max(64, static_cast<int>(std::ceil(sigma / kKnotSpacing)));
      for (int k = 0; k <= n_inner; ++k) {
        double r = sigma * k / n_inner;
        sol.knots_.push_back(r);
        if (hardcore) {
          inner_v.push_back(0.0);
          inner_s.push_back(0.0);
        } else {
          RadialValue in = interior_solution(sol.energy, params.kappa.value(), r);
          inner_v.push_back(in.value);
          inner_s.push_back(in.derivative);
        }
      }
      sol.inner_count_ = n_inner + 1;

      // Exterior knots on [sigma, r_max], integrated inward.
      int n_outer = std::max(64, static_cast<int>(std::ceil((r_max - sigma) / kKnotSpacing)));
      std::vector<double> times(n_outer + 1);
      for (int k = 0; k <= n_outer; ++k) times[k] = r_max - (r_max - sigma) * k / n_outer;
      times.back() = sigma;
      std::vector<State> states;
      State y{1.0, -0.5 * r_max};
      try {
        auto stepper = ode::make_dense_output(kOdeTolerance, kOdeTolerance,
                                              ode::runge_kutta_dopri5<State>());
        ode::integrate_times(stepper, ExteriorRhs{sol.energy}, y, times.begin(), times.end(),
                             -0.01, [&](const State& s, double) { states.push_back(s); });
      } catch (const std::exception& e) {
        throw ConvergenceError(std::string("solve_ground_state: integration failed: ") + e.what());
      }
      if (states.size() != times.size())
        throw ConvergenceError("solve_ground_state: integrator skipped output points");

      const State& at_sigma = states.back();
      double outer_scale = 1.0;
      if (!hardcore) {
        const double iv = inner_v.back();
        const double is = inner_s.back();
        outer_scale = (iv * at_sigma[0] + is * at_sigma[1]) /
                      (at_sigma[0] * at_sigma[0] + at_sigma[1] * at_sigma[1]);
        const double ov = outer_scale * at_sigma[0];
        const double os = outer_scale * at_sigma[1];
        sol.value_mismatch = std::abs(iv - ov) / std::max({std::abs(iv), std::abs(ov), 1e-300});
        sol.slope_mismatch = std::abs(is - os) / std::max({std::abs(is), std::abs(os), 1e-300});
      }

      sol.values_ = std::move(inner_v);
      sol.slopes_ = std::move(inner_s);
      // Knot at sigma is shared; the interior copy is replaced by the
      // exterior data for hardcore (exact zero) and kept for finite kappa.
      for (int k = n_outer - 1; k >= 0; --k) {
        sol.knots_.push_back(times[k]);
        sol.values_.push_back(outer_scale * states[k][0]);
        sol.slopes_.push_back(outer_scale * states[k][1]);
      }
      if (hardcore) {
        sol.values_[sol.inner_count_ - 1] = 0.0;
        sol.slopes_[sol.inner_count_ - 1] = outer_scale * at_sigma[1];
      }

      if (sign_changes(sol.values_) != 0) {
        // Excited-state artifact; keep scanning above it.
        left = right;
        f_left = f_right;
        continue;
      }

      const double peak = *std::max_element(sol.values_.begin(), sol.values_.end(),
                                             [](double a, double b) { return std::abs(a) < std::abs(b); });
      if (peak < 0.0) {
        for (double& v : sol.values_) v = -v;
        for (double& s : sol.slopes_) s = -s;
      }
      sol.scale_ = 1.0 / std::sqrt(sol.norm());
      sol.normalized = true;
      sol.sample_profile(cfg);
      return sol;
    }
    left = right;
    f_left = f_right;
  }
  throw ConvergenceError("solve_ground_state: no bracket found in [" + format_real(e_lo) + ", " +
                         format_real(e_hi) + "]");
}

// ---------------------------------------------------------------------------

namespace {

// Number of eigenvalues of the symmetric tridiagonal (d, e) below x.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1] / q;
    q = d[i] - x - off;
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

double lowest_eigenvalue(const std::vector<double>& d, const std::vector<double>& e) {
  double lo = d[0];
  double hi = d[0];
  for (std::size_t i = 0; i < d.size(); ++i) {
    double radius = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i < e.size() ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++iter) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count(d, e, mid) >= 1) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double oracle_fd_energy(const SystemParams& params, int n_grid, double r_max) {
  if (n_grid < 1000) throw InvalidArgument("oracle_fd_energy: n_grid must be >= 1000");
  if (r_max <= 0.0) r_max = NumericsConfig::defaults(params.sigma).r_max;
  const double sigma = params.sigma;
  const bool hardcore = params.kappa.is_hardcore() && sigma > 0.0;
  const double kappa = params.kappa.is_hardcore() ? 0.0 : params.kappa.value();

  std::vector<double> d(n_grid), e(n_grid - 1);
  if (hardcore) {
    // Vertex grid on (sigma, r_max), u = sqrt(r) psi, Dirichlet at both ends.
    const double h = (r_max - sigma) / (n_grid + 1);
    for (int i = 0; i < n_grid; ++i) {
      const double r = sigma + h * (i + 1);
      d[i] = 2.0 / (h * h) + 0.25 * r * r - 0.25 / (r * r);
      if (i + 1 < n_grid) e[i] = -1.0 / (h * h);
    }
  } else {
    // Cell-centred flux form of -(1/r)(r psi')' symmetrized with sqrt(r):
    // the discrete analogue of u = sqrt(r) psi. Natural boundary at r = 0,
    // Dirichlet at r_max. The step potential enters as the area fraction of
    // each annular cell inside sigma.
    const double h = r_max / (n_grid + 0.5);
    for (int i = 0; i < n_grid; ++i) {
      const double r = h * (i + 0.5);
      const double rm = r - 0.5 * h;
      const double rp = r + 0.5 * h;
      const double inside = std::clamp((sigma * sigma - rm * rm) / (rp * rp - rm * rm), 0.0, 1.0);
      d[i] = (rp + rm) / (h * h * r) + 0.25 * r * r + kappa * inside;
      if (i + 1 < n_grid) e[i] = -rp / (h * h * std::sqrt(r * (r + h)));
    }
  }
  return lowest_eigenvalue(d, e);
}

}  // namespace twobody
